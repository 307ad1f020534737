#include <doctest.h>

#include <cmath>
#include <numbers>

#include "aniso/quasinorm.hpp"
#include "aniso/util.hpp"
#include "battery.hpp"

using namespace aniso;

namespace {

StepQuasiNorm make_q(const Eigen::MatrixXd& m) {
  return StepQuasiNorm::standard(require_expansive(m));
}

}  // namespace

TEST_CASE("scale index matches the closed-form disk oracle for 2*I2") {
  // For A = 2 I2 the ellipsoid is the disk of radius 1/sqrt(pi), so the shell
  // index is floor(log2(|x| sqrt(pi))) away from shell boundaries.
  const auto q = make_q(battery::scalar2());
  std::mt19937_64 rng(11);
  for (int k = 0; k < 1000; ++k) {
    const Eigen::VectorXd x = unit_vector(rng, 2) * std::exp(uniform(rng, -8.0, 8.0));
    const int oracle = static_cast<int>(
        std::floor(std::log2(x.norm() * std::sqrt(std::numbers::pi))));
    CHECK(q.scale_index(x) == oracle);
  }
}

TEST_CASE("scale index pins the shell boundary at |x| = 2 / sqrt(pi)") {
  const auto q = make_q(battery::scalar2());
  Eigen::VectorXd x(2);
  x << 2.0 / std::sqrt(std::numbers::pi) * (1.0 + 1e-9), 0.0;
  CHECK(q.scale_index(x) == 1);
  x[0] = 2.0 / std::sqrt(std::numbers::pi) * (1.0 - 1e-9);
  CHECK(q.scale_index(x) == 0);
}

TEST_CASE("rho vanishes only at zero and rejects bad input") {
  const auto q = make_q(battery::diag24());
  CHECK(q.rho(Eigen::VectorXd::Zero(2)) == 0.0);
  std::mt19937_64 rng(12);
  for (int k = 0; k < 100; ++k) {
    CHECK(q.rho(unit_vector(rng, 2) * std::exp(uniform(rng, -6.0, 6.0))) > 0.0);
  }
  CHECK_THROWS_AS((void)q.scale_index(Eigen::VectorXd::Zero(2)), std::invalid_argument);
  Eigen::VectorXd bad(2);
  bad << 1.0, std::nan("");
  CHECK_THROWS_AS((void)q.scale_index(bad), std::invalid_argument);
  CHECK_THROWS_AS((void)q.scale_index(Eigen::VectorXd::Ones(3)), std::invalid_argument);
}

TEST_CASE("dilation shifts the scale index by exactly one across the battery") {
  for (const auto& [name, m] : battery::all()) {
    CAPTURE(name);
    const auto q = make_q(m);
    const auto a = q.matrix();
    std::mt19937_64 rng(13);
    for (int k = 0; k < 1000; ++k) {
      const Eigen::VectorXd x =
          unit_vector(rng, a.dim()) * std::exp(uniform(rng, -10.0, 10.0));
      const int i = q.scale_index(x);
      CHECK(q.scale_index(a.matrix() * x) == i + 1);      // (q2), exact integers
      CHECK(q.scale_index(a.inverse() * x) == i - 1);
    }
  }
}

TEST_CASE("continuous scale: brackets the step index, shifts exactly, inverts") {
  for (const auto& [name, m] : battery::all()) {
    CAPTURE(name);
    const auto q = make_q(m);
    const int d = q.dim();
    std::mt19937_64 rng(14);
    for (int k = 0; k < 200; ++k) {
      const Eigen::VectorXd x = unit_vector(rng, d) * std::exp(uniform(rng, -6.0, 6.0));
      const double u = q.continuous_scale(x);
      const int i = q.scale_index(x);
      CHECK(u >= i);
      CHECK(u < i + 1);
      CHECK(q.continuous_scale(q.matrix().matrix() * x) == doctest::Approx(u + 1.0).epsilon(1e-9));
    }
    // Round trip and monotonicity along rays.
    const auto dirs = direction_set(d, 16);
    for (const auto& w : dirs) {
      double prev = 0.0;
      for (double u = -5.0; u <= 5.0; u += 0.25) {
        const double r = q.radius_at_scale(w, u);
        CHECK(q.continuous_scale(w * r) == doctest::Approx(u).epsilon(1e-9));
        if (u > -5.0) CHECK(r > prev);
        prev = r;
      }
    }
  }
}

TEST_CASE("quasi-triangle constant is finite, at least 1/2, and sample-stable") {
  for (const auto& [name, m] : battery::all()) {
    CAPTURE(name);
    const auto q = make_q(m);
    const double c1 = quasi_triangle_constant(q, 2000, 909);
    const double c2 = quasi_triangle_constant(q, 4000, 909);  // nested prefix
    CHECK(c1 >= 0.5);
    CHECK(c2 <= 100.0);
    CHECK(c2 >= c1);         // same stream prefix, max can only grow
    CHECK(c2 <= 1.5 * c1);   // stability under doubling
  }
}

TEST_CASE("equivalence ratio: bounded for 2I2 vs 3I2, growing for 2I2 vs diag(2,4)") {
  const auto qa = make_q(battery::scalar2());
  const auto qb = make_q(battery::scalar2(3.0));
  const auto qc = make_q(battery::diag24());

  const auto same = equivalence_ratio(qa, qa, 500, 31);
  CHECK(same.lo == doctest::Approx(1.0));
  CHECK(same.hi == doctest::Approx(1.0));

  const auto b10 = equivalence_ratio(qa, qb, 4000, 32, -10, 10);
  const auto b20 = equivalence_ratio(qa, qb, 4000, 32, -20, 20);
  CHECK(b20.hi / b20.lo <= 2.0 * (b10.hi / b10.lo));  // bounded: no range growth

  const auto c10 = equivalence_ratio(qa, qc, 4000, 33, -10, 10);
  const auto c20 = equivalence_ratio(qa, qc, 4000, 33, -20, 20);
  CHECK(c20.hi / c20.lo >= 100.0 * (c10.hi / c10.lo));  // ratio spread explodes
}

TEST_CASE("empirical two-sided dilation-exponent envelope is stable") {
  for (const auto& [name, m] : battery::all()) {
    CAPTURE(name);
    const auto q = make_q(m);
    const auto de = dilation_exponents(q.matrix(), 0.5);
    auto envelope = [&](int n, std::uint64_t seed) {
      std::mt19937_64 rng(seed);
      double c = 1.0;
      for (int k = 0; k < n; ++k) {
        const Eigen::VectorXd x =
            unit_vector(rng, q.dim()) * std::exp(uniform(rng, std::log(1e-4), std::log(1e4)));
        const double nrm = x.norm();
        const double rho = std::exp(q.log_rho(x));
        if (rho >= 1.0) {
          c = std::max({c, std::pow(rho, de.zeta_minus) / nrm, nrm / std::pow(rho, de.zeta_plus)});
        } else {
          c = std::max({c, std::pow(rho, de.zeta_plus) / nrm, nrm / std::pow(rho, de.zeta_minus)});
        }
      }
      return c;
    };
    const double c1 = envelope(5000, 77);
    const double c2 = envelope(10000, 77);  // nested prefix of the same stream
    CHECK(std::isfinite(c2));
    CHECK(c2 <= 1.3 * c1);
  }
}
