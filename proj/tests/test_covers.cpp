#include <doctest.h>

#include <cmath>

#include "aniso/covers.hpp"
#include "aniso/util.hpp"
#include "battery.hpp"

using namespace aniso;

TEST_CASE("plateau bump: support, plateau, smooth ramps") {
  const PlateauBump g;
  CHECK(g(-0.1) == 0.0);
  CHECK(g(0.0) == 0.0);
  CHECK(g(2.0) == 0.0);
  CHECK(g(2.1) == 0.0);
  CHECK(g(0.5) == 1.0);
  CHECK(g(1.0) == 1.0);
  CHECK(g(1.5) == 1.0);
  CHECK(g(0.25) > 0.0);
  CHECK(g(0.25) < 1.0);
  CHECK(g(0.25) == g(1.75));  // symmetric ramps
}

TEST_CASE("analyzing profile: partition of unity and dilate-count bound") {
  for (const auto& [name, m] : battery::all()) {
    CAPTURE(name);
    const auto a = require_expansive(m);
    const auto prof = FourierProfile::analyzing(a);
    // Scalar sweep: shifts sum to 1 exactly and at most two overlap.
    for (double u = -2.0; u <= 4.0; u += 0.0137) {
      double sum = 0.0;
      int nonzero = 0;
      for (int i = -6; i <= 6; ++i) {
        const double v = prof.value_at_scale(u - i);
        sum += v;
        if (v != 0.0) ++nonzero;
      }
      CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(nonzero <= 2);
      CHECK(nonzero >= 1);
    }
    // Vector path at random band frequencies.
    std::mt19937_64 rng(5);
    const auto& adj = prof.adjoint_norm();
    for (int k = 0; k < 100; ++k) {
      const Eigen::VectorXd xi =
          adj.point_at_scale(unit_vector(rng, a.dim()), uniform(rng, -3.0, 5.0));
      double sum = 0.0;
      for (int i = -6; i <= 6; ++i) sum += prof.dilate(i).value(xi);
      CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
    }
    CHECK(prof.value(Eigen::VectorXd::Zero(a.dim())) == 0.0);
  }
}

TEST_CASE("analyzing profile: support certificate and dilation exactness") {
  const auto a = require_expansive(battery::diag24());
  const auto prof = FourierProfile::analyzing(a);
  CHECK(prof.support_lo() == 0.0);
  CHECK(prof.support_hi() == 2.0);
  CHECK(prof.rho_in() == doctest::Approx(1.0));
  CHECK(prof.rho_out() == doctest::Approx(64.0));  // |det|^2 = 8^2

  CHECK(prof.value_at_scale(-0.01) == 0.0);
  CHECK(prof.value_at_scale(2.0) == 0.0);
  CHECK(prof.value_at_scale(1.0) == doctest::Approx(1.0));

  // dilate(i) agrees with evaluating the base profile at (A*)^{-i} xi.
  const auto& adj = prof.adjoint_norm();
  std::mt19937_64 rng(6);
  for (int k = 0; k < 200; ++k) {
    const Eigen::VectorXd xi = adj.point_at_scale(unit_vector(rng, 2), uniform(rng, -2.0, 4.0));
    for (int i : {-2, 1, 3}) {
      const Eigen::VectorXd pulled = adj.matrix().power(-i) * xi;
      CHECK(prof.dilate(i).value(xi) == doctest::Approx(prof.value(pulled)).epsilon(1e-8));
    }
  }
}

TEST_CASE("neighbor bound: exact interval arithmetic") {
  const auto a = require_expansive(battery::scalar2());
  const auto prof = FourierProfile::analyzing(a);
  CHECK(neighbor_bound(prof.support_annulus()) == 1);
  CHECK(neighbor_bound(CoverAnnulus{prof.adjoint_norm_ptr(), 0.0, 2.5}) == 2);
  CHECK(neighbor_bound(CoverAnnulus{prof.adjoint_norm_ptr(), 0.0, 1.0}) == 0);
  CHECK(neighbor_bound(CoverAnnulus{prof.adjoint_norm_ptr(), -1.0, 3.0}) == 3);
  CHECK_THROWS_AS((void)neighbor_bound(CoverAnnulus{prof.adjoint_norm_ptr(), 1.0, 1.0}),
                  std::invalid_argument);
}

TEST_CASE("window profile: identically 1 on base support, vanishes outside reach") {
  const auto a = require_expansive(battery::rot2());
  const auto prof = FourierProfile::analyzing(a);
  const auto win = prof.window(2);
  for (double u = 0.01; u < 2.0; u += 0.013) {
    CHECK(win.value_at_scale(u) == doctest::Approx(1.0).epsilon(1e-12));
  }
  CHECK(win.value_at_scale(-2.0) == 0.0);
  CHECK(win.value_at_scale(4.0) == 0.0);
  CHECK(win.support_lo() == -2.0);
  CHECK(win.support_hi() == 4.0);
  CHECK_THROWS_AS((void)prof.window(0), std::invalid_argument);
}

TEST_CASE("intersection sets: transfer method agrees with the exact same-norm path") {
  const auto a = require_expansive(battery::diag24());
  const auto prof = FourierProfile::analyzing(a);
  const auto qa = prof.support_annulus();
  // Fresh norm over the same matrix but a distinct object with its own
  // ellipsoid: forces the radial-transfer path; results must match the exact
  // interval path because the scale variable is identical.
  auto other = std::make_shared<const StepQuasiNorm>(
      StepQuasiNorm(a.adjoint(), build_ellipsoid(a.adjoint())));
  const CoverAnnulus qb{other, 0.0, 2.0};

  const auto exact = intersection_sets(qa, qa, -6, 6, -8, 8);
  const auto transfer = intersection_sets(qa, qb, -6, 6, -8, 8, 512);
  REQUIRE(exact.consistent());
  REQUIRE(transfer.consistent());
  for (int i = -6; i <= 6; ++i) {
    CAPTURE(i);
    CHECK(exact.j_for_i.at(i) == transfer.j_for_i.at(i));
    CHECK(exact.j_for_i.at(i) == std::vector<int>{i - 1, i, i + 1});
  }
}

TEST_CASE("intersection sets: equivalent pair has bounded drift-centred rows") {
  const auto a = require_expansive(battery::scalar2());
  const auto b = require_expansive(battery::scalar2(3.0));
  const auto pa = FourierProfile::analyzing(a);
  const auto pb = FourierProfile::analyzing(b);
  const double c = a.log_det_abs() / b.log_det_abs();

  const auto sets = intersection_sets(pa.support_annulus(), pb.support_annulus(), -16, 16,
                                      -40, 40, 1024);
  REQUIRE(sets.consistent());
  CHECK(sets.max_j_count() <= 3);
  CHECK(sets.max_i_count() <= 4);
  for (int i = -16; i <= 16; ++i) {
    const auto it = sets.j_for_i.find(i);
    REQUIRE(it != sets.j_for_i.end());
    for (int j : it->second) {
      CHECK(std::abs(j - std::floor(c * i)) <= 2.0);  // drift window
    }
  }
}

TEST_CASE("intersection sets: inequivalent pair has linearly growing columns") {
  const auto a = require_expansive(battery::scalar2());
  const auto b = require_expansive(battery::diag24());
  const auto pa = FourierProfile::analyzing(a);
  const auto pb = FourierProfile::analyzing(b);

  const auto sets = intersection_sets(pa.support_annulus(), pb.support_annulus(), -80, 80,
                                      -32, 32, 1024);
  REQUIRE(sets.consistent());
  auto col = [&](int j) { return static_cast<int>(sets.i_for_j.at(j).size()); };
  CHECK(col(8) >= col(4) + 2);
  CHECK(col(16) >= col(8) + 3);
  CHECK(col(24) >= col(16) + 3);
  CHECK(col(-8) >= col(-4) + 2);   // growth on both sides of the sweep
  CHECK(col(-16) >= col(-8) + 3);
}
