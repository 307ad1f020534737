#include "aniso/util.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace aniso {

namespace {
double bump_half(double t) { return t <= 0.0 ? 0.0 : std::exp(-1.0 / t); }
}  // namespace

double smoothstep(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  const double a = bump_half(t);
  const double b = bump_half(1.0 - t);
  return a / (a + b);
}

double smoothstep_inv(double s) {
  if (s <= 0.0) return 0.0;
  if (s >= 1.0) return 1.0;
  double lo = 0.0, hi = 1.0;
  for (int it = 0; it < 80; ++it) {
    const double mid = 0.5 * (lo + hi);
    (smoothstep(mid) < s ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double lp_aggregate(const double* v, std::size_t n, double p) {
  if (n == 0) return 0.0;
  double m = 0.0;
  for (std::size_t k = 0; k < n; ++k) m = std::max(m, v[k]);
  if (p == kInf || m == 0.0) return m;
  double s = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    if (v[k] > 0.0) s += std::pow(v[k] / m, p);
  }
  return m * std::pow(s, 1.0 / p);
}

double lp_aggregate(const std::vector<double>& v, double p) {
  return lp_aggregate(v.data(), v.size(), p);
}

double lp_cell_integral(const std::vector<double>& v, double p, double cell) {
  if (p == kInf) return lp_aggregate(v, p);
  return lp_aggregate(v, p) * std::pow(cell, 1.0 / p);
}

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double uniform(std::mt19937_64& rng, double a, double b) {
  return a + (b - a) * uniform01(rng);
}

double normal(std::mt19937_64& rng) {
  // Box-Muller; one draw per call keeps the stream position deterministic.
  double u1 = uniform01(rng);
  const double u2 = uniform01(rng);
  if (u1 <= 0.0) u1 = 0x1.0p-53;
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

Eigen::VectorXd normal_vector(std::mt19937_64& rng, int d) {
  Eigen::VectorXd v(d);
  for (int k = 0; k < d; ++k) v[k] = normal(rng);
  return v;
}

Eigen::VectorXd unit_vector(std::mt19937_64& rng, int d) {
  Eigen::VectorXd v = normal_vector(rng, d);
  double n = v.norm();
  while (n < 1e-12) {
    v = normal_vector(rng, d);
    n = v.norm();
  }
  return v / n;
}

std::vector<Eigen::VectorXd> direction_set(int d, int n, std::uint64_t seed) {
  if (d < 1 || n < 1) throw std::invalid_argument("direction_set: bad arguments");
  std::vector<Eigen::VectorXd> dirs;
  dirs.reserve(static_cast<std::size_t>(n));
  if (d == 1) {
    dirs.push_back(Eigen::VectorXd::Constant(1, 1.0));
    if (n > 1) dirs.push_back(Eigen::VectorXd::Constant(1, -1.0));
    return dirs;
  }
  if (d == 2) {
    for (int k = 0; k < n; ++k) {
      const double a = 2.0 * std::numbers::pi * (k + 0.5) / n;
      Eigen::VectorXd v(2);
      v << std::cos(a), std::sin(a);
      dirs.push_back(v);
    }
    return dirs;
  }
  if (d == 3) {
    const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
    for (int k = 0; k < n; ++k) {
      const double z = 1.0 - 2.0 * (k + 0.5) / n;
      const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
      const double a = golden * k;
      Eigen::VectorXd v(3);
      v << r * std::cos(a), r * std::sin(a), z;
      dirs.push_back(v);
    }
    return dirs;
  }
  std::mt19937_64 rng(seed);
  for (int k = 0; k < n; ++k) dirs.push_back(unit_vector(rng, d));
  return dirs;
}

double ls_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw std::invalid_argument("ls_slope: need two equally sized samples");
  }
  const double n = static_cast<double>(x.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    sx += x[k];
    sy += y[k];
    sxx += x[k] * x[k];
    sxy += x[k] * y[k];
  }
  const double den = n * sxx - sx * sx;
  if (den == 0.0) throw std::invalid_argument("ls_slope: degenerate abscissae");
  return (n * sxy - sx * sy) / den;
}

}  // namespace aniso
