#include "aniso/quasinorm.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "aniso/util.hpp"

namespace aniso {

namespace {
constexpr int kIndexGuard = 1000000;
}

StepQuasiNorm::StepQuasiNorm(ExpansiveMatrix a, Ellipsoid omega)
    : a_(std::move(a)), omega_(std::move(omega)) {
  if (a_.dim() != omega_.dim()) {
    throw std::invalid_argument("StepQuasiNorm: matrix and ellipsoid dimensions differ");
  }
}

StepQuasiNorm StepQuasiNorm::standard(const ExpansiveMatrix& a) {
  return StepQuasiNorm(a, build_ellipsoid(a));
}

bool StepQuasiNorm::inside_at(int i, const Eigen::VectorXd& x) const {
  // x in A^i Omega  <=>  quad(A^{-i} x) < level; quad maps NaN to +inf, so
  // overflowing powers land on the "outside" branch, which is the true answer
  // at indices far below the shell.
  return omega_.quad(a_.power(-i) * x) < omega_.level();
}

int StepQuasiNorm::scale_index(const Eigen::VectorXd& x, int hint) const {
  if (x.size() != a_.dim()) throw std::invalid_argument("scale_index: dimension mismatch");
  if (!x.allFinite()) throw std::invalid_argument("scale_index: non-finite point");
  if (x.isZero(0.0)) throw std::invalid_argument("scale_index: x = 0 has no shell");

  hint = std::clamp(hint, -kIndexGuard / 2, kIndexGuard / 2);
  int m_in = hint, m_out = hint;
  if (inside_at(hint, x)) {
    int step = 1, probe = hint - 1;
    while (inside_at(probe, x)) {
      m_in = probe;
      probe -= step;
      step *= 2;
      if (probe < -kIndexGuard) throw std::runtime_error("scale_index: guard range exceeded");
    }
    m_out = probe;
  } else {
    int step = 1, probe = hint + 1;
    while (!inside_at(probe, x)) {
      m_out = probe;
      probe += step;
      step *= 2;
      if (probe > kIndexGuard) throw std::runtime_error("scale_index: guard range exceeded");
    }
    m_in = probe;
  }
  // Invariant: outside at m_out, inside at m_in, m_out < m_in.
  while (m_in - m_out > 1) {
    const int mid = m_out + (m_in - m_out) / 2;
    (inside_at(mid, x) ? m_in : m_out) = mid;
  }
  return m_in - 1;
}

double StepQuasiNorm::rho(const Eigen::VectorXd& x) const {
  if (x.size() == a_.dim() && x.isZero(0.0)) return 0.0;
  return std::pow(a_.det_abs(), scale_index(x));
}

double StepQuasiNorm::log_rho(const Eigen::VectorXd& x) const {
  return scale_index(x) * a_.log_det_abs();
}

double StepQuasiNorm::continuous_scale(const Eigen::VectorXd& x, int hint) const {
  const int m = scale_index(x, hint);
  const double qm = omega_.quad(a_.power(-m) * x);
  const double qm1 = omega_.quad(a_.power(-(m + 1)) * x);
  // qm >= level > qm1; interpolate the crossing on a log scale.
  const double den = std::log(qm / qm1);
  double frac = den > 0.0 ? std::log(qm / omega_.level()) / den : 0.0;
  frac = std::clamp(frac, 0.0, 1.0);
  double u = m + smoothstep(frac);
  // Keep floor(u) == scale_index even when smoothstep saturates in fp.
  if (u >= m + 1.0) u = std::nextafter(m + 1.0, static_cast<double>(m));
  return u;
}

double StepQuasiNorm::radius_at_scale(const Eigen::VectorXd& dir, double u) const {
  if (dir.size() != a_.dim() || dir.isZero(0.0) || !dir.allFinite()) {
    throw std::invalid_argument("radius_at_scale: bad direction");
  }
  const int m = static_cast<int>(std::floor(u));
  const double qm = omega_.quad(a_.power(-m) * dir);
  const double qm1 = omega_.quad(a_.power(-(m + 1)) * dir);
  if (!(qm > 0.0) || !(qm1 > 0.0) || !std::isfinite(qm) || !std::isfinite(qm1)) {
    throw std::runtime_error("radius_at_scale: scale outside representable range");
  }
  const double frac = smoothstep_inv(std::clamp(u - m, 0.0, 1.0));
  // continuous_scale(r dir) = m + smoothstep(ln(r^2 qm / c) / ln(qm / qm1)).
  const double r2 = omega_.level() / qm * std::exp(frac * std::log(qm / qm1));
  return std::sqrt(r2);
}

Eigen::VectorXd StepQuasiNorm::point_at_scale(const Eigen::VectorXd& dir, double u) const {
  return dir * radius_at_scale(dir, u);
}

double quasi_triangle_constant(const StepQuasiNorm& q, int n_pairs, std::uint64_t seed,
                               int scale_lo, int scale_hi) {
  if (n_pairs < 1 || scale_lo >= scale_hi) {
    throw std::invalid_argument("quasi_triangle_constant: bad sampling parameters");
  }
  std::mt19937_64 rng(seed);
  const int d = q.dim();
  double best = 0.0;
  for (int k = 0; k < n_pairs; ++k) {
    const Eigen::VectorXd wx = unit_vector(rng, d);
    const double ux = uniform(rng, scale_lo, scale_hi);
    const Eigen::VectorXd x = q.point_at_scale(wx, ux);
    Eigen::VectorXd y;
    if (k % 8 == 7) {
      // Aligned small companion: exercises the rho(x + y) ~ rho(x) regime.
      y = q.point_at_scale(wx, ux - 3.0);
    } else {
      const Eigen::VectorXd wy = unit_vector(rng, d);
      y = q.point_at_scale(wy, uniform(rng, scale_lo, scale_hi));
    }
    const Eigen::VectorXd s = x + y;
    if (s.isZero(0.0)) continue;
    const double num = q.log_rho(s);
    const double den = std::log(std::exp(q.log_rho(x)) + std::exp(q.log_rho(y)));
    best = std::max(best, std::exp(num - den));
  }
  return best;
}

RatioRange equivalence_ratio(const StepQuasiNorm& qa, const StepQuasiNorm& qb, int n_samples,
                             std::uint64_t seed, int scale_lo, int scale_hi) {
  if (qa.dim() != qb.dim()) throw std::invalid_argument("equivalence_ratio: dimension mismatch");
  if (n_samples < 1) throw std::invalid_argument("equivalence_ratio: need samples");
  std::mt19937_64 rng(seed);
  const int d = qa.dim();
  double lo = kInf, hi = -kInf;
  for (int k = 0; k < n_samples; ++k) {
    const Eigen::VectorXd w = unit_vector(rng, d);
    const Eigen::VectorXd x = qa.point_at_scale(w, uniform(rng, scale_lo, scale_hi));
    const double log_ratio = qb.log_rho(x) - qa.log_rho(x);
    lo = std::min(lo, log_ratio);
    hi = std::max(hi, log_ratio);
  }
  return RatioRange{std::exp(lo), std::exp(hi)};
}

}  // namespace aniso
