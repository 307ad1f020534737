#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <memory>

#include "aniso/linalg.hpp"

namespace aniso {

// Step homogeneous quasi-norm attached to (A, Omega): rho(x) = |det A|^i on the
// shell A^{i+1} Omega \ A^i Omega, rho(0) = 0. Also exposes a continuous scale
// u(x) with integer part equal to the shell index, u(A x) = u(x) + 1 exactly,
// and a closed-form radius along any ray (used by covers and atom placement).
class StepQuasiNorm {
 public:
  StepQuasiNorm(ExpansiveMatrix a, Ellipsoid omega);
  // Convenience: default ellipsoid via build_ellipsoid(a).
  static StepQuasiNorm standard(const ExpansiveMatrix& a);

  const ExpansiveMatrix& matrix() const { return a_; }
  const Ellipsoid& omega() const { return omega_; }
  int dim() const { return a_.dim(); }

  // Unique i with x in A^{i+1} Omega \ A^i Omega. Throws for x = 0, non-finite
  // x, or when the shell search leaves the guard range |i| <= 1e6. hint seeds
  // the shell search (pure optimization for scan loops).
  int scale_index(const Eigen::VectorXd& x, int hint = 0) const;
  double rho(const Eigen::VectorXd& x) const;
  // scale_index * ln|det A| (avoids overflow of rho at extreme scales).
  double log_rho(const Eigen::VectorXd& x) const;

  // Continuous scale: u = m + smoothstep(shell interpolation), m = scale_index.
  double continuous_scale(const Eigen::VectorXd& x, int hint = 0) const;
  // r > 0 with continuous_scale(r * dir) = u; closed form along the ray.
  double radius_at_scale(const Eigen::VectorXd& dir, double u) const;
  Eigen::VectorXd point_at_scale(const Eigen::VectorXd& dir, double u) const;

 private:
  bool inside_at(int i, const Eigen::VectorXd& x) const;

  ExpansiveMatrix a_;
  Ellipsoid omega_;
};

// Empirical quasi-triangle constant: max over sampled pairs of
// rho(x + y) / (rho(x) + rho(y)), scales drawn log-uniformly in
// [scale_lo, scale_hi]; includes aligned and near-degenerate pairs.
double quasi_triangle_constant(const StepQuasiNorm& q, int n_pairs, std::uint64_t seed,
                               int scale_lo = -20, int scale_hi = 20);

struct RatioRange {
  double lo = 0.0;
  double hi = 0.0;
};

// min / max of rho_b(x) / rho_a(x) over points sampled log-uniformly across
// a-scales in [scale_lo, scale_hi]. Both norms evaluated in log space.
RatioRange equivalence_ratio(const StepQuasiNorm& qa, const StepQuasiNorm& qb, int n_samples,
                             std::uint64_t seed, int scale_lo = -20, int scale_hi = 20);

}  // namespace aniso
