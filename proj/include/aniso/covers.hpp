#pragma once

#include <Eigen/Dense>

#include <map>
#include <memory>
#include <vector>

#include "aniso/quasinorm.hpp"

namespace aniso {

// Plateau bump in continuous-scale units: 0 outside (0, width), identically 1
// on [rise, width - rise], C-infinity ramps in between. The defaults encode an
// annulus (1, |det|^2) with plateau [|det|^{1/2}, |det|^{3/2}] in rho units.
struct PlateauBump {
  double width = 2.0;
  double rise = 0.5;
  double operator()(double t) const;
};

// Annulus {xi : u_lo < u(xi) < u_hi} in the continuous scale u of a quasi-norm
// (normally the adjoint-matrix one). The basic cover set: its integer dilates
// tile frequency space.
struct CoverAnnulus {
  std::shared_ptr<const StepQuasiNorm> norm;
  double u_lo = 0.0;
  double u_hi = 2.0;

  CoverAnnulus shifted(int i) const { return {norm, u_lo + i, u_hi + i}; }
};

// Frequency-domain analyzing profile: a function of the continuous scale u of
// the adjoint quasi-norm. The base profile is the plateau bump normalized by
// its integer-shift sum, so the shifts form an exact partition of unity away
// from the origin; window profiles are finite sums of shifts.
class FourierProfile {
 public:
  // Normalized analyzing profile for dilation matrix a (adjoint handled
  // internally). Verifies compact-support, positivity, and partition-of-unity
  // properties on a scale sweep; throws if they fail.
  static FourierProfile analyzing(const ExpansiveMatrix& a, PlateauBump g = {},
                                  int pou_window = 3);
  // Same profile over an existing adjoint-side quasi-norm (shared caches).
  static FourierProfile analyzing(std::shared_ptr<const StepQuasiNorm> adjoint_norm,
                                  PlateauBump g = {}, int pou_window = 3);

  // Profile of phi_hat((A*)^{-i} xi): shift by i in scale units; exact.
  FourierProfile dilate(int i) const;
  // Window profile sum of dilates |k| <= n around this profile's shift.
  // Requires n >= neighbor bound of the base annulus so the window is
  // identically 1 on the base support (verified; throws otherwise).
  FourierProfile window(int n) const;

  double value_at_scale(double u) const;
  // 0 at xi = 0; otherwise value_at_scale(u(xi)). hint as in continuous_scale.
  double value(const Eigen::VectorXd& xi, int hint = 0) const;

  // Support interval in scale units (open).
  double support_lo() const { return shift_ - window_; }
  double support_hi() const { return shift_ + window_ + g_.width; }
  // Annulus certificate in rho units: support inside {rho_in < rho_A* < rho_out}.
  double rho_in() const;
  double rho_out() const;
  CoverAnnulus support_annulus() const;

  const StepQuasiNorm& adjoint_norm() const { return *norm_; }
  std::shared_ptr<const StepQuasiNorm> adjoint_norm_ptr() const { return norm_; }
  int shift() const { return shift_; }
  int window_halfwidth() const { return window_; }
  const PlateauBump& bump() const { return g_; }

 private:
  FourierProfile(std::shared_ptr<const StepQuasiNorm> norm, PlateauBump g, int pou_window,
                 int shift, int window);
  double base_value(double t) const;  // normalized bump at scale t
  void verify() const;

  std::shared_ptr<const StepQuasiNorm> norm_;
  PlateauBump g_;
  int pou_window_ = 3;
  int shift_ = 0;
  int window_ = 0;  // 0: single bump; n: sum over shifts |k| <= n
};

// Index sets of a two-matrix cover sweep: j in J_i iff the i-th A*-annulus
// dilate meets the j-th B*-annulus dilate (and symmetrically I_j).
struct IndexSets {
  int i_lo = 0, i_hi = 0, j_lo = 0, j_hi = 0;
  std::map<int, std::vector<int>> j_for_i;
  std::map<int, std::vector<int>> i_for_j;

  int max_j_count() const;
  int max_i_count() const;
  bool consistent() const;
};

// Intersection sets over dilation sweeps. Same-norm pairs use exact interval
// arithmetic in scale units; general pairs use the radial-transfer method over
// a deterministic direction set (n_directions = 0 picks a dimension-based
// default).
IndexSets intersection_sets(const CoverAnnulus& qa, const CoverAnnulus& pb, int i_lo, int i_hi,
                            int j_lo, int j_hi, int n_directions = 0);

// Smallest N with (A*)^i Q meeting Q only for |i| <= N; exact in scale units.
int neighbor_bound(const CoverAnnulus& q);

}  // namespace aniso
