#include "aniso/covers.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "aniso/util.hpp"

namespace aniso {

double PlateauBump::operator()(double t) const {
  if (t <= 0.0 || t >= width) return 0.0;
  if (t < rise) return smoothstep(t / rise);
  if (t > width - rise) return smoothstep((width - t) / rise);
  return 1.0;
}

FourierProfile::FourierProfile(std::shared_ptr<const StepQuasiNorm> norm, PlateauBump g,
                               int pou_window, int shift, int window)
    : norm_(std::move(norm)), g_(g), pou_window_(pou_window), shift_(shift), window_(window) {}

FourierProfile FourierProfile::analyzing(const ExpansiveMatrix& a, PlateauBump g,
                                         int pou_window) {
  auto adj = std::make_shared<const StepQuasiNorm>(StepQuasiNorm::standard(a.adjoint()));
  return analyzing(std::move(adj), g, pou_window);
}

FourierProfile FourierProfile::analyzing(std::shared_ptr<const StepQuasiNorm> adjoint_norm,
                                         PlateauBump g, int pou_window) {
  if (!adjoint_norm) throw std::invalid_argument("analyzing profile: null quasi-norm");
  if (!(g.width > 1.0)) {
    // Dilate supports must overlap so the shifted bumps cover every scale.
    throw std::invalid_argument("analyzing profile: bump width must exceed 1");
  }
  if (!(g.rise > 0.0) || !(2.0 * g.rise < g.width)) {
    throw std::invalid_argument("analyzing profile: rise must lie in (0, width/2)");
  }
  if (pou_window < 1 + static_cast<int>(std::ceil(g.width))) {
    throw std::invalid_argument("analyzing profile: pou window too small for bump width");
  }
  FourierProfile p(std::move(adjoint_norm), g, pou_window, 0, 0);
  p.verify();
  return p;
}

double FourierProfile::base_value(double t) const {
  const double num = g_(t);
  if (num == 0.0) return 0.0;
  double den = 0.0;
  for (int i = -pou_window_; i <= pou_window_; ++i) den += g_(t - i);
  return num / den;
}

double FourierProfile::value_at_scale(double u) const {
  const double t = u - shift_;
  if (window_ == 0) return base_value(t);
  double s = 0.0;
  for (int k = -window_; k <= window_; ++k) s += base_value(t - k);
  return s;
}

double FourierProfile::value(const Eigen::VectorXd& xi, int hint) const {
  if (xi.size() != norm_->dim()) throw std::invalid_argument("profile value: dimension mismatch");
  if (xi.isZero(0.0)) return 0.0;
  return value_at_scale(norm_->continuous_scale(xi, hint));
}

FourierProfile FourierProfile::dilate(int i) const {
  return FourierProfile(norm_, g_, pou_window_, shift_ + i, window_);
}

FourierProfile FourierProfile::window(int n) const {
  if (window_ != 0) throw std::invalid_argument("window: profile is already windowed");
  const int needed = neighbor_bound(support_annulus());
  if (n < needed) {
    throw std::invalid_argument("window: halfwidth below the neighbor bound " +
                                std::to_string(needed));
  }
  FourierProfile w(norm_, g_, pou_window_, shift_, n);
  // The window must be identically 1 on the base support.
  for (double u = 1e-4; u < g_.width; u += 1e-3) {
    if (std::abs(w.value_at_scale(shift_ + u) - 1.0) > 1e-9) {
      throw std::runtime_error("window: not identically 1 on the base support");
    }
  }
  return w;
}

double FourierProfile::rho_in() const {
  return std::exp(support_lo() * norm_->matrix().log_det_abs());
}

double FourierProfile::rho_out() const {
  return std::exp(support_hi() * norm_->matrix().log_det_abs());
}

CoverAnnulus FourierProfile::support_annulus() const {
  return CoverAnnulus{norm_, support_lo(), support_hi()};
}

void FourierProfile::verify() const {
  // (analyzing1): compact support away from 0 holds by construction; sanity
  // check the endpoints. (analyzing3): integer shifts sum to 1. (analyzing2):
  // the shifted family has a positive lower envelope on every scale.
  if (value_at_scale(support_lo()) != 0.0 || value_at_scale(support_hi()) != 0.0) {
    throw std::runtime_error("analyzing profile: support certificate failed");
  }
  const int reach = pou_window_ + 2;
  for (double u = -3.0; u <= 3.0 + g_.width; u += 1e-3) {
    double sum = 0.0, peak = 0.0;
    int nonzero = 0;
    for (int i = -reach; i <= reach; ++i) {
      const double v = value_at_scale(u + i);
      sum += v;
      peak = std::max(peak, v);
      if (v != 0.0) ++nonzero;
    }
    if (std::abs(sum - 1.0) > 1e-9) {
      throw std::runtime_error("analyzing profile: partition of unity failed");
    }
    if (peak < 1.0 / (2 * pou_window_ + 1)) {
      throw std::runtime_error("analyzing profile: positive envelope failed");
    }
    if (nonzero > 2 * pou_window_ + 1) {
      throw std::runtime_error("analyzing profile: too many overlapping dilates");
    }
  }
}

int IndexSets::max_j_count() const {
  std::size_t best = 0;
  for (const auto& [i, js] : j_for_i) best = std::max(best, js.size());
  return static_cast<int>(best);
}

int IndexSets::max_i_count() const {
  std::size_t best = 0;
  for (const auto& [j, is] : i_for_j) best = std::max(best, is.size());
  return static_cast<int>(best);
}

bool IndexSets::consistent() const {
  for (const auto& [i, js] : j_for_i) {
    for (int j : js) {
      const auto it = i_for_j.find(j);
      if (it == i_for_j.end() || !std::binary_search(it->second.begin(), it->second.end(), i)) {
        return false;
      }
    }
  }
  for (const auto& [j, is] : i_for_j) {
    for (int i : is) {
      const auto it = j_for_i.find(i);
      if (it == j_for_i.end() || !std::binary_search(it->second.begin(), it->second.end(), j)) {
        return false;
      }
    }
  }
  return true;
}

namespace {

bool same_norm(const CoverAnnulus& a, const CoverAnnulus& b) {
  return a.norm == b.norm ||
         (a.norm->matrix().same_matrix(b.norm->matrix()) &&
          a.norm->omega().shape().cwiseEqual(b.norm->omega().shape()).all());
}

void mark_pair(IndexSets& sets, int i, int j) {
  sets.j_for_i[i].push_back(j);
  sets.i_for_j[j].push_back(i);
}

void finalize(IndexSets& sets) {
  for (auto& [i, js] : sets.j_for_i) {
    std::sort(js.begin(), js.end());
    js.erase(std::unique(js.begin(), js.end()), js.end());
  }
  for (auto& [j, is] : sets.i_for_j) {
    std::sort(is.begin(), is.end());
    is.erase(std::unique(is.begin(), is.end()), is.end());
  }
}

}  // namespace

IndexSets intersection_sets(const CoverAnnulus& qa, const CoverAnnulus& pb, int i_lo, int i_hi,
                            int j_lo, int j_hi, int n_directions) {
  if (!qa.norm || !pb.norm) throw std::invalid_argument("intersection_sets: null quasi-norm");
  if (qa.norm->dim() != pb.norm->dim()) {
    throw std::invalid_argument("intersection_sets: dimension mismatch");
  }
  if (!(qa.u_lo < qa.u_hi) || !(pb.u_lo < pb.u_hi)) {
    throw std::invalid_argument("intersection_sets: empty annulus");
  }
  if (i_lo > i_hi || j_lo > j_hi) throw std::invalid_argument("intersection_sets: bad sweep");

  IndexSets sets;
  sets.i_lo = i_lo;
  sets.i_hi = i_hi;
  sets.j_lo = j_lo;
  sets.j_hi = j_hi;

  if (same_norm(qa, pb)) {
    // One scale variable: dilates meet iff the shifted intervals overlap.
    for (int i = i_lo; i <= i_hi; ++i) {
      for (int j = j_lo; j <= j_hi; ++j) {
        if (i + qa.u_lo < j + pb.u_hi && j + pb.u_lo < i + qa.u_hi) mark_pair(sets, i, j);
      }
    }
    finalize(sets);
    return sets;
  }

  const int d = qa.norm->dim();
  if (n_directions <= 0) n_directions = d == 2 ? 4096 : (d == 3 ? 8192 : 4096);
  const auto dirs = direction_set(d, n_directions);

  for (const auto& w : dirs) {
    int hint = 0;
    for (int i = i_lo; i <= i_hi; ++i) {
      // The i-th A*-annulus cuts the ray at scales (i + u_lo, i + u_hi);
      // transfer both endpoints into the B* scale, which is monotone in r.
      const double r1 = qa.norm->radius_at_scale(w, i + qa.u_lo);
      const double r2 = qa.norm->radius_at_scale(w, i + qa.u_hi);
      const double t1 = pb.norm->continuous_scale(r1 * w, hint);
      const double t2 = pb.norm->continuous_scale(r2 * w, static_cast<int>(std::floor(t1)));
      hint = static_cast<int>(std::floor(t1));
      // Open-interval overlap with (j + u_lo, j + u_hi).
      const int j_min = static_cast<int>(std::floor(t1 - pb.u_hi)) + 1;
      const int j_max = static_cast<int>(std::ceil(t2 - pb.u_lo)) - 1;
      for (int j = std::max(j_min, j_lo); j <= std::min(j_max, j_hi); ++j) {
        mark_pair(sets, i, j);
      }
    }
  }
  finalize(sets);
  return sets;
}

int neighbor_bound(const CoverAnnulus& q) {
  if (!q.norm) throw std::invalid_argument("neighbor_bound: null quasi-norm");
  if (!(q.u_lo < q.u_hi)) throw std::invalid_argument("neighbor_bound: empty annulus");
  int n = 0;
  while (q.u_lo + (n + 1) < q.u_hi) ++n;  // (u_lo + k, u_hi + k) meets (u_lo, u_hi)
  return n;
}

}  // namespace aniso
