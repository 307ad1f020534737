#include "aniso/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace aniso {

const Eigen::MatrixXd& ExpansiveMatrix::power(int k) const {
  std::lock_guard<std::mutex> lock(core_->cache_mutex);
  auto& powers = core_->powers;
  auto it = powers.find(k);
  if (it != powers.end()) return it->second;
  if (powers.empty()) {
    powers.emplace(0, Eigen::MatrixXd::Identity(dim(), dim()));
  }
  // Walk outward from the nearest cached exponent on the same side of zero.
  int have = 0;
  for (const auto& [e, m] : powers) {
    if ((k > 0 && e >= 0 && e <= k && e > have) || (k < 0 && e <= 0 && e >= k && e < have)) {
      have = e;
    }
  }
  Eigen::MatrixXd cur = powers.at(have);
  const Eigen::MatrixXd& step = k > 0 ? core_->mat : core_->inv;
  while (have != k) {
    cur = step * cur;
    have += k > 0 ? 1 : -1;
    powers.emplace(have, cur);
  }
  return powers.at(k);
}

std::vector<Eigen::MatrixXd> ExpansiveMatrix::power_table(int lo, int hi) const {
  if (lo > hi) throw std::invalid_argument("power_table: lo > hi");
  std::vector<Eigen::MatrixXd> table;
  table.reserve(static_cast<std::size_t>(hi - lo + 1));
  for (int k = lo; k <= hi; ++k) table.push_back(power(k));
  return table;
}

ExpansiveMatrix ExpansiveMatrix::adjoint() const {
  return require_expansive(core_->mat.transpose());
}

std::variant<ExpansiveMatrix, ExpansiveRejection> certify_expansive(const Eigen::MatrixXd& m,
                                                                    double tol) {
  if (m.rows() != m.cols()) {
    return ExpansiveRejection{"matrix is not square", std::nullopt};
  }
  const int d = static_cast<int>(m.rows());
  if (d < 1 || d > 8) {
    return ExpansiveRejection{"dimension outside supported range [1, 8]", std::nullopt};
  }
  if (!m.allFinite()) {
    return ExpansiveRejection{"matrix has non-finite entries", std::nullopt};
  }
  Eigen::EigenSolver<Eigen::MatrixXd> solver(m, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    return ExpansiveRejection{"eigenvalue computation failed", std::nullopt};
  }
  std::vector<double> moduli(static_cast<std::size_t>(d));
  for (int k = 0; k < d; ++k) moduli[static_cast<std::size_t>(k)] = std::abs(solver.eigenvalues()[k]);
  std::sort(moduli.begin(), moduli.end());
  if (moduli.front() <= 1.0 + tol) {
    return ExpansiveRejection{"eigenvalue modulus not above 1", moduli.front()};
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
  if (!lu.isInvertible()) {
    return ExpansiveRejection{"matrix is numerically singular", std::nullopt};
  }

  auto core = std::make_shared<ExpansiveMatrix::Core>();
  core->mat = m;
  core->inv = lu.inverse();
  core->eigs = solver.eigenvalues();
  core->moduli = std::move(moduli);
  core->det_abs = std::abs(lu.determinant());
  core->log_det_abs = std::log(core->det_abs);
  return ExpansiveMatrix(std::move(core));
}

ExpansiveMatrix require_expansive(const Eigen::MatrixXd& m, double tol) {
  auto result = certify_expansive(m, tol);
  if (auto* rej = std::get_if<ExpansiveRejection>(&result)) {
    std::string msg = "matrix is not expansive: " + rej->reason;
    if (rej->offending_modulus) {
      msg += " (modulus " + std::to_string(*rej->offending_modulus) + ")";
    }
    throw std::invalid_argument(msg);
  }
  return std::get<ExpansiveMatrix>(result);
}

DilationExponents dilation_exponents(const ExpansiveMatrix& a, double margin) {
  if (!(margin > 0.0 && margin < 1.0)) {
    throw std::invalid_argument("dilation_exponents: margin must lie in (0, 1)");
  }
  DilationExponents de;
  de.lambda_minus = 1.0 + (1.0 - margin) * (a.min_modulus() - 1.0);
  de.lambda_plus = a.max_modulus() / (1.0 - margin);
  de.zeta_minus = std::log(de.lambda_minus) / a.log_det_abs();
  de.zeta_plus = std::log(de.lambda_plus) / a.log_det_abs();
  return de;
}

Ellipsoid::Ellipsoid(Eigen::MatrixXd shape, double level, double theta, double contraction_norm,
                     int series_terms)
    : shape_(std::move(shape)),
      level_(level),
      theta_(theta),
      contraction_norm_(contraction_norm),
      series_terms_(series_terms) {
  Eigen::LLT<Eigen::MatrixXd> llt(shape_);
  if (llt.info() != Eigen::Success) {
    throw std::invalid_argument("Ellipsoid: shape matrix is not positive definite");
  }
  metric_ = Eigen::MatrixXd(llt.matrixL()).transpose();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(shape_);
  semi_axes_ = (level_ / es.eigenvalues().array()).sqrt().matrix();
}

double Ellipsoid::quad(const Eigen::VectorXd& x) const {
  const double q = x.dot(shape_ * x);
  return std::isnan(q) ? std::numeric_limits<double>::infinity() : q;
}

double Ellipsoid::volume() const {
  const int d = dim();
  const double unit_ball =
      std::pow(std::numbers::pi, 0.5 * d) / std::tgamma(0.5 * d + 1.0);
  return unit_ball * std::pow(level_, 0.5 * d) / std::sqrt(shape_.determinant());
}

Eigen::VectorXd Ellipsoid::boundary_point(const Eigen::VectorXd& dir) const {
  const double q = quad(dir);
  if (!(q > 0.0)) throw std::invalid_argument("boundary_point: zero direction");
  return dir * std::sqrt(level_ / q);
}

Ellipsoid build_ellipsoid(const ExpansiveMatrix& a, std::optional<double> theta_opt,
                          double tail_rel) {
  const int d = a.dim();
  const double rho_inv = 1.0 / a.min_modulus();  // spectral radius of A^{-1}
  const double theta = theta_opt.value_or(0.5 * (1.0 + rho_inv));
  if (!(theta > rho_inv && theta < 1.0)) {
    throw std::invalid_argument("build_ellipsoid: theta must lie in (rho(A^-1), 1)");
  }

  // S = sum_k theta^{-2k} (A^{-k})^T A^{-k}. Term recurrence with measured
  // geometric decay gives a certified relative tail bound.
  Eigen::MatrixXd s = Eigen::MatrixXd::Identity(d, d);
  Eigen::MatrixXd term = Eigen::MatrixXd::Identity(d, d);
  const Eigen::MatrixXd& inv = a.inverse();
  const double scale = 1.0 / (theta * theta);
  int terms = 1;
  const int max_terms = 10000;
  double prev_norm = term.norm();
  for (; terms < max_terms; ++terms) {
    term = scale * inv.transpose() * term * inv;
    s += term;
    const double tn = term.norm();
    const double ratio = tn / prev_norm;
    prev_norm = tn;
    if (ratio < 1.0) {
      const double tail = tn * ratio / (1.0 - ratio);
      if (tail < tail_rel * s.norm()) break;
    }
  }
  if (terms >= max_terms) {
    throw std::runtime_error("build_ellipsoid: series did not settle (theta too close to 1?)");
  }
  s = ((s + s.transpose()) * 0.5).eval();

  // Unit volume: c = (sqrt(det S) / vol(B_1^d))^(2/d).
  const double unit_ball = std::pow(std::numbers::pi, 0.5 * d) / std::tgamma(0.5 * d + 1.0);
  const double level = std::pow(std::sqrt(s.determinant()) / unit_ball, 2.0 / d);

  // Contraction certificate: |A^{-1}|_S = sigma_max(M A^{-1} M^{-1}), M^T M = S.
  Eigen::LLT<Eigen::MatrixXd> llt(s);
  if (llt.info() != Eigen::Success) {
    throw std::runtime_error("build_ellipsoid: shape matrix lost positive definiteness");
  }
  const Eigen::MatrixXd metric = Eigen::MatrixXd(llt.matrixL()).transpose();
  const Eigen::MatrixXd conj =
      metric * inv * metric.triangularView<Eigen::Upper>().solve(Eigen::MatrixXd::Identity(d, d));
  const double contraction =
      Eigen::JacobiSVD<Eigen::MatrixXd>(conj).singularValues().maxCoeff();
  if (contraction > theta * (1.0 + 1e-9)) {
    throw std::runtime_error("build_ellipsoid: contraction certificate failed");
  }
  return Ellipsoid(std::move(s), level, theta, contraction, terms);
}

}  // namespace aniso
