#pragma once

#include <Eigen/Dense>

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace aniso {

// A real d x d matrix certified expansive: every eigenvalue modulus exceeds 1.
// Value-semantic; spectral data and integer powers are cached behind a shared
// immutable core so copies are cheap.
class ExpansiveMatrix {
 public:
  int dim() const { return static_cast<int>(core_->mat.rows()); }
  const Eigen::MatrixXd& matrix() const { return core_->mat; }
  const Eigen::MatrixXd& inverse() const { return core_->inv; }
  double det_abs() const { return core_->det_abs; }
  double log_det_abs() const { return core_->log_det_abs; }
  // Eigenvalue moduli sorted ascending.
  const std::vector<double>& eig_moduli() const { return core_->moduli; }
  double min_modulus() const { return core_->moduli.front(); }
  double max_modulus() const { return core_->moduli.back(); }
  const Eigen::VectorXcd& eigenvalues() const { return core_->eigs; }

  // A^k for any integer k; cached, reference stays valid for the matrix's life.
  const Eigen::MatrixXd& power(int k) const;
  // Contiguous snapshot of powers lo..hi for hot loops (index [k - lo]).
  std::vector<Eigen::MatrixXd> power_table(int lo, int hi) const;

  // The transposed matrix, certified (same spectrum).
  ExpansiveMatrix adjoint() const;

  bool same_matrix(const ExpansiveMatrix& other) const {
    return core_ == other.core_ ||
           (core_->mat.rows() == other.core_->mat.rows() &&
            core_->mat.cwiseEqual(other.core_->mat).all());
  }

 private:
  struct Core {
    Eigen::MatrixXd mat, inv;
    Eigen::VectorXcd eigs;
    std::vector<double> moduli;
    double det_abs = 0.0, log_det_abs = 0.0;
    mutable std::mutex cache_mutex;
    mutable std::map<int, Eigen::MatrixXd> powers;
  };
  explicit ExpansiveMatrix(std::shared_ptr<const Core> core) : core_(std::move(core)) {}
  std::shared_ptr<const Core> core_;

  friend std::variant<ExpansiveMatrix, struct ExpansiveRejection> certify_expansive(
      const Eigen::MatrixXd&, double);
};

struct ExpansiveRejection {
  std::string reason;
  // Modulus that violated |lambda| > 1, when that is the failure.
  std::optional<double> offending_modulus;
};

// Certifies that every eigenvalue modulus exceeds 1 + tol; rejection carries
// the offending modulus. Dimensions outside [1, 8] and non-square inputs are
// rejected up front.
std::variant<ExpansiveMatrix, ExpansiveRejection> certify_expansive(
    const Eigen::MatrixXd& m, double tol = 1e-9);

// Throwing convenience wrapper around certify_expansive.
ExpansiveMatrix require_expansive(const Eigen::MatrixXd& m, double tol = 1e-9);

// lambda_- = 1 + (1 - margin)(min|eig| - 1), lambda_+ = max|eig| / (1 - margin),
// zeta_-+ = ln lambda_-+ / ln|det|.
struct DilationExponents {
  double lambda_minus = 0.0;
  double lambda_plus = 0.0;
  double zeta_minus = 0.0;
  double zeta_plus = 0.0;
};
DilationExponents dilation_exponents(const ExpansiveMatrix& a, double margin = 0.5);

// Open unit-volume ellipsoid {x : x^T S x < c} with A Omega containing r Omega
// for r = 1/theta > 1, certified by |A^{-1}|_S <= theta.
class Ellipsoid {
 public:
  Ellipsoid(Eigen::MatrixXd shape, double level, double theta, double contraction_norm,
            int series_terms);

  int dim() const { return static_cast<int>(shape_.rows()); }
  const Eigen::MatrixXd& shape() const { return shape_; }
  double level() const { return level_; }
  double theta() const { return theta_; }
  double r() const { return 1.0 / theta_; }
  // Measured |A^{-1}|_S (spectral norm in the S inner product).
  double contraction_norm() const { return contraction_norm_; }
  int series_terms() const { return series_terms_; }

  double quad(const Eigen::VectorXd& x) const;
  bool contains(const Eigen::VectorXd& x) const { return quad(x) < level_; }
  // Analytic volume of {quad < level}; unity by construction.
  double volume() const;
  // Boundary point along dir: t * dir with quad = level.
  Eigen::VectorXd boundary_point(const Eigen::VectorXd& dir) const;
  double minor_semi_axis() const { return semi_axes_.minCoeff(); }
  double major_semi_axis() const { return semi_axes_.maxCoeff(); }
  const Eigen::VectorXd& semi_axes() const { return semi_axes_; }
  // M with quad(x) = |M x|^2 (Cholesky factor transposed).
  const Eigen::MatrixXd& metric_factor() const { return metric_; }

 private:
  Eigen::MatrixXd shape_;
  double level_;
  double theta_;
  double contraction_norm_;
  int series_terms_;
  Eigen::MatrixXd metric_;
  Eigen::VectorXd semi_axes_;
};

// Geometric-series construction S = sum_k theta^{-2k} (A^{-k})^T A^{-k},
// truncated once the geometric tail falls below tail_rel of the partial sum.
// theta defaults to (1 + rho(A^{-1})) / 2; must lie in (rho(A^{-1}), 1).
Ellipsoid build_ellipsoid(const ExpansiveMatrix& a, std::optional<double> theta = {},
                          double tail_rel = 1e-12);

}  // namespace aniso
