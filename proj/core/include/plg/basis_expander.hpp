#pragma once

#include <Eigen/Dense>
#include <vector>

#include "plg/common.hpp"

namespace plg {

/// Least-squares re-expansion of matrices in a fixed real basis of the
/// double (e_1..e_n, f^1..f^n as matrices). Residuals report how far the
/// input lies from the real span.
class BasisExpander {
 public:
  BasisExpander() = default;
  explicit BasisExpander(const std::vector<Eigen::MatrixXcd>& basis);

  struct Expansion {
    Eigen::VectorXd coords;
    double residual = 0.0;
  };

  Expansion expand(const Eigen::MatrixXcd& a) const;

  /// Matrix of Ad_d on the double in the fixed basis, by conjugating each
  /// basis matrix and re-expanding. Throws ExpansionError if any column's
  /// residual exceeds tol.
  Eigen::MatrixXd adjoint_matrix(const Eigen::MatrixXcd& d,
                                 double tol = 1e-9) const;

  Eigen::MatrixXcd reconstruct(const Eigen::VectorXd& coords) const;

  int size() const { return static_cast<int>(basis_.size()); }

 private:
  Eigen::VectorXd realify(const Eigen::MatrixXcd& a) const;

  std::vector<Eigen::MatrixXcd> basis_;
  Eigen::MatrixXd B_;
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr_;
  Eigen::Index rows_ = 0, mat_rows_ = 0, mat_cols_ = 0;
};

}  // namespace plg
