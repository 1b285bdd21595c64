#include "plg/basis_expander.hpp"

#include <stdexcept>

namespace plg {

BasisExpander::BasisExpander(const std::vector<Eigen::MatrixXcd>& basis)
    : basis_(basis) {
  if (basis_.empty()) throw std::invalid_argument("BasisExpander: empty basis");
  mat_rows_ = basis_[0].rows();
  mat_cols_ = basis_[0].cols();
  rows_ = 2 * mat_rows_ * mat_cols_;
  B_.resize(rows_, static_cast<Eigen::Index>(basis_.size()));
  for (std::size_t j = 0; j < basis_.size(); ++j) {
    if (basis_[j].rows() != mat_rows_ || basis_[j].cols() != mat_cols_)
      throw std::invalid_argument("BasisExpander: inconsistent shapes");
    B_.col(static_cast<Eigen::Index>(j)) = realify(basis_[j]);
  }
  qr_.compute(B_);
  if (qr_.rank() != B_.cols())
    throw std::invalid_argument("BasisExpander: basis is rank deficient");
}

Eigen::VectorXd BasisExpander::realify(const Eigen::MatrixXcd& a) const {
  Eigen::VectorXd v(rows_);
  Eigen::Index k = 0;
  for (Eigen::Index j = 0; j < mat_cols_; ++j)
    for (Eigen::Index i = 0; i < mat_rows_; ++i) {
      v[k++] = a(i, j).real();
      v[k++] = a(i, j).imag();
    }
  return v;
}

BasisExpander::Expansion BasisExpander::expand(const Eigen::MatrixXcd& a) const {
  if (a.rows() != mat_rows_ || a.cols() != mat_cols_)
    throw std::invalid_argument("BasisExpander: shape mismatch");
  Eigen::VectorXd rhs = realify(a);
  Expansion out;
  out.coords = qr_.solve(rhs);
  out.residual = (B_ * out.coords - rhs).lpNorm<Eigen::Infinity>();
  return out;
}

Eigen::MatrixXd BasisExpander::adjoint_matrix(const Eigen::MatrixXcd& d,
                                              double tol) const {
  const Eigen::Index n = B_.cols();
  Eigen::MatrixXd ad(n, n);
  Eigen::MatrixXcd dinv = d.inverse();
  for (Eigen::Index j = 0; j < n; ++j) {
    Expansion e = expand(d * basis_[static_cast<std::size_t>(j)] * dinv);
    if (e.residual > tol) throw ExpansionError(e.residual);
    ad.col(j) = e.coords;
  }
  return ad;
}

Eigen::MatrixXcd BasisExpander::reconstruct(const Eigen::VectorXd& coords) const {
  if (coords.size() != B_.cols())
    throw std::invalid_argument("BasisExpander: coordinate size mismatch");
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(mat_rows_, mat_cols_);
  for (Eigen::Index j = 0; j < coords.size(); ++j)
    a += coords[j] * basis_[static_cast<std::size_t>(j)];
  return a;
}

}  // namespace plg
