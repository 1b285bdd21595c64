#include "plg/trivial.hpp"

#include <stdexcept>

namespace plg {

TrivialModel::TrivialModel(int n, int k) : n_(n), k_(k) {
  if (n < 1 || k < 0 || k >= n)
    throw std::invalid_argument("trivial: need n >= 1 and 0 <= k < n");
  const int d = 2 * n + 1;
  basis_.reserve(2 * n);
  for (int i = 0; i < 2 * n; ++i) {
    Mat b = Eigen::MatrixXcd::Zero(d, d);
    b(i, d - 1) = 1.0;
    basis_.push_back(b);
  }
  expander_ = BasisExpander(basis_);

  bial_.g.dim = n;
  bial_.g_star.dim = n;
  bial_.g.c.assign(n, Eigen::MatrixXd::Zero(n, n));
  bial_.g_star.c.assign(n, Eigen::MatrixXd::Zero(n, n));
  for (int i = 0; i < n; ++i) {
    bial_.g.labels.push_back("e" + std::to_string(i));
    bial_.g_star.labels.push_back("f" + std::to_string(i));
  }
  bial_.validate(1e-12);
}

TrivialModel::Mat TrivialModel::embed(const GroupPoint& g) const {
  const int d = 2 * n_ + 1;
  Mat m = Eigen::MatrixXcd::Identity(d, d);
  for (int i = 0; i < n_; ++i) m(i, d - 1) = g.x[i];
  return m;
}

TrivialModel::Mat TrivialModel::embed(const DualGroupPoint& gamma) const {
  const int d = 2 * n_ + 1;
  Mat m = Eigen::MatrixXcd::Identity(d, d);
  for (int i = 0; i < n_; ++i) m(n_ + i, d - 1) = gamma.xi[i];
  return m;
}

TrivialModel::GroupPoint TrivialModel::group_from_matrix(const Mat& m,
                                                         double tol) const {
  const int d = 2 * n_ + 1;
  GroupPoint g{m.block(0, d - 1, n_, 1).real()};
  double r = max_norm(Eigen::MatrixXcd(embed(g) - m));
  if (r > tol)
    throw std::invalid_argument("trivial: matrix is not in G, residual " +
                                std::to_string(r));
  return g;
}

TrivialModel::DualGroupPoint TrivialModel::dual_from_matrix(const Mat& m,
                                                            double tol) const {
  const int d = 2 * n_ + 1;
  DualGroupPoint gamma{m.block(n_, d - 1, n_, 1).real()};
  double r = max_norm(Eigen::MatrixXcd(embed(gamma) - m));
  if (r > tol)
    throw std::invalid_argument("trivial: matrix is not in G*, residual " +
                                std::to_string(r));
  return gamma;
}

TrivialModel::FactorOutcome TrivialModel::factorize(const Mat& d,
                                                    Order /*order*/) const {
  const int dd = 2 * n_ + 1;
  FactorOutcome out;
  out.margin = 1.0;
  out.result = Factorization{{d.block(0, dd - 1, n_, 1).real()},
                             {d.block(n_, dd - 1, n_, 1).real()}};
  return out;
}

TrivialModel::GroupPoint TrivialModel::random_G(Rng& rng) const {
  Eigen::VectorXd x(n_);
  for (int i = 0; i < n_; ++i) x[i] = rng.uniform(-1.0, 1.0);
  return {x};
}

TrivialModel::DualGroupPoint TrivialModel::random_Gs(Rng& rng) const {
  Eigen::VectorXd xi(n_);
  for (int i = 0; i < n_; ++i) xi[i] = rng.uniform(-1.0, 1.0);
  return {xi};
}

Eigen::MatrixXd TrivialModel::h_basis() const {
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(n_, k_);
  for (int i = 0; i < k_; ++i) b(i, i) = 1.0;
  return b;
}

TrivialModel::GroupPoint TrivialModel::h_exp(const Eigen::VectorXd& t) const {
  Eigen::VectorXd x = Eigen::VectorXd::Zero(n_);
  x.head(k_) = t;
  return {x};
}

TrivialModel::GroupPoint TrivialModel::h_random(Rng& rng) const {
  Eigen::VectorXd t(k_);
  for (int i = 0; i < k_; ++i) t[i] = rng.uniform(-1.0, 1.0);
  return h_exp(t);
}

double TrivialModel::h_residual(const GroupPoint& g) const {
  return g.x.tail(n_ - k_).lpNorm<Eigen::Infinity>();
}

double TrivialModel::unit_class_residual(const DualGroupPoint& gamma) const {
  return gamma.xi.head(k_).lpNorm<Eigen::Infinity>();
}

TrivialModel::GroupPoint TrivialModel::base_section(
    const Eigen::VectorXd& z) const {
  Eigen::VectorXd x = Eigen::VectorXd::Zero(n_);
  x.tail(n_ - k_) = z;
  return {x};
}

nlohmann::json TrivialModel::json_G(const GroupPoint& g) const {
  return {{"x", std::vector<double>(g.x.data(), g.x.data() + g.x.size())}};
}

nlohmann::json TrivialModel::json_Gs(const DualGroupPoint& gamma) const {
  return {
      {"xi", std::vector<double>(gamma.xi.data(), gamma.xi.data() + gamma.xi.size())}};
}

}  // namespace plg
