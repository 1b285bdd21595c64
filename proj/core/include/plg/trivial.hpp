#pragma once

#include <Eigen/Dense>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "plg/algebra.hpp"
#include "plg/basis_expander.hpp"
#include "plg/common.hpp"

namespace plg {

/// Abelian baseline: G = R^n, G* = (R^n)*, zero brackets and cocycle.
/// The double embeds in SL(2n+1, R) as unipotent matrices
/// d = Id + sum_i s_i E_{i,2n}, so group multiplication is addition and
/// every double element factors (margin identically 1). H = first k
/// coordinates of G; the reduced structure is the canonical cotangent
/// structure on R^{n-k} x (R^{n-k})*.
class TrivialModel {
 public:
  using Mat = Eigen::MatrixXcd;

  struct GroupPoint {
    Eigen::VectorXd x;
  };

  struct DualGroupPoint {
    Eigen::VectorXd xi;
  };

  struct Factorization {
    GroupPoint g;
    DualGroupPoint gamma;
  };

  struct FactorOutcome {
    std::optional<Factorization> result;
    double margin = 0.0;
  };

  explicit TrivialModel(int n = 3, int k = 1);

  std::string name() const { return "trivial"; }
  int n() const { return n_; }
  const algebra::LieBialgebraData& bialgebra() const { return bial_; }
  const std::vector<Mat>& basis_d() const { return basis_; }

  Mat embed(const GroupPoint& g) const;
  Mat embed(const DualGroupPoint& gamma) const;

  GroupPoint id_G() const { return {Eigen::VectorXd::Zero(n_)}; }
  DualGroupPoint id_Gs() const { return {Eigen::VectorXd::Zero(n_)}; }

  GroupPoint mul(const GroupPoint& a, const GroupPoint& b) const {
    return {a.x + b.x};
  }
  GroupPoint inv(const GroupPoint& a) const { return {-a.x}; }
  DualGroupPoint mul(const DualGroupPoint& a, const DualGroupPoint& b) const {
    return {a.xi + b.xi};
  }
  DualGroupPoint inv(const DualGroupPoint& a) const { return {-a.xi}; }

  GroupPoint renormalized(const GroupPoint& g) const { return g; }
  DualGroupPoint renormalized(const DualGroupPoint& gamma) const {
    return gamma;
  }

  GroupPoint group_from_matrix(const Mat& m, double tol = 1e-6) const;
  DualGroupPoint dual_from_matrix(const Mat& m, double tol = 1e-6) const;

  GroupPoint exp_G(const Eigen::VectorXd& x) const { return {x}; }
  DualGroupPoint exp_Gs(const Eigen::VectorXd& xi) const { return {xi}; }
  Eigen::VectorXd log_Gs(const DualGroupPoint& gamma) const { return gamma.xi; }

  FactorOutcome factorize(const Mat& d, Order order) const;

  Eigen::VectorXd chart_G(const GroupPoint& g) const { return g.x; }
  GroupPoint unchart_G(const Eigen::VectorXd& v) const { return {v}; }
  Eigen::VectorXd chart_G_diff(const Eigen::VectorXd& a,
                               const Eigen::VectorXd& b) const {
    return a - b;
  }
  Eigen::VectorXd chart_Gs(const DualGroupPoint& gamma) const {
    return gamma.xi;
  }
  DualGroupPoint unchart_Gs(const Eigen::VectorXd& v) const { return {v}; }
  Eigen::VectorXd chart_Gs_diff(const Eigen::VectorXd& a,
                                const Eigen::VectorXd& b) const {
    return a - b;
  }

  GroupPoint random_G(Rng& rng) const;
  DualGroupPoint random_Gs(Rng& rng) const;

  double dist_G(const GroupPoint& a, const GroupPoint& b) const {
    return (a.x - b.x).lpNorm<Eigen::Infinity>();
  }
  double dist_Gs(const DualGroupPoint& a, const DualGroupPoint& b) const {
    return (a.xi - b.xi).lpNorm<Eigen::Infinity>();
  }

  BasisExpander::Expansion expand_d(const Mat& m) const {
    return expander_.expand(m);
  }
  Eigen::MatrixXd adjoint_matrix(const Mat& d, double tol = 1e-9) const {
    return expander_.adjoint_matrix(d, tol);
  }

  int h_dim() const { return k_; }
  Eigen::MatrixXd h_basis() const;
  GroupPoint h_exp(const Eigen::VectorXd& t) const;
  GroupPoint h_random(Rng& rng) const;
  double h_residual(const GroupPoint& g) const;
  Eigen::VectorXd h_log(const GroupPoint& h) const { return h.x.head(k_); }
  double unit_class_residual(const DualGroupPoint& gamma) const;
  Eigen::VectorXd class_label(const DualGroupPoint& gamma) const {
    return gamma.xi.head(k_);
  }
  int base_dim() const { return n_ - k_; }
  Eigen::VectorXd base_chart(const GroupPoint& g) const {
    return g.x.tail(n_ - k_);
  }
  GroupPoint base_section(const Eigen::VectorXd& z) const;

  nlohmann::json json_G(const GroupPoint& g) const;
  nlohmann::json json_Gs(const DualGroupPoint& gamma) const;

 private:
  int n_, k_;
  std::vector<Mat> basis_;
  BasisExpander expander_;
  algebra::LieBialgebraData bial_;
};

}  // namespace plg
