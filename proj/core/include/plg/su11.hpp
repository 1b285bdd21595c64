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

/// The su(1,1) / sb(2,C) pair inside SL(2,C).
///
/// G = SU(1,1) = {[[alpha, beta], [conj beta, conj alpha]] : |alpha|^2 - |beta|^2 = 1},
/// G* = {[[A, N], [0, 1/A]] : A > 0, N complex}.
///
/// The double algebra basis is (e0, e1, e2, f0, f1, f2) with
///   e0 = [[i,0],[0,-i]], e1 = [[0,1],[1,0]], e2 = [[0,i],[-i,0]],
///   f0 = [[1/2,0],[0,-1/2]], f1 = [[0,i],[0,0]], f2 = [[0,-1],[0,0]],
/// dual under the pairing Im tr(AB). Structure constants are derived from
/// matrix commutators at construction and cross-checked against the
/// axioms; the constructor throws if anything is off.
class Su11Model {
 public:
  using Mat = Eigen::MatrixXcd;

  struct GroupPoint {
    cplx alpha{1.0, 0.0};
    cplx beta{0.0, 0.0};
  };

  struct DualGroupPoint {
    double A = 1.0;
    cplx N{0.0, 0.0};
  };

  struct Factorization {
    GroupPoint g;
    DualGroupPoint gamma;
  };

  /// margin > 0 iff the factorization exists; result is empty otherwise.
  struct FactorOutcome {
    std::optional<Factorization> result;
    double margin = 0.0;
  };

  Su11Model();

  std::string name() const { return "su11"; }
  int n() const { return 3; }
  const algebra::LieBialgebraData& bialgebra() const { return bial_; }
  const std::vector<Mat>& basis_d() const { return basis_; }

  Mat embed(const GroupPoint& g) const;
  Mat embed(const DualGroupPoint& gamma) const;

  GroupPoint id_G() const { return {}; }
  DualGroupPoint id_Gs() const { return {}; }

  GroupPoint mul(const GroupPoint& a, const GroupPoint& b) const;
  GroupPoint inv(const GroupPoint& a) const;
  DualGroupPoint mul(const DualGroupPoint& a, const DualGroupPoint& b) const;
  DualGroupPoint inv(const DualGroupPoint& a) const;

  GroupPoint renormalized(const GroupPoint& g) const;
  DualGroupPoint renormalized(const DualGroupPoint& gamma) const;

  GroupPoint group_from_matrix(const Mat& m, double tol = 1e-6) const;
  DualGroupPoint dual_from_matrix(const Mat& m, double tol = 1e-6) const;

  GroupPoint exp_G(const Eigen::VectorXd& x) const;
  DualGroupPoint exp_Gs(const Eigen::VectorXd& xi) const;
  Eigen::VectorXd log_Gs(const DualGroupPoint& gamma) const;

  FactorOutcome factorize(const Mat& d, Order order) const;

  /// Charts: G -> (arg alpha, Re beta, Im beta); G* -> (log A, Re N, Im N).
  Eigen::VectorXd chart_G(const GroupPoint& g) const;
  GroupPoint unchart_G(const Eigen::VectorXd& v) const;
  Eigen::VectorXd chart_G_diff(const Eigen::VectorXd& a,
                               const Eigen::VectorXd& b) const;
  Eigen::VectorXd chart_Gs(const DualGroupPoint& gamma) const;
  DualGroupPoint unchart_Gs(const Eigen::VectorXd& v) const;
  Eigen::VectorXd chart_Gs_diff(const Eigen::VectorXd& a,
                                const Eigen::VectorXd& b) const;

  /// Samples with |beta| <= 2, A in [1/2, 2], |N| <= 2.
  GroupPoint random_G(Rng& rng) const;
  DualGroupPoint random_Gs(Rng& rng) const;

  double dist_G(const GroupPoint& a, const GroupPoint& b) const;
  double dist_Gs(const DualGroupPoint& a, const DualGroupPoint& b) const;

  BasisExpander::Expansion expand_d(const Mat& m) const {
    return expander_.expand(m);
  }
  Eigen::MatrixXd adjoint_matrix(const Mat& d, double tol = 1e-9) const {
    return expander_.adjoint_matrix(d, tol);
  }

  // H = U(1) diagonal subgroup, base space H\G realised as the unit disc
  // z = beta / alpha.
  int h_dim() const { return 1; }
  Eigen::MatrixXd h_basis() const;
  GroupPoint h_exp(const Eigen::VectorXd& t) const;
  GroupPoint h_random(Rng& rng) const;
  double h_residual(const GroupPoint& g) const;
  Eigen::VectorXd h_log(const GroupPoint& h) const;
  double unit_class_residual(const DualGroupPoint& gamma) const;
  /// Label of the class of gamma in G*/H-perp; H-perp = {A = 1} so the
  /// class is the A coordinate.
  Eigen::VectorXd class_label(const DualGroupPoint& gamma) const;
  int base_dim() const { return 2; }
  Eigen::VectorXd base_chart(const GroupPoint& g) const;
  GroupPoint base_section(const Eigen::VectorXd& z) const;

  nlohmann::json json_G(const GroupPoint& g) const;
  nlohmann::json json_Gs(const DualGroupPoint& gamma) const;

 private:
  void registration_checks() const;

  std::vector<Mat> basis_;
  BasisExpander expander_;
  algebra::LieBialgebraData bial_;
};

}  // namespace plg
