#pragma once

#include <Eigen/Dense>
#include <nlohmann/json.hpp>
#include <stdexcept>

#include "plg/common.hpp"
#include "plg/dressing.hpp"
#include "plg/tensors.hpp"

namespace plg::groupoid {

/// A point of the double coset correspondence space: all four components
/// are stored redundantly, tied together by the relation
/// embed(g1) embed(gamma1) = embed(gamma2) embed(g2). The defect of that
/// relation at construction time is kept on the element.
template <class M>
struct GroupoidElement {
  typename M::GroupPoint g1;
  typename M::DualGroupPoint gamma1;
  typename M::DualGroupPoint gamma2;
  typename M::GroupPoint g2;
  double omega_residual = 0.0;
};

template <class M>
double omega_residual(const M& m, const typename M::GroupPoint& g1,
                      const typename M::DualGroupPoint& gamma1,
                      const typename M::DualGroupPoint& gamma2,
                      const typename M::GroupPoint& g2) {
  return max_norm(Eigen::MatrixXcd(m.embed(g1) * m.embed(gamma1) -
                                   m.embed(gamma2) * m.embed(g2)));
}

template <class M>
GroupoidElement<M> element(const M& m, const typename M::GroupPoint& g1,
                           const typename M::DualGroupPoint& gamma1,
                           const typename M::DualGroupPoint& gamma2,
                           const typename M::GroupPoint& g2,
                           double tol = 1e-9) {
  double r = omega_residual(m, g1, gamma1, gamma2, g2);
  if (r > tol)
    throw std::logic_error("groupoid element violates the defining relation: " +
                           std::to_string(r));
  return GroupoidElement<M>{g1, gamma1, gamma2, g2, r};
}

/// Completes (g1, gamma1) to a groupoid element. Throws NotFactorizable
/// when (g1, gamma1) lies over a non-factorizable double point.
template <class M>
GroupoidElement<M> make(const M& m, const typename M::GroupPoint& g1,
                        const typename M::DualGroupPoint& gamma1) {
  auto f = dressing::factorize_or_throw(
      m, Eigen::MatrixXcd(m.embed(g1) * m.embed(gamma1)), Order::Gstar_G);
  return element(m, g1, gamma1, f.gamma, f.g);
}

template <class M>
GroupoidElement<M> make_from_right(const M& m,
                                   const typename M::DualGroupPoint& gamma2,
                                   const typename M::GroupPoint& g2) {
  auto f = dressing::factorize_or_throw(
      m, Eigen::MatrixXcd(m.embed(gamma2) * m.embed(g2)), Order::G_Gstar);
  return element(m, f.g, f.gamma, gamma2, g2);
}

/// Round trip through the two completion maps; zero iff the element is the
/// unique completion of either half of its data.
template <class M>
double reassembly_defect(const M& m, const GroupoidElement<M>& x) {
  GroupoidElement<M> a = make(m, x.g1, x.gamma1);
  GroupoidElement<M> b = make_from_right(m, x.gamma2, x.g2);
  double d = 0.0;
  d = std::max(d, m.dist_Gs(a.gamma2, x.gamma2));
  d = std::max(d, m.dist_G(a.g2, x.g2));
  d = std::max(d, m.dist_G(b.g1, x.g1));
  d = std::max(d, m.dist_Gs(b.gamma1, x.gamma1));
  return d;
}

// ---- structure over G (source/target land in G) ----

template <class M>
typename M::GroupPoint source_G(const GroupoidElement<M>& x) {
  return x.g1;
}

template <class M>
typename M::GroupPoint target_G(const GroupoidElement<M>& x) {
  return x.g2;
}

template <class M>
GroupoidElement<M> unit_G(const M& m, const typename M::GroupPoint& g) {
  return element(m, g, m.id_Gs(), m.id_Gs(), g);
}

/// Composition over G: defined when target_G(x) equals source_G(y).
/// Near-misses are rejected, never snapped to the anchor.
template <class M>
GroupoidElement<M> mult_G(const M& m, const GroupoidElement<M>& x,
                          const GroupoidElement<M>& y, double tol = 1e-9,
                          double elem_tol = 1e-9) {
  double mismatch = m.dist_G(x.g2, y.g1);
  if (mismatch > tol) throw NotComposable(mismatch);
  return element(m, x.g1, m.mul(x.gamma1, y.gamma1),
                 m.mul(x.gamma2, y.gamma2), y.g2, elem_tol);
}

template <class M>
GroupoidElement<M> inverse_G(const M& m, const GroupoidElement<M>& x) {
  return element(m, x.g2, m.inv(x.gamma1), m.inv(x.gamma2), x.g1);
}

// ---- structure over G* ----

template <class M>
typename M::DualGroupPoint source_Gstar(const GroupoidElement<M>& x) {
  return x.gamma2;
}

template <class M>
typename M::DualGroupPoint target_Gstar(const GroupoidElement<M>& x) {
  return x.gamma1;
}

template <class M>
GroupoidElement<M> unit_Gstar(const M& m,
                              const typename M::DualGroupPoint& gamma) {
  return element(m, m.id_G(), gamma, gamma, m.id_G());
}

template <class M>
GroupoidElement<M> mult_Gstar(const M& m, const GroupoidElement<M>& x,
                              const GroupoidElement<M>& y, double tol = 1e-9) {
  double mismatch = m.dist_Gs(y.gamma2, x.gamma1);
  if (mismatch > tol) throw NotComposable(mismatch);
  return element(m, m.mul(x.g1, y.g1), y.gamma1, x.gamma2,
                 m.mul(x.g2, y.g2));
}

template <class M>
GroupoidElement<M> inverse_Gstar(const M& m, const GroupoidElement<M>& x) {
  return element(m, m.inv(x.g1), x.gamma2, x.gamma1, m.inv(x.g2));
}

/// The G*-structure acting on the G-structure along the momentum map:
/// defined when target_Gstar(x) matches J(y); the anchors must agree.
template <class M>
GroupoidElement<M> act(const M& m, const GroupoidElement<M>& x,
                       const GroupoidElement<M>& y, double tol = 1e-9) {
  double mismatch = m.dist_Gs(y.gamma2, x.gamma1);
  if (mismatch > tol) throw AnchorMismatch(mismatch);
  return element(m, m.mul(x.g1, y.g1), y.gamma1, x.gamma2,
                 m.mul(x.g2, y.g2));
}

/// Groupoid momentum map into G*.
template <class M>
typename M::DualGroupPoint J(const GroupoidElement<M>& x) {
  return x.gamma2;
}

/// J is a groupoid morphism on the nose: mult_G combines the gamma2
/// components with the very same product expression, so the defect is
/// required to vanish bitwise, not merely to tolerance.
template <class M>
double J_multiplicative_defect(const M& m, const GroupoidElement<M>& x,
                               const GroupoidElement<M>& y) {
  GroupoidElement<M> xy = mult_G(m, x, y);
  return m.dist_Gs(J(xy), m.mul(J(x), J(y)));
}

// ---- charts ----

/// Global chart: (chart of g1, chart of gamma1); the remaining two
/// components are recovered by factorization.
template <class M>
Eigen::VectorXd chart_of(const M& m, const GroupoidElement<M>& x) {
  const int n = m.n();
  Eigen::VectorXd c(2 * n);
  c.head(n) = m.chart_G(x.g1);
  c.tail(n) = m.chart_Gs(x.gamma1);
  return c;
}

template <class M>
GroupoidElement<M> from_chart(const M& m, const Eigen::VectorXd& c) {
  const int n = m.n();
  return make(m, m.unchart_G(Eigen::VectorXd(c.head(n))),
              m.unchart_Gs(Eigen::VectorXd(c.tail(n))));
}

// ---- momentum identity ----

/// Mixed-frame value of the fundamental vector field of the left G-action
/// x -> (h g1, gamma1, dressed data): the g1 slot moves by Ad_{g1^-1} X in
/// the left frame, the gamma1 slot is frozen.
template <class M>
Eigen::VectorXd momentum_lhs_mixed(const M& m, const GroupoidElement<M>& x,
                                   const Eigen::VectorXd& X) {
  const int n = m.n();
  Eigen::VectorXd s = Eigen::VectorXd::Zero(2 * n);
  s.head(n) = X;
  Eigen::VectorXd full = m.adjoint_matrix(m.embed(m.inv(x.g1))) * s;
  Eigen::VectorXd v = Eigen::VectorXd::Zero(2 * n);
  v.head(n) = full.head(n);
  return v;
}

/// Same vector field, differentiated through the chart.
template <class M>
Eigen::VectorXd momentum_lhs_chart_fd(const M& m, const GroupoidElement<M>& x,
                                      const Eigen::VectorXd& X,
                                      double h = 1e-5) {
  const int n = m.n();
  auto at = [&](double t) {
    return m.chart_G(m.mul(m.exp_G(Eigen::VectorXd(t * X)), x.g1));
  };
  // Fourth-order stencil; see fd_jacobian.
  Eigen::VectorXd D1 = m.chart_G_diff(at(h), at(-h)) / (2.0 * h);
  Eigen::VectorXd D2 = m.chart_G_diff(at(2.0 * h), at(-2.0 * h)) / (4.0 * h);
  Eigen::VectorXd v = Eigen::VectorXd::Zero(2 * n);
  v.head(n) = (4.0 * D1 - D2) / 3.0;
  return v;
}

/// Hamiltonian side: -pi_plus^sharp of the pullback along J of the
/// right-invariant form <X, .> on G*, all in chart coordinates.
template <class M>
Eigen::VectorXd momentum_rhs_chart(const M& m, const GroupoidElement<M>& x,
                                   const Eigen::VectorXd& X, double h = 1e-5) {
  const int n = m.n();
  Eigen::MatrixXd R = double_ops::frame_jacobian(
      m, double_ops::Side::Gstar, double_ops::Triv::right,
      m.chart_Gs(x.gamma2));
  Eigen::VectorXd theta = R.transpose() * X;

  Eigen::VectorXd c0 = chart_of(m, x);
  Eigen::MatrixXd JJ(n, 2 * n);
  for (int a = 0; a < 2 * n; ++a) {
    // Fourth-order stencil over realized steps; see fd_jacobian.
    const double x1p = c0[a] + h, x1m = c0[a] - h;
    const double x2p = c0[a] + 2.0 * h, x2m = c0[a] - 2.0 * h;
    auto at = [&](double xa) {
      Eigen::VectorXd c = c0;
      c[a] = xa;
      return Eigen::VectorXd(m.chart_Gs(J(from_chart(m, c))));
    };
    Eigen::VectorXd D1 = m.chart_Gs_diff(at(x1p), at(x1m)) / (x1p - x1m);
    Eigen::VectorXd D2 = m.chart_Gs_diff(at(x2p), at(x2m)) / (x2p - x2m);
    JJ.col(a) = (4.0 * D1 - D2) / 3.0;
  }
  Eigen::VectorXd mu = JJ.transpose() * theta;
  return -tensors::pi_plus_chart(m, x.g1, x.gamma1) * mu;
}

template <class M>
double momentum_identity_defect(const M& m, const GroupoidElement<M>& x,
                                const Eigen::VectorXd& X, double h = 1e-5) {
  Eigen::VectorXd lhs = momentum_lhs_chart_fd(m, x, X, h);
  Eigen::VectorXd rhs = momentum_rhs_chart(m, x, X, h);
  return (lhs - rhs).template lpNorm<Eigen::Infinity>();
}

/// Consistency of the closed-form frame expression of the fundamental
/// field with its finite-difference chart expression.
template <class M>
double momentum_closed_form_defect(const M& m, const GroupoidElement<M>& x,
                                   const Eigen::VectorXd& X, double h = 1e-5) {
  Eigen::MatrixXd Mfr = tensors::mixed_frame_jacobian(m, x.g1, x.gamma1);
  Eigen::VectorXd closed =
      Mfr.colPivHouseholderQr().solve(momentum_lhs_mixed(m, x, X));
  Eigen::VectorXd fd = momentum_lhs_chart_fd(m, x, X, h);
  return (closed - fd).template lpNorm<Eigen::Infinity>();
}

// ---- Poisson properties of the structure maps ----

template <class M>
double source_poisson_defect(const M& m, const GroupoidElement<M>& x) {
  const int n = m.n();
  Eigen::MatrixXd ppc = tensors::pi_plus_chart(m, x.g1, x.gamma1);
  Eigen::MatrixXd pg = tensors::pi_G_chart(m, x.g1);
  return max_norm(Eigen::MatrixXd(ppc.topLeftCorner(n, n) - pg));
}

template <class M>
double target_poisson_defect(const M& m, const GroupoidElement<M>& x) {
  auto F = [&](const Eigen::VectorXd& c) {
    return m.chart_G(target_G(from_chart(m, c)));
  };
  auto diff = [&](const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    return m.chart_G_diff(a, b);
  };
  return tensors::pushforward_defect(F, chart_of(m, x),
                                     tensors::pi_plus_chart(m, x.g1, x.gamma1),
                                     tensors::pi_G_chart(m, x.g2), -1.0, 1e-5,
                                     diff);
}

template <class M>
double J_anti_poisson_defect(const M& m, const GroupoidElement<M>& x) {
  auto F = [&](const Eigen::VectorXd& c) {
    return m.chart_Gs(J(from_chart(m, c)));
  };
  auto diff = [&](const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    return m.chart_Gs_diff(a, b);
  };
  return tensors::pushforward_defect(
      F, chart_of(m, x), tensors::pi_plus_chart(m, x.g1, x.gamma1),
      tensors::pi_Gstar_chart(m, x.gamma2), -1.0, 1e-5, diff);
}

template <class M>
nlohmann::json to_json(const M& m, const GroupoidElement<M>& x) {
  return nlohmann::json{{"g1", m.json_G(x.g1)},
                        {"gamma1", m.json_Gs(x.gamma1)},
                        {"gamma2", m.json_Gs(x.gamma2)},
                        {"g2", m.json_G(x.g2)},
                        {"omega_residual", x.omega_residual}};
}

}  // namespace plg::groupoid
