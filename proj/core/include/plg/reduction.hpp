#pragma once

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <nlohmann/json.hpp>
#include <stdexcept>

#include "plg/algebra.hpp"
#include "plg/common.hpp"
#include "plg/dressing.hpp"
#include "plg/groupoid.hpp"
#include "plg/tensors.hpp"

namespace plg::reduction {

/// 𝔥 together with its annihilator in 𝔤*. Coisotropy of H is equivalent to
/// h_perp being a subalgebra; the stronger Poisson-subgroup property to it
/// being an ideal.
struct CoisotropicSubgroupData {
  algebra::SubspaceData h;
  algebra::SubspaceData h_perp;
  bool is_poisson_subgroup = false;
};

template <class M>
CoisotropicSubgroupData subgroup_data(const M& m, double tol = 1e-9) {
  CoisotropicSubgroupData out;
  out.h.parent_dim = m.n();
  Eigen::MatrixXd hb = m.h_basis();
  for (int j = 0; j < hb.cols(); ++j) out.h.basis.push_back(hb.col(j));
  out.h_perp = algebra::annihilator(out.h);
  const auto& bial = m.bialgebra();
  auto sub_h = algebra::is_subalgebra(bial.g, out.h, tol);
  auto sub_perp = algebra::is_subalgebra(bial.g_star, out.h_perp, tol);
  if (!sub_h.is_subalgebra)
    throw std::logic_error("subgroup_data: h is not a subalgebra");
  if (!sub_perp.is_subalgebra)
    throw std::logic_error("subgroup_data: h_perp is not a subalgebra");
  out.is_poisson_subgroup =
      algebra::is_ideal(bial.g_star, out.h_perp, tol).is_subalgebra;
  return out;
}

/// Class of J(x) in G*/H-perp.
template <class M>
Eigen::VectorXd J_H(const M& m, const groupoid::GroupoidElement<M>& x) {
  return m.class_label(x.gamma2);
}

template <class M>
double level_residual(const M& m, const groupoid::GroupoidElement<M>& x) {
  return m.unit_class_residual(x.gamma2);
}

template <class M>
bool level_set_contains(const M& m, const groupoid::GroupoidElement<M>& x,
                        double tol = 1e-9) {
  return level_residual(m, x) <= tol;
}

/// Left action of H on the unit level set:
/// (h g1, gamma1, h-dressed gamma2, companion * g2).
template <class M>
groupoid::GroupoidElement<M> h_act(const M& m, const typename M::GroupPoint& h,
                                   const groupoid::GroupoidElement<M>& x,
                                   double tol = 1e-9) {
  if (m.h_residual(h) > 1e-7)
    throw std::invalid_argument("h_act: h is not in the subgroup");
  if (!level_set_contains(m, x, tol))
    throw std::logic_error("h_act: element is off the unit level set");
  typename M::DualGroupPoint dressed = dressing::dress_left(m, h, x.gamma2);
  typename M::GroupPoint companion = dressing::dress_right(m, h, x.gamma2);
  return groupoid::element(m, m.mul(h, x.g1), x.gamma1, dressed,
                           m.mul(companion, x.g2), 1e-6);
}

/// The reduced groupoid element: a canonical level-set representative
/// (g1 is the value of the base section at z) together with its base point.
template <class M>
struct ReducedElement {
  groupoid::GroupoidElement<M> rep;
  Eigen::VectorXd z;
};

/// Shift moving x.g1 onto the base section over its coset; lands in H.
template <class M>
typename M::GroupPoint canonical_shift(const M& m,
                                       const typename M::GroupPoint& g) {
  return m.mul(m.base_section(m.base_chart(g)), m.inv(g));
}

template <class M>
ReducedElement<M> reduce(const M& m, const groupoid::GroupoidElement<M>& x,
                         double tol = 1e-9) {
  if (!level_set_contains(m, x, tol))
    throw std::logic_error("reduce: element is off the unit level set (" +
                           std::to_string(level_residual(m, x)) + ")");
  typename M::GroupPoint h0 = canonical_shift(m, x.g1);
  typename M::GroupPoint h = m.h_exp(m.h_log(h0));  // snap exactly into H
  groupoid::GroupoidElement<M> rep = h_act(m, h, x, tol);
  return ReducedElement<M>{rep, m.base_chart(rep.g1)};
}

/// Reduced element from its natural coordinates: base point z and the
/// h-perp exponential coordinates s of gamma2. The missing components are
/// recovered by factorizing gamma2^-1 g1 in the opposite order.
template <class M>
ReducedElement<M> reduced_from_chart(const M& m,
                                     const CoisotropicSubgroupData& sub,
                                     const Eigen::VectorXd& z,
                                     const Eigen::VectorXd& s) {
  typename M::GroupPoint g1 = m.base_section(z);
  Eigen::VectorXd xi = sub.h_perp.basis_matrix() * s;
  typename M::DualGroupPoint gamma2 = m.exp_Gs(xi);
  auto f = dressing::factorize_or_throw(
      m, Eigen::MatrixXcd(m.embed(m.inv(gamma2)) * m.embed(g1)),
      Order::G_Gstar);
  groupoid::GroupoidElement<M> x =
      groupoid::element(m, g1, m.inv(f.gamma), gamma2, f.g);
  return reduce(m, x);
}

/// h-perp coordinates of gamma2 (inverse of the construction above).
template <class M>
Eigen::VectorXd hperp_coords(const M& m, const CoisotropicSubgroupData& sub,
                             const typename M::DualGroupPoint& gamma) {
  Eigen::MatrixXd P = sub.h_perp.basis_matrix();
  return P.colPivHouseholderQr().solve(m.log_Gs(gamma));
}

template <class M>
Eigen::VectorXd reduced_source(const ReducedElement<M>& a) {
  return a.z;
}

template <class M>
Eigen::VectorXd reduced_target(const M& m, const ReducedElement<M>& a) {
  return m.base_chart(a.rep.g2);
}

template <class M>
ReducedElement<M> reduced_unit(const M& m, const Eigen::VectorXd& z) {
  return reduce(m, groupoid::unit_G(m, m.base_section(z)));
}

template <class M>
ReducedElement<M> reduced_inverse(const M& m, const ReducedElement<M>& a) {
  return reduce(m, groupoid::inverse_G(m, a.rep));
}

/// Composition on classes: align the representatives with the unique
/// H-shift taking b's source leg onto a's target leg, multiply upstairs,
/// then canonicalize. Mismatched base points are rejected.
template <class M>
ReducedElement<M> reduced_mult(const M& m, const ReducedElement<M>& a,
                               const ReducedElement<M>& b,
                               double tol = 1e-8) {
  double base_gap = (reduced_target(m, a) - reduced_source(b))
                        .template lpNorm<Eigen::Infinity>();
  if (base_gap > tol) throw NotComposable(base_gap);
  typename M::GroupPoint h0 = m.mul(a.rep.g2, m.inv(b.rep.g1));
  if (m.h_residual(h0) > 1e-6) throw NotComposable(m.h_residual(h0));
  typename M::GroupPoint h = m.h_exp(m.h_log(h0));
  groupoid::GroupoidElement<M> lifted = h_act(m, h, b.rep, 1e-7);
  groupoid::GroupoidElement<M> xy =
      groupoid::mult_G(m, a.rep, lifted, 1e-6, 1e-6);
  return reduce(m, xy, 1e-7);
}

/// Distance between classes through their canonical representatives.
template <class M>
double reduced_dist(const M& m, const ReducedElement<M>& a,
                    const ReducedElement<M>& b) {
  double d = (a.z - b.z).template lpNorm<Eigen::Infinity>();
  d = std::max(d, m.dist_G(a.rep.g1, b.rep.g1));
  d = std::max(d, m.dist_Gs(a.rep.gamma1, b.rep.gamma1));
  d = std::max(d, m.dist_Gs(a.rep.gamma2, b.rep.gamma2));
  d = std::max(d, m.dist_G(a.rep.g2, b.rep.g2));
  return d;
}

/// Coisotropy of the unit level set. Two ingredients plus a membership
/// term: (i) conormal covectors (finite-difference gradients of the class
/// label of gamma2 through the chart) are mapped by pi_plus-sharp into the
/// kernel of those same gradients; (ii) the Hamiltonian fields of the
/// momentum components reproduce the H-action fundamental fields.
template <class M>
double coisotropy_defect(const M& m, const CoisotropicSubgroupData& sub,
                         const groupoid::GroupoidElement<M>& x,
                         double h = 1e-5) {
  const int n = m.n();
  const int k = m.h_dim();
  double defect = level_residual(m, x);

  Eigen::VectorXd c0 = groupoid::chart_of(m, x);
  Eigen::MatrixXd dphi(k, 2 * n);
  for (int a = 0; a < 2 * n; ++a) {
    // Fourth-order stencil over realized steps; see fd_jacobian.
    const double x1p = c0[a] + h, x1m = c0[a] - h;
    const double x2p = c0[a] + 2.0 * h, x2m = c0[a] - 2.0 * h;
    auto at = [&](double xa) {
      Eigen::VectorXd c = c0;
      c[a] = xa;
      return Eigen::VectorXd(m.class_label(groupoid::from_chart(m, c).gamma2));
    };
    Eigen::VectorXd D1 = (at(x1p) - at(x1m)) / (x1p - x1m);
    Eigen::VectorXd D2 = (at(x2p) - at(x2m)) / (x2p - x2m);
    dphi.col(a) = (4.0 * D1 - D2) / 3.0;
  }
  Eigen::MatrixXd ppc = tensors::pi_plus_chart(m, x.g1, x.gamma1);
  defect = std::max(defect, max_norm(Eigen::MatrixXd(dphi * ppc * dphi.transpose())));

  if (level_residual(m, x) <= 1e-7) {
    Eigen::MatrixXd hb = sub.h.basis_matrix();
    for (int j = 0; j < k; ++j) {
      auto moved = [&](double t) {
        Eigen::VectorXd tv = Eigen::VectorXd::Zero(k);
        tv[j] = t;
        return groupoid::chart_of(m, h_act(m, m.h_exp(tv), x, 1e-7));
      };
      auto vel = [&](double t) {
        Eigen::VectorXd cp = moved(t), cm = moved(-t);
        Eigen::VectorXd v(2 * n);
        v.head(n) = m.chart_G_diff(Eigen::VectorXd(cp.head(n)),
                                   Eigen::VectorXd(cm.head(n)));
        v.tail(n) = m.chart_Gs_diff(Eigen::VectorXd(cp.tail(n)),
                                    Eigen::VectorXd(cm.tail(n)));
        return Eigen::VectorXd(v / (2.0 * t));
      };
      Eigen::VectorXd v_act = (4.0 * vel(h) - vel(2.0 * h)) / 3.0;
      Eigen::VectorXd v_ham = groupoid::momentum_rhs_chart(m, x, hb.col(j), h);
      defect = std::max(
          defect, (v_act - v_ham).template lpNorm<Eigen::Infinity>());
    }
  }
  return defect;
}

/// Linear-algebra reduction of pi_plus at a level-set point: restrict the
/// symplectic form to the constraint tangent space, push it to the reduced
/// coordinates (z, s), and invert back to a bivector there.
template <class M>
Eigen::MatrixXd reduced_bivector(const M& m, const CoisotropicSubgroupData& sub,
                                 const ReducedElement<M>& a, double h = 1e-5) {
  const int n = m.n();
  const int k = m.h_dim();
  const groupoid::GroupoidElement<M>& x = a.rep;
  Eigen::VectorXd c0 = groupoid::chart_of(m, x);

  Eigen::MatrixXd W = tensors::pi_plus_chart(m, x.g1, x.gamma1).inverse();

  Eigen::MatrixXd dphi(k, 2 * n);
  const int rdim = m.base_dim() + (n - k);
  Eigen::MatrixXd dq(rdim, 2 * n);
  // Stacked constraint and reduced-coordinate values at a chart point, so one
  // stencil differentiates both maps.
  auto eval = [&](const Eigen::VectorXd& c) {
    auto x1 = groupoid::from_chart(m, c);
    Eigen::VectorXd out(k + rdim);
    out.head(k) = m.class_label(x1.gamma2);
    out.segment(k, m.base_dim()) = m.base_chart(x1.g1);
    out.tail(n - k) = hperp_coords(m, sub, x1.gamma2);
    return out;
  };
  for (int col = 0; col < 2 * n; ++col) {
    // Fourth-order stencil over realized steps; see fd_jacobian.
    const double x1p = c0[col] + h, x1m = c0[col] - h;
    const double x2p = c0[col] + 2.0 * h, x2m = c0[col] - 2.0 * h;
    auto at = [&](double xa) {
      Eigen::VectorXd c = c0;
      c[col] = xa;
      return eval(c);
    };
    const Eigen::VectorXd D1 = (at(x1p) - at(x1m)) / (x1p - x1m);
    const Eigen::VectorXd D2 = (at(x2p) - at(x2m)) / (x2p - x2m);
    const Eigen::VectorXd D = (4.0 * D1 - D2) / 3.0;
    dphi.col(col) = D.head(k);
    dq.col(col) = D.tail(rdim);
  }

  // Constraint tangent directions: kernel of dphi.
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(dphi,
                                        Eigen::ComputeFullU | Eigen::ComputeFullV);
  Eigen::MatrixXd K = svd.matrixV().rightCols(2 * n - k);

  Eigen::MatrixXd W_T = K.transpose() * W * K;
  Eigen::MatrixXd Mq = dq * K;
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(Mq);
  Eigen::MatrixXd Mq_pinv = cod.pseudoInverse();
  Eigen::MatrixXd W_red = Mq_pinv.transpose() * W_T * Mq_pinv;
  return W_red.inverse();
}

/// Defect of the statement that the reduced source map is Poisson onto the
/// coinduced base structure: in (z, s) coordinates the source is the
/// projection to z, so this compares the upper-left block.
template <class M>
double reduced_source_pushforward_defect(const M& m,
                                         const CoisotropicSubgroupData& sub,
                                         const ReducedElement<M>& a) {
  Eigen::MatrixXd pr = reduced_bivector(m, sub, a);
  Eigen::MatrixXd top = pr.topLeftCorner(m.base_dim(), m.base_dim());
  Eigen::MatrixXd disc = tensors::pi_base(m, a.z);
  return max_norm(Eigen::MatrixXd(top - disc));
}

/// Cotangent-chart covector at z through an arbitrary local section of the
/// quotient: the coadjoint transport (by the inverse section value) of the
/// exponential coordinates of gamma2, paired against the section's
/// coordinate velocities. gamma2 is first re-dressed by the H element
/// connecting the stored representative to the requested section.
template <class M, class Section>
Eigen::VectorXd cotangent_chart_with_section(const M& m,
                                             const ReducedElement<M>& a,
                                             Section section, double h = 1e-5) {
  const int n = m.n();
  typename M::GroupPoint gz = section(a.z);

  typename M::GroupPoint shift = m.mul(gz, m.inv(a.rep.g1));
  typename M::DualGroupPoint gamma =
      dressing::dress_left(m, m.h_exp(m.h_log(shift)), a.rep.gamma2);

  Eigen::VectorXd s = Eigen::VectorXd::Zero(2 * n);
  s.tail(n) = m.log_Gs(gamma);
  Eigen::VectorXd xi = (m.adjoint_matrix(m.embed(m.inv(gz))) * s).tail(n);

  Eigen::VectorXd omega(m.base_dim());
  for (int aix = 0; aix < m.base_dim(); ++aix) {
    Eigen::VectorXd zp = a.z, zm = a.z;
    zp[aix] += h;
    zm[aix] -= h;
    Eigen::MatrixXcd gmat = m.embed(gz);
    Eigen::MatrixXcd dg =
        (m.embed(section(zp)) - m.embed(section(zm))) / (2.0 * h);
    Eigen::VectorXd v =
        m.expand_d(Eigen::MatrixXcd(gmat.inverse() * dg)).coords.head(n);
    omega[aix] = xi.dot(v);
  }
  return omega;
}

template <class M>
Eigen::VectorXd cotangent_chart(const M& m, const ReducedElement<M>& a,
                                double h = 1e-5) {
  return cotangent_chart_with_section(
      m, a, [&](const Eigen::VectorXd& z) { return m.base_section(z); }, h);
}

/// Equivariance of the H-perp exponential: exp(Ad*_h xi) = h-dress of
/// exp(xi), for h in H and xi in h-perp.
template <class M>
double intertwining_defect(const M& m, const CoisotropicSubgroupData& sub,
                           const typename M::GroupPoint& h,
                           const Eigen::VectorXd& s) {
  const int n = m.n();
  Eigen::VectorXd xi = sub.h_perp.basis_matrix() * s;
  Eigen::VectorXd stacked = Eigen::VectorXd::Zero(2 * n);
  stacked.tail(n) = xi;
  Eigen::VectorXd coad = (m.adjoint_matrix(m.embed(h)) * stacked).tail(n);
  typename M::DualGroupPoint lhs = m.exp_Gs(coad);
  typename M::DualGroupPoint rhs = dressing::dress_left(m, h, m.exp_Gs(xi));
  return m.dist_Gs(lhs, rhs);
}

template <class M>
nlohmann::json to_json(const M& m, const ReducedElement<M>& a) {
  nlohmann::json z = nlohmann::json::array();
  for (int i = 0; i < a.z.size(); ++i) z.push_back(a.z[i]);
  nlohmann::json g2 = m.json_Gs(a.rep.gamma2);
  g2.erase("A");  // the class coordinate is pinned to the unit on the level set
  return nlohmann::json{
      {"z", z},
      {"gamma1", m.json_Gs(a.rep.gamma1)},
      {"gamma2", g2},
      {"residuals",
       {{"omega", a.rep.omega_residual},
        {"level", level_residual(m, a.rep)}}}};
}

}  // namespace plg::reduction
