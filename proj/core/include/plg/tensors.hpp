#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "plg/common.hpp"
#include "plg/double_ops.hpp"
#include "plg/frame.hpp"

namespace plg::tensors {

/// Poisson tensor of G at g, right-trivialized, indexed by the dual basis:
/// entry (i,j) = -<p_g Ad_{gbar^-1} f^i, p_g* Ad_{gbar^-1} f^j>.
/// The formula is antisymmetric only up to roundoff, so the result is
/// projected onto skew matrices before it hits the BivectorMatrix guard.
template <class M>
BivectorMatrix pi_G(const M& m, const typename M::GroupPoint& g) {
  const int n = m.n();
  Eigen::MatrixXd A = m.adjoint_matrix(m.embed(m.inv(g)));
  Eigen::MatrixXd pi(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      pi(i, j) = -A.col(n + i).head(n).dot(A.col(n + j).tail(n));
  Eigen::MatrixXd skew = 0.5 * (pi - pi.transpose());
  return BivectorMatrix(FrameTag::right_trivialized, skew);
}

/// Poisson tensor of G* at gamma, right-trivialized, indexed by the 𝔤
/// basis: entry (i,j) = +<p_g Ad_{gammabar^-1} e_i, p_g* Ad_{gammabar^-1} e_j>.
template <class M>
BivectorMatrix pi_Gstar(const M& m, const typename M::DualGroupPoint& gamma) {
  const int n = m.n();
  Eigen::MatrixXd A = m.adjoint_matrix(m.embed(m.inv(gamma)));
  Eigen::MatrixXd pi(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      pi(i, j) = A.col(i).head(n).dot(A.col(j).tail(n));
  Eigen::MatrixXd skew = 0.5 * (pi - pi.transpose());
  return BivectorMatrix(FrameTag::right_trivialized, skew);
}

/// Left-trivialized variant of pi_G (transport by Ad_{g^-1} on the 𝔤 block).
template <class M>
BivectorMatrix pi_G_left(const M& m, const typename M::GroupPoint& g) {
  const int n = m.n();
  Eigen::MatrixXd Ainv = m.adjoint_matrix(m.embed(m.inv(g)));
  Eigen::MatrixXd T = Ainv.topLeftCorner(n, n);
  Eigen::MatrixXd pi = T * pi_G(m, g).m * T.transpose();
  Eigen::MatrixXd skew = 0.5 * (pi - pi.transpose());
  return BivectorMatrix(FrameTag::left_trivialized, skew);
}

namespace detail {

/// Both expansions of the double's symplectic bivector at (g, gamma) in the
/// mixed frame l_{gbar^-1} x r_{gammabar^-1}: first by block decomposition
/// through the factor tensors, second pairing by pairing.
template <class M>
std::pair<Eigen::MatrixXd, Eigen::MatrixXd> pi_plus_routes(
    const M& m, const typename M::GroupPoint& g,
    const typename M::DualGroupPoint& gamma) {
  const int n = m.n();

  Eigen::MatrixXd Ag = m.adjoint_matrix(m.embed(g));
  Eigen::MatrixXd Aginv = m.adjoint_matrix(m.embed(m.inv(g)));
  Eigen::MatrixXd Bg = m.adjoint_matrix(m.embed(gamma));
  Eigen::MatrixXd Bginv = m.adjoint_matrix(m.embed(m.inv(gamma)));

  Eigen::MatrixXd p2 = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Eigen::VectorXd u = Ag.col(n + j);
      Eigen::VectorXd proj = Eigen::VectorXd::Zero(2 * n);
      proj.head(n) = u.head(n);
      p2(i, j) = -(Aginv * proj)(i);

      Eigen::VectorXd v = Bginv.col(j);
      Eigen::VectorXd projv = Eigen::VectorXd::Zero(2 * n);
      projv.tail(n) = v.tail(n);
      p2(n + i, n + j) = (Bg * projv)(n + i);
    }
  p2.topRightCorner(n, n) = -Eigen::MatrixXd::Identity(n, n);
  p2.bottomLeftCorner(n, n) = Eigen::MatrixXd::Identity(n, n);

  Eigen::MatrixXd p1 = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  p1.topLeftCorner(n, n) = pi_G_left(m, g).m;
  p1.bottomRightCorner(n, n) = pi_Gstar(m, gamma).m;
  p1.topRightCorner(n, n) = -Eigen::MatrixXd::Identity(n, n);
  p1.bottomLeftCorner(n, n) = Eigen::MatrixXd::Identity(n, n);

  return {p1, p2};
}

}  // namespace detail

/// Disagreement between the two pi_plus expansions; a consistency target.
template <class M>
double pi_plus_mismatch(const M& m, const typename M::GroupPoint& g,
                        const typename M::DualGroupPoint& gamma) {
  auto [p1, p2] = detail::pi_plus_routes(m, g, gamma);
  return max_norm(Eigen::MatrixXd(p1 - p2));
}

/// The symplectic bivector of the double at (g, gamma), 2n x 2n over
/// covectors ordered (f^1..f^n, e_1..e_n). The two expansions must agree to
/// tol relative to the tensor's own magnitude (entries grow like the fourth
/// power of the point size); throws std::runtime_error otherwise.
template <class M>
BivectorMatrix pi_plus(const M& m, const typename M::GroupPoint& g,
                       const typename M::DualGroupPoint& gamma,
                       double tol = 1e-10) {
  auto [p1, p2] = detail::pi_plus_routes(m, g, gamma);
  double mismatch = max_norm(Eigen::MatrixXd(p1 - p2));
  double scale = std::max(1.0, std::max(max_norm(p1), max_norm(p2)));
  if (mismatch > tol * scale) {
    std::ostringstream os;
    os << "pi_plus: expansion mismatch " << mismatch;
    throw std::runtime_error(os.str());
  }
  Eigen::MatrixXd skew = 0.5 * (p2 - p2.transpose());
  return BivectorMatrix(FrameTag::mixed_lg_rgamma, skew);
}

inline FrameVector sharp(const BivectorMatrix& b, const FrameVector& covector) {
  if (covector.frame != b.frame)
    throw std::invalid_argument("sharp: frame mismatch (" +
                                to_string(b.frame) + " vs " +
                                to_string(covector.frame) + ")");
  if (covector.kind != VecKind::covector)
    throw std::invalid_argument("sharp: expected a covector");
  return FrameVector{b.frame, VecKind::vector,
                     Eigen::VectorXd(b.m * covector.coords)};
}

/// Multiplicativity of pi_G in right-trivialized frames:
/// Pi(gh) = Ad_g-transport of Pi(h) + Pi(g).
template <class M>
double multiplicativity_defect_G(const M& m, const typename M::GroupPoint& g,
                                 const typename M::GroupPoint& h) {
  const int n = m.n();
  Eigen::MatrixXd T = m.adjoint_matrix(m.embed(g)).topLeftCorner(n, n);
  Eigen::MatrixXd lhs = pi_G(m, m.mul(g, h)).m;
  Eigen::MatrixXd rhs = T * pi_G(m, h).m * T.transpose() + pi_G(m, g).m;
  return max_norm(Eigen::MatrixXd(lhs - rhs));
}

template <class M>
double multiplicativity_defect_Gstar(const M& m,
                                     const typename M::DualGroupPoint& a,
                                     const typename M::DualGroupPoint& b) {
  const int n = m.n();
  Eigen::MatrixXd T = m.adjoint_matrix(m.embed(a)).bottomRightCorner(n, n);
  Eigen::MatrixXd lhs = pi_Gstar(m, m.mul(a, b)).m;
  Eigen::MatrixXd rhs = T * pi_Gstar(m, b).m * T.transpose() + pi_Gstar(m, a).m;
  return max_norm(Eigen::MatrixXd(lhs - rhs));
}

/// Chart-frame tensors (used by every finite-difference pushforward check).
template <class M>
Eigen::MatrixXd pi_G_chart(const M& m, const typename M::GroupPoint& g) {
  Eigen::MatrixXd J = double_ops::frame_jacobian(m, double_ops::Side::G,
                                                 double_ops::Triv::right,
                                                 m.chart_G(g));
  return double_ops::bivector_to_chart(pi_G(m, g).m, J);
}

template <class M>
Eigen::MatrixXd pi_Gstar_chart(const M& m,
                               const typename M::DualGroupPoint& gamma) {
  Eigen::MatrixXd J = double_ops::frame_jacobian(m, double_ops::Side::Gstar,
                                                 double_ops::Triv::right,
                                                 m.chart_Gs(gamma));
  return double_ops::bivector_to_chart(pi_Gstar(m, gamma).m, J);
}

/// Jacobian of the mixed trivialization of the (g, gamma) chart of the
/// double: block diagonal, left frame on G, right frame on G*.
template <class M>
Eigen::MatrixXd mixed_frame_jacobian(const M& m,
                                     const typename M::GroupPoint& g,
                                     const typename M::DualGroupPoint& gamma) {
  const int n = m.n();
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  J.topLeftCorner(n, n) = double_ops::frame_jacobian(
      m, double_ops::Side::G, double_ops::Triv::left, m.chart_G(g));
  J.bottomRightCorner(n, n) = double_ops::frame_jacobian(
      m, double_ops::Side::Gstar, double_ops::Triv::right, m.chart_Gs(gamma));
  return J;
}

template <class M>
Eigen::MatrixXd pi_plus_chart(const M& m, const typename M::GroupPoint& g,
                              const typename M::DualGroupPoint& gamma) {
  return double_ops::bivector_to_chart(pi_plus(m, g, gamma).m,
                                       mixed_frame_jacobian(m, g, gamma));
}

/// ||J_F pi_src J_F^T - sign pi_dst|| with J_F a central finite-difference
/// Jacobian (base step h). diff_out handles angle-wrapped output charts.
using ChartMap = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;
using ChartDiff =
    std::function<Eigen::VectorXd(const Eigen::VectorXd&, const Eigen::VectorXd&)>;

inline double pushforward_defect(const ChartMap& F, const Eigen::VectorXd& x,
                                 const Eigen::MatrixXd& pi_src,
                                 const Eigen::MatrixXd& pi_dst, double sign,
                                 double h = 1e-5,
                                 const ChartDiff& diff_out = {}) {
  Eigen::MatrixXd J = fd_jacobian(F, x, h, diff_out);
  return max_norm(Eigen::MatrixXd(J * pi_src * J.transpose() - sign * pi_dst));
}

/// Coinduced bivector on the base H\G, pushed from an arbitrary point of
/// the fibre through the quotient chart. Well-definedness (independence of
/// the fibre point) is a verification target, not an assumption.
template <class M>
Eigen::MatrixXd pi_base_from(const M& m, const typename M::GroupPoint& g,
                             double h = 1e-5) {
  Eigen::VectorXd x = m.chart_G(g);
  Eigen::MatrixXd pi_chart = pi_G_chart(m, g);
  auto q = [&](const Eigen::VectorXd& c) {
    return Eigen::VectorXd(m.base_chart(m.unchart_G(c)));
  };
  Eigen::MatrixXd J = fd_jacobian(q, x, h);
  return J * pi_chart * J.transpose();
}

template <class M>
Eigen::MatrixXd pi_base(const M& m, const Eigen::VectorXd& z) {
  return pi_base_from(m, m.base_section(z));
}

/// Sign consistency between the group tensor and the dressing fields:
/// p_g(Ad_gbar xi) should equal -pi_G(g) applied to p_g*(Ad_gbar xi).
template <class M>
double dressing_sign_defect(const M& m, const Eigen::VectorXd& xi,
                            const typename M::GroupPoint& g) {
  const int n = m.n();
  Eigen::VectorXd stacked = Eigen::VectorXd::Zero(2 * n);
  stacked.tail(n) = xi;
  Eigen::VectorXd ad = m.adjoint_matrix(m.embed(g)) * stacked;
  Eigen::VectorXd v = ad.head(n);
  Eigen::VectorXd eta = ad.tail(n);
  return (v + pi_G(m, g).m * eta).template lpNorm<Eigen::Infinity>();
}

}  // namespace plg::tensors
