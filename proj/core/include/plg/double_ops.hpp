#pragma once

#include <Eigen/Dense>

#include "plg/algebra.hpp"
#include "plg/common.hpp"
#include "plg/frame.hpp"

namespace plg::double_ops {

/// Matrix of a double-algebra vector in the model's representation.
template <class M>
typename M::Mat to_matrix(const M& m, const Eigen::VectorXd& coords) {
  const auto& basis = m.basis_d();
  typename M::Mat out =
      Eigen::MatrixXcd::Zero(basis[0].rows(), basis[0].cols());
  for (int i = 0; i < coords.size(); ++i) out += coords[i] * basis[i];
  return out;
}

/// Ad_d on the double: conjugate the matrix realization and re-expand.
template <class M>
algebra::DoubleVector ad_double(const M& m, const typename M::Mat& d,
                                const algebra::DoubleVector& u,
                                double tol = 1e-9) {
  typename M::Mat U = to_matrix(m, u.stacked());
  auto e = m.expand_d(d * U * d.inverse());
  if (e.residual > tol) throw ExpansionError(e.residual);
  return algebra::DoubleVector::from_stacked(e.coords);
}

enum class Side { G, Gstar };
enum class Triv { left, right };

/// Jacobian of the frame trivialization: columns are the frame coordinates
/// of the velocity obtained by varying one chart coordinate. v_frame =
/// Jfr * xdot. Computed by fourth-order central differences on
/// embed(unchart(.)).
template <class M>
Eigen::MatrixXd frame_jacobian(const M& m, Side side, Triv triv,
                               const Eigen::VectorXd& x, double h = 1e-5) {
  const int n = m.n();
  auto F = [&](const Eigen::VectorXd& c) -> typename M::Mat {
    if (side == Side::G) return m.embed(m.unchart_G(c));
    return m.embed(m.unchart_Gs(c));
  };
  typename M::Mat F0inv = F(x).inverse();
  Eigen::MatrixXd J(n, x.size());
  for (int a = 0; a < x.size(); ++a) {
    // Realized steps in place of nominal ones; see fd_jacobian.
    const double x1p = x[a] + h, x1m = x[a] - h;
    const double x2p = x[a] + 2.0 * h, x2m = x[a] - 2.0 * h;
    auto at = [&](double xa) -> typename M::Mat {
      Eigen::VectorXd xt = x;
      xt[a] = xa;
      return F(xt);
    };
    typename M::Mat D1 = (at(x1p) - at(x1m)) / (x1p - x1m);
    typename M::Mat D2 = (at(x2p) - at(x2m)) / (x2p - x2m);
    typename M::Mat dF = (4.0 * D1 - D2) / 3.0;
    typename M::Mat v =
        triv == Triv::left ? typename M::Mat(F0inv * dF) : typename M::Mat(dF * F0inv);
    Eigen::VectorXd coords = m.expand_d(v).coords;
    J.col(a) = side == Side::G ? coords.head(n) : coords.tail(n);
  }
  return J;
}

/// Bivector conversion frame -> chart given the frame Jacobian Jfr of the
/// same point: Pi_chart = Jfr^{-1} Pi_frame Jfr^{-T}.
inline Eigen::MatrixXd bivector_to_chart(const Eigen::MatrixXd& pi_frame,
                                         const Eigen::MatrixXd& jfr) {
  Eigen::MatrixXd ji = jfr.inverse();
  return ji * pi_frame * ji.transpose();
}

/// Covector conversion frame -> chart: omega_chart = Jfr^T omega_frame.
inline Eigen::VectorXd covector_to_chart(const Eigen::VectorXd& omega_frame,
                                         const Eigen::MatrixXd& jfr) {
  return jfr.transpose() * omega_frame;
}

}  // namespace plg::double_ops
