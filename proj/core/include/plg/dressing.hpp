#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "plg/common.hpp"
#include "plg/tensors.hpp"

namespace plg::dressing {

template <class M>
struct Factorization {
  typename M::GroupPoint g;
  typename M::DualGroupPoint gamma;
  Order order;
  double margin;
};

/// Factorizes a double-group element, throwing NotFactorizable when the
/// requested order is not available. On success the reassembled product is
/// checked against the input; the tolerance is loosened near margin zero
/// where the factors are genuinely ill-conditioned.
template <class M>
Factorization<M> factorize_or_throw(const M& m, const Eigen::MatrixXcd& d,
                                    Order order) {
  typename M::FactorOutcome out = m.factorize(d, order);
  if (!out.result) throw NotFactorizable(out.margin, order);
  const auto& f = *out.result;
  Eigen::MatrixXcd rebuilt = (order == Order::G_Gstar)
                                 ? m.embed(f.g) * m.embed(f.gamma)
                                 : m.embed(f.gamma) * m.embed(f.g);
  double tol = 1e-10 * std::max(1.0, 1e-3 / out.margin);
  double residual = max_norm(Eigen::MatrixXcd(rebuilt - d));
  if (residual > tol)
    throw std::runtime_error("factorize: residual " + std::to_string(residual) +
                             " exceeds " + std::to_string(tol));
  return Factorization<M>{f.g, f.gamma, order, out.margin};
}

/// Left dressing action of G on G*: the G*-part of gamma <- g.
template <class M>
typename M::DualGroupPoint dress_left(const M& m,
                                      const typename M::GroupPoint& g,
                                      const typename M::DualGroupPoint& gamma) {
  auto f = factorize_or_throw(m, Eigen::MatrixXcd(m.embed(g) * m.embed(gamma)),
                              Order::Gstar_G);
  return f.gamma;
}

/// Companion right factor: g^gamma in g.gamma = (dress_left) (dress_right).
template <class M>
typename M::GroupPoint dress_right(const M& m, const typename M::GroupPoint& g,
                                   const typename M::DualGroupPoint& gamma) {
  auto f = factorize_or_throw(m, Eigen::MatrixXcd(m.embed(g) * m.embed(gamma)),
                              Order::Gstar_G);
  return f.g;
}

/// Dual dressing: gamma acting on g from the left, G-part first.
template <class M>
typename M::GroupPoint dress_left_dual(const M& m,
                                       const typename M::DualGroupPoint& gamma,
                                       const typename M::GroupPoint& g) {
  auto f = factorize_or_throw(m, Eigen::MatrixXcd(m.embed(gamma) * m.embed(g)),
                              Order::G_Gstar);
  return f.g;
}

template <class M>
typename M::DualGroupPoint dress_right_dual(const M& m,
                                            const typename M::DualGroupPoint& gamma,
                                            const typename M::GroupPoint& g) {
  auto f = factorize_or_throw(m, Eigen::MatrixXcd(m.embed(gamma) * m.embed(g)),
                              Order::G_Gstar);
  return f.gamma;
}

/// Infinitesimal dressing vector field on G* generated by X in 𝔤,
/// left-trivialized: p_g*(Ad_{gammabar^-1} X).
template <class M>
Eigen::VectorXd dressing_field_on_Gstar(const M& m, const Eigen::VectorXd& X,
                                        const typename M::DualGroupPoint& gamma) {
  const int n = m.n();
  Eigen::VectorXd stacked = Eigen::VectorXd::Zero(2 * n);
  stacked.head(n) = X;
  return (m.adjoint_matrix(m.embed(m.inv(gamma))) * stacked).tail(n);
}

/// Infinitesimal dressing vector field on G generated by xi in 𝔤*,
/// right-trivialized: p_g(Ad_gbar xi).
template <class M>
Eigen::VectorXd dressing_field_on_G(const M& m, const Eigen::VectorXd& xi,
                                    const typename M::GroupPoint& g) {
  const int n = m.n();
  Eigen::VectorXd stacked = Eigen::VectorXd::Zero(2 * n);
  stacked.tail(n) = xi;
  return (m.adjoint_matrix(m.embed(g)) * stacked).head(n);
}

/// Defect of the identity (dressing field of X at gamma) = pi_G*(gamma)^sharp
/// applied to X, after moving the left-trivialized field into the right frame.
template <class M>
double sharp_form_defect(const M& m, const Eigen::VectorXd& X,
                         const typename M::DualGroupPoint& gamma) {
  const int n = m.n();
  Eigen::VectorXd left = dressing_field_on_Gstar(m, X, gamma);
  Eigen::MatrixXd T =
      m.adjoint_matrix(m.embed(gamma)).bottomRightCorner(n, n);
  Eigen::VectorXd right = T * left;
  Eigen::VectorXd via_pi = tensors::pi_Gstar(m, gamma).m * X;
  return (right - via_pi).template lpNorm<Eigen::Infinity>();
}

enum class Termination { Completed, Escaped, StepLimit };

inline std::string to_string(Termination t) {
  switch (t) {
    case Termination::Completed: return "completed";
    case Termination::Escaped: return "escaped";
    case Termination::StepLimit: return "step_limit";
  }
  return "?";
}

template <class M>
struct FlowTrace {
  std::vector<double> times;
  std::vector<typename M::GroupPoint> points;
  std::vector<double> margins;
  Termination termination = Termination::Completed;
  double t_escape = 0.0;           // meaningful when termination == Escaped
  double method_disagreement = 0;  // exact curve vs integrated curve
};

namespace detail {

/// Exact dressing trajectory: g(t) and the factorization margin at t.
template <class M>
struct ExactCurve {
  const M& m;
  Eigen::MatrixXcd d0;  // embed(start)

  ExactCurve(const M& model, const typename M::GroupPoint& start)
      : m(model), d0(model.embed(start)) {}

  typename M::FactorOutcome at(double t, const Eigen::VectorXd& xi) const {
    Eigen::MatrixXcd d = d0 * m.embed(m.exp_Gs(Eigen::VectorXd(t * xi)));
    return m.factorize(d, Order::Gstar_G);
  }

  double margin(double t, const Eigen::VectorXd& xi) const {
    return at(t, xi).margin;
  }
};

/// One classical RK4 step of D' = v(D)^wedge D acting on the embedded
/// matrix, where v is the right-trivialized dressing field. The stages stay
/// inside the matrix algebra spanned by the double, so the adjoint expansion
/// remains exact between renormalizations.
template <class M>
Eigen::MatrixXcd rk4_step(const M& m, const Eigen::VectorXd& xi,
                          const Eigen::MatrixXcd& D, double h) {
  const int n = m.n();
  auto field = [&](const Eigen::MatrixXcd& state) -> Eigen::MatrixXcd {
    Eigen::VectorXd stacked = Eigen::VectorXd::Zero(2 * n);
    stacked.tail(n) = xi;
    Eigen::VectorXd v = (m.adjoint_matrix(state) * stacked).head(n);
    Eigen::VectorXd full = Eigen::VectorXd::Zero(2 * n);
    full.head(n) = v;
    return double_ops::to_matrix(m, full) * state;
  };
  Eigen::MatrixXcd k1 = field(D);
  Eigen::MatrixXcd k2 = field(Eigen::MatrixXcd(D + 0.5 * h * k1));
  Eigen::MatrixXcd k3 = field(Eigen::MatrixXcd(D + 0.5 * h * k2));
  Eigen::MatrixXcd k4 = field(Eigen::MatrixXcd(D + h * k3));
  return D + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

}  // namespace detail

/// Integrates the dressing flow of xi through start. Trace points come from
/// the exact factorized curve; a Runge-Kutta integration of the same field
/// runs alongside while it stays well-conditioned and the largest deviation
/// over the healthy region is reported as method_disagreement. Escape in
/// finite time is detected from the factorization margin and bracketed by
/// bisection.
template <class M>
FlowTrace<M> flow(const M& m, const typename M::GroupPoint& start,
                  const Eigen::VectorXd& xi, double t_end, double dt,
                  long max_steps = 2000000) {
  if (dt <= 0) throw std::invalid_argument("flow: dt must be positive");
  FlowTrace<M> trace;
  detail::ExactCurve<M> curve(m, start);

  constexpr double margin_floor = 1e-8;
  constexpr double healthy_margin = 0.05;
  constexpr double renorm_tol = 1e-6;

  // Time runs along the signed ray toward t_end; u is the unsigned offset.
  const double dir = (t_end < 0) ? -1.0 : 1.0;
  const double span = std::abs(t_end);

  Eigen::MatrixXcd D = m.embed(start);
  bool rk_alive = true;

  long n_steps = static_cast<long>(std::ceil(span / dt - 1e-12));
  bool limited = n_steps > max_steps;
  if (limited) n_steps = max_steps;

  double u_last_good = 0.0;
  bool escaped = false;

  for (long k = 0; k <= n_steps; ++k) {
    double u = std::min(k * dt, span);
    auto out = curve.at(dir * u, xi);
    if (!out.result || out.margin < margin_floor) {
      escaped = true;
      break;
    }
    trace.times.push_back(dir * u);
    trace.points.push_back(out.result->g);
    trace.margins.push_back(out.margin);
    u_last_good = u;

    if (rk_alive && out.margin >= healthy_margin) {
      double d = m.dist_G(out.result->g, m.group_from_matrix(D, 1e-3));
      trace.method_disagreement = std::max(trace.method_disagreement, d);
    }

    if (k < n_steps && rk_alive) {
      double u_next = std::min((k + 1) * dt, span);
      D = detail::rk4_step(m, xi, D, dir * (u_next - u));
      auto snapped = m.factorize(D, Order::Gstar_G);
      if (!snapped.result || snapped.margin < healthy_margin) {
        rk_alive = false;
      } else {
        Eigen::MatrixXcd renorm = m.embed(snapped.result->g);
        if (max_norm(Eigen::MatrixXcd(renorm - D)) > renorm_tol)
          rk_alive = false;
        else
          D = renorm;
      }
    }
  }

  if (escaped) {
    // Bracket the margin sign change; the trigger fires strictly before the
    // singular time, so scan onward from the last good sample. The bracket
    // may exceed |t_end|: the singular time is still the honest answer.
    double lo = u_last_good;
    double hi = lo;
    double probe = lo;
    for (long guard = 0; guard < 100000; ++guard) {
      probe += dt;
      double mg = curve.margin(dir * probe, xi);
      if (mg <= 0.0) {
        hi = probe;
        break;
      }
      lo = probe;
    }
    if (hi <= lo) hi = probe;  // margin never crossed; report the scan edge
    while (hi - lo > 1e-7) {
      double mid = 0.5 * (lo + hi);
      if (curve.margin(dir * mid, xi) > 0.0)
        lo = mid;
      else
        hi = mid;
    }
    trace.termination = Termination::Escaped;
    trace.t_escape = dir * 0.5 * (lo + hi);
  } else if (limited) {
    trace.termination = Termination::StepLimit;
  } else {
    trace.termination = Termination::Completed;
  }
  return trace;
}

/// CSV serialization of an SU(1,1) flow trace: one row per sample, then a
/// trailing comment carrying the termination reason.
template <class M>
void write_flow_csv(const M& m, const FlowTrace<M>& trace, std::ostream& os) {
  os << "t,re_alpha,im_alpha,re_beta,im_beta,margin\n";
  char buf[160];
  for (size_t k = 0; k < trace.times.size(); ++k) {
    const auto& g = trace.points[k];
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                  trace.times[k], g.alpha.real(), g.alpha.imag(),
                  g.beta.real(), g.beta.imag(), trace.margins[k]);
    os << buf;
  }
  os << "# termination=" << to_string(trace.termination);
  if (trace.termination == Termination::Escaped) {
    std::snprintf(buf, sizeof(buf), "(t_escape=%.9g)", trace.t_escape);
    os << buf;
  }
  os << "\n";
}

}  // namespace plg::dressing
