#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <random>
#include <stdexcept>
#include <string>

namespace plg {

using cplx = std::complex<double>;

/// Largest absolute entry; zero for empty matrices.
inline double max_norm(const Eigen::MatrixXd& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

inline double max_norm(const Eigen::MatrixXcd& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

/// Order of a two-sided factorization of a double group element:
/// G_Gstar means d = g.gamma, Gstar_G means d = gamma.g.
enum class Order { G_Gstar, Gstar_G };

inline const char* to_string(Order o) {
  return o == Order::G_Gstar ? "G_Gstar" : "Gstar_G";
}

/// Raised where a factorization is required but the element lies outside the
/// factorizable locus. The margin (the quantity whose positivity is
/// equivalent to factorizability) is carried along for diagnostics.
class NotFactorizable : public std::runtime_error {
 public:
  NotFactorizable(double margin, Order order)
      : std::runtime_error(std::string("element not factorizable in order ") +
                           plg::to_string(order) + " (margin " +
                           std::to_string(margin) + ")"),
        margin(margin),
        order(order) {}
  double margin;
  Order order;
};

class NotComposable : public std::runtime_error {
 public:
  explicit NotComposable(double mismatch)
      : std::runtime_error("groupoid elements not composable (edge mismatch " +
                           std::to_string(mismatch) + ")"),
        mismatch(mismatch) {}
  double mismatch;
};

class AnchorMismatch : public std::runtime_error {
 public:
  explicit AnchorMismatch(double mismatch)
      : std::runtime_error("moment anchors disagree (mismatch " +
                           std::to_string(mismatch) + ")"),
        mismatch(mismatch) {}
  double mismatch;
};

/// Signals that a matrix claimed to lie in the span of the double's basis
/// failed to re-expand within tolerance.
class ExpansionError : public std::runtime_error {
 public:
  explicit ExpansionError(double residual)
      : std::runtime_error("basis re-expansion residual " +
                           std::to_string(residual)),
        residual(residual) {}
  double residual;
};

/// Deterministic uniform sampler. mt19937_64 output is standard-defined; the
/// [0,1) mapping is done here so seeded reports do not depend on the standard
/// library's distribution internals.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  double uniform(double a, double b) {
    const double u = static_cast<double>(state_() >> 11) * 0x1.0p-53;
    return a + (b - a) * u;
  }
  double sym(double r) { return uniform(-r, r); }
  std::uint64_t raw() { return state_(); }

 private:
  std::mt19937_64 state_;
};

/// Fourth-order central finite differences, base step h, with an optional
/// output difference (used to subtract angle-valued chart components on the
/// correct branch). The five-point stencil keeps truncation error harmless
/// even where the map's higher derivatives are large.
template <class F>
Eigen::MatrixXd fd_jacobian(
    F&& f, const Eigen::VectorXd& x, double h,
    const std::function<Eigen::VectorXd(const Eigen::VectorXd&,
                                        const Eigen::VectorXd&)>& diff = {}) {
  const Eigen::VectorXd f0 = f(x);
  Eigen::MatrixXd J(f0.size(), x.size());
  for (Eigen::Index a = 0; a < x.size(); ++a) {
    // Effective steps: divide by the realized coordinate differences, not
    // the nominal ones, so the rounding of x[a] +/- h drops out and linear
    // maps differentiate exactly.
    const double x1p = x[a] + h, x1m = x[a] - h;
    const double x2p = x[a] + 2.0 * h, x2m = x[a] - 2.0 * h;
    auto at = [&](double xa) {
      Eigen::VectorXd xt = x;
      xt[a] = xa;
      return f(xt);
    };
    const Eigen::VectorXd f1p = at(x1p), f1m = at(x1m);
    const Eigen::VectorXd f2p = at(x2p), f2m = at(x2m);
    const Eigen::VectorXd D1 =
        (diff ? diff(f1p, f1m) : Eigen::VectorXd(f1p - f1m)) / (x1p - x1m);
    const Eigen::VectorXd D2 =
        (diff ? diff(f2p, f2m) : Eigen::VectorXd(f2p - f2m)) / (x2p - x2m);
    J.col(a) = (4.0 * D1 - D2) / 3.0;
  }
  return J;
}

inline double wrap_angle(double a) {
  while (a > M_PI) a -= 2.0 * M_PI;
  while (a <= -M_PI) a += 2.0 * M_PI;
  return a;
}

}  // namespace plg
