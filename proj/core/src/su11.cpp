#include "plg/su11.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>

namespace plg {

namespace {

const cplx I(0.0, 1.0);

Eigen::Matrix2cd m2(cplx a, cplx b, cplx c, cplx d) {
  Eigen::Matrix2cd m;
  m << a, b, c, d;
  return m;
}

double im_tr(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  return (a * b).trace().imag();
}

}  // namespace

Su11Model::Su11Model() {
  basis_.reserve(6);
  basis_.push_back(m2(I, 0, 0, -I));            // e0
  basis_.push_back(m2(0, 1, 1, 0));             // e1
  basis_.push_back(m2(0, I, -I, 0));            // e2
  basis_.push_back(m2(0.5, 0, 0, -0.5));        // f0
  basis_.push_back(m2(0, I, 0, 0));             // f1
  basis_.push_back(m2(0, -1, 0, 0));            // f2
  expander_ = BasisExpander(basis_);

  const int n = 3;
  bial_.g.dim = n;
  bial_.g.labels = {"e0", "e1", "e2"};
  bial_.g_star.dim = n;
  bial_.g_star.labels = {"f0", "f1", "f2"};
  bial_.g.c.assign(n, Eigen::MatrixXd::Zero(n, n));
  bial_.g_star.c.assign(n, Eigen::MatrixXd::Zero(n, n));

  const double tol = 1e-12;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Mat comm_e = basis_[i] * basis_[j] - basis_[j] * basis_[i];
      auto ee = expander_.expand(comm_e);
      if (ee.residual > tol || ee.coords.tail(n).lpNorm<Eigen::Infinity>() > tol)
        throw std::runtime_error("su11: g is not closed under the bracket");
      Mat comm_f = basis_[n + i] * basis_[n + j] - basis_[n + j] * basis_[n + i];
      auto ef = expander_.expand(comm_f);
      if (ef.residual > tol || ef.coords.head(n).lpNorm<Eigen::Infinity>() > tol)
        throw std::runtime_error("su11: g* is not closed under the bracket");
      for (int k = 0; k < n; ++k) {
        bial_.g.c[k](i, j) = ee.coords[k];
        bial_.g_star.c[k](i, j) = ef.coords[n + k];
      }
    }
  bial_.validate(tol);
  registration_checks();
}

void Su11Model::registration_checks() const {
  const int n = 3;
  const double tol = 1e-12;

  // Duality and isotropy of the split under Im tr.
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double d = im_tr(basis_[i], basis_[n + j]) - (i == j ? 1.0 : 0.0);
      if (std::abs(d) > tol)
        throw std::runtime_error("su11: basis duality check failed");
      if (std::abs(im_tr(basis_[i], basis_[j])) > tol ||
          std::abs(im_tr(basis_[n + i], basis_[n + j])) > tol)
        throw std::runtime_error("su11: isotropy check failed");
    }

  if (algebra::jacobi_defect(bial_.g) > tol ||
      algebra::jacobi_defect(bial_.g_star) > tol)
    throw std::runtime_error("su11: jacobi check failed");
  if (algebra::cocycle_defect(bial_) > tol)
    throw std::runtime_error("su11: cocycle check failed");
  if (algebra::pairing_invariance_defect(bial_) > tol)
    throw std::runtime_error("su11: pairing invariance check failed");

  // The coordinate bracket on the double must reproduce matrix commutators.
  for (int i = 0; i < 2 * n; ++i)
    for (int j = 0; j < 2 * n; ++j) {
      Mat comm = basis_[i] * basis_[j] - basis_[j] * basis_[i];
      auto e = expander_.expand(comm);
      Eigen::VectorXd ui = Eigen::VectorXd::Zero(2 * n);
      Eigen::VectorXd uj = Eigen::VectorXd::Zero(2 * n);
      ui[i] = 1.0;
      uj[j] = 1.0;
      auto predicted = algebra::double_bracket(
          bial_, algebra::DoubleVector::from_stacked(ui),
          algebra::DoubleVector::from_stacked(uj));
      if (e.residual > tol ||
          (predicted.stacked() - e.coords).lpNorm<Eigen::Infinity>() > tol)
        throw std::runtime_error("su11: double bracket check failed");
    }
}

Su11Model::Mat Su11Model::embed(const GroupPoint& g) const {
  return m2(g.alpha, g.beta, std::conj(g.beta), std::conj(g.alpha));
}

Su11Model::Mat Su11Model::embed(const DualGroupPoint& gamma) const {
  return m2(gamma.A, gamma.N, 0, 1.0 / gamma.A);
}

Su11Model::GroupPoint Su11Model::mul(const GroupPoint& a,
                                     const GroupPoint& b) const {
  return {a.alpha * b.alpha + a.beta * std::conj(b.beta),
          a.alpha * b.beta + a.beta * std::conj(b.alpha)};
}

Su11Model::GroupPoint Su11Model::inv(const GroupPoint& a) const {
  return {std::conj(a.alpha), -a.beta};
}

Su11Model::DualGroupPoint Su11Model::mul(const DualGroupPoint& a,
                                         const DualGroupPoint& b) const {
  return {a.A * b.A, a.A * b.N + a.N / b.A};
}

Su11Model::DualGroupPoint Su11Model::inv(const DualGroupPoint& a) const {
  return {1.0 / a.A, -a.N};
}

Su11Model::GroupPoint Su11Model::renormalized(const GroupPoint& g) const {
  double m = std::norm(g.alpha) - std::norm(g.beta);
  if (m <= 0.0)
    throw std::invalid_argument("su11: point has non-positive determinant");
  double s = 1.0 / std::sqrt(m);
  return {g.alpha * s, g.beta * s};
}

Su11Model::DualGroupPoint Su11Model::renormalized(
    const DualGroupPoint& gamma) const {
  if (gamma.A <= 0.0)
    throw std::invalid_argument("su11: dual point has non-positive diagonal");
  return gamma;
}

Su11Model::GroupPoint Su11Model::group_from_matrix(const Mat& m,
                                                   double tol) const {
  GroupPoint g{0.5 * (m(0, 0) + std::conj(m(1, 1))),
               0.5 * (m(0, 1) + std::conj(m(1, 0)))};
  g = renormalized(g);
  double r = max_norm(Eigen::MatrixXcd(embed(g) - m));
  if (r > tol)
    throw std::invalid_argument("su11: matrix is not in SU(1,1), residual " +
                                std::to_string(r));
  return g;
}

Su11Model::DualGroupPoint Su11Model::dual_from_matrix(const Mat& m,
                                                      double tol) const {
  double A = m(0, 0).real();
  if (A <= 0.0)
    throw std::invalid_argument("su11: matrix is not in the dual group");
  DualGroupPoint gamma{A, m(0, 1)};
  double r = max_norm(Eigen::MatrixXcd(embed(gamma) - m));
  if (r > tol)
    throw std::invalid_argument("su11: matrix is not in the dual group, residual " +
                                std::to_string(r));
  return gamma;
}

Su11Model::GroupPoint Su11Model::exp_G(const Eigen::VectorXd& x) const {
  // M = x0 e0 + x1 e1 + x2 e2 satisfies M^2 = (x1^2 + x2^2 - x0^2) Id.
  double delta = x[1] * x[1] + x[2] * x[2] - x[0] * x[0];
  cplx w = std::sqrt(cplx(delta, 0.0));
  cplx c = std::cosh(w);
  cplx s = std::abs(w) < 1e-8 ? cplx(1.0 + delta / 6.0, 0.0) : std::sinh(w) / w;
  return renormalized({c + I * x[0] * s, (x[1] + I * x[2]) * s});
}

Su11Model::DualGroupPoint Su11Model::exp_Gs(const Eigen::VectorXd& xi) const {
  double A = std::exp(0.5 * xi[0]);
  double phi = std::abs(xi[0]) < 1e-8 ? 1.0 + xi[0] * xi[0] / 24.0
                                      : (A - 1.0 / A) / xi[0];
  return {A, (I * xi[1] - xi[2]) * phi};
}

Eigen::VectorXd Su11Model::log_Gs(const DualGroupPoint& gamma) const {
  double s0 = 2.0 * std::log(gamma.A);
  double phi = std::abs(s0) < 1e-8 ? 1.0 + s0 * s0 / 24.0
                                   : (gamma.A - 1.0 / gamma.A) / s0;
  cplx w = gamma.N / phi;  // = i s1 - s2
  Eigen::VectorXd xi(3);
  xi << s0, w.imag(), -w.real();
  return xi;
}

Su11Model::FactorOutcome Su11Model::factorize(const Mat& d, Order order) const {
  FactorOutcome out;
  if (order == Order::G_Gstar) {
    double m = std::norm(d(0, 0)) - std::norm(d(1, 0));
    out.margin = m;
    if (m <= 0.0) return out;
    double A = std::sqrt(m);
    cplx alpha = d(0, 0) / A;
    cplx beta = std::conj(d(1, 0)) / A;
    // |alpha|^2 = 1 + |beta|^2 >= 1, so this division never degenerates.
    assert(std::abs(alpha) >= 1.0 - 1e-9);
    cplx N = (d(0, 1) - beta / A) / alpha;
    out.result = Factorization{{alpha, beta}, {A, N}};
  } else {
    double m = std::norm(d(1, 1)) - std::norm(d(1, 0));
    out.margin = m;
    if (m <= 0.0) return out;
    double A = 1.0 / std::sqrt(m);
    cplx alpha = std::conj(d(1, 1)) * A;
    cplx beta = std::conj(d(1, 0)) * A;
    assert(std::abs(alpha) >= 1.0 - 1e-9);
    cplx N = (d(0, 1) - A * beta) / std::conj(alpha);
    out.result = Factorization{{alpha, beta}, {A, N}};
  }
  return out;
}

Eigen::VectorXd Su11Model::chart_G(const GroupPoint& g) const {
  Eigen::VectorXd v(3);
  v << std::arg(g.alpha), g.beta.real(), g.beta.imag();
  return v;
}

Su11Model::GroupPoint Su11Model::unchart_G(const Eigen::VectorXd& v) const {
  cplx beta(v[1], v[2]);
  cplx alpha = std::exp(I * v[0]) * std::sqrt(1.0 + std::norm(beta));
  return {alpha, beta};
}

Eigen::VectorXd Su11Model::chart_G_diff(const Eigen::VectorXd& a,
                                        const Eigen::VectorXd& b) const {
  Eigen::VectorXd d = a - b;
  d[0] = wrap_angle(d[0]);
  return d;
}

Eigen::VectorXd Su11Model::chart_Gs(const DualGroupPoint& gamma) const {
  Eigen::VectorXd v(3);
  v << std::log(gamma.A), gamma.N.real(), gamma.N.imag();
  return v;
}

Su11Model::DualGroupPoint Su11Model::unchart_Gs(const Eigen::VectorXd& v) const {
  return {std::exp(v[0]), cplx(v[1], v[2])};
}

Eigen::VectorXd Su11Model::chart_Gs_diff(const Eigen::VectorXd& a,
                                         const Eigen::VectorXd& b) const {
  return a - b;
}

Su11Model::GroupPoint Su11Model::random_G(Rng& rng) const {
  double theta = rng.uniform(-M_PI, M_PI);
  double r = rng.uniform(0.0, 2.0);
  double phi = rng.uniform(-M_PI, M_PI);
  cplx beta = r * std::exp(I * phi);
  cplx alpha = std::exp(I * theta) * std::sqrt(1.0 + std::norm(beta));
  return {alpha, beta};
}

Su11Model::DualGroupPoint Su11Model::random_Gs(Rng& rng) const {
  double A = std::exp(rng.uniform(-std::log(2.0), std::log(2.0)));
  double r = rng.uniform(0.0, 2.0);
  double phi = rng.uniform(-M_PI, M_PI);
  return {A, r * std::exp(I * phi)};
}

double Su11Model::dist_G(const GroupPoint& a, const GroupPoint& b) const {
  return max_norm(Eigen::MatrixXcd(embed(a) - embed(b)));
}

double Su11Model::dist_Gs(const DualGroupPoint& a,
                          const DualGroupPoint& b) const {
  return max_norm(Eigen::MatrixXcd(embed(a) - embed(b)));
}

Eigen::MatrixXd Su11Model::h_basis() const {
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(3, 1);
  b(0, 0) = 1.0;
  return b;
}

Su11Model::GroupPoint Su11Model::h_exp(const Eigen::VectorXd& t) const {
  return {std::exp(I * t[0]), 0.0};
}

Su11Model::GroupPoint Su11Model::h_random(Rng& rng) const {
  Eigen::VectorXd t(1);
  t << rng.uniform(-M_PI, M_PI);
  return h_exp(t);
}

double Su11Model::h_residual(const GroupPoint& g) const {
  return std::max(std::abs(g.beta), std::abs(std::abs(g.alpha) - 1.0));
}

Eigen::VectorXd Su11Model::h_log(const GroupPoint& h) const {
  Eigen::VectorXd t(1);
  t << std::arg(h.alpha);
  return t;
}

double Su11Model::unit_class_residual(const DualGroupPoint& gamma) const {
  return std::abs(gamma.A - 1.0);
}

Eigen::VectorXd Su11Model::class_label(const DualGroupPoint& gamma) const {
  Eigen::VectorXd v(1);
  v << gamma.A;
  return v;
}

Eigen::VectorXd Su11Model::base_chart(const GroupPoint& g) const {
  cplx z = g.beta / g.alpha;
  Eigen::VectorXd v(2);
  v << z.real(), z.imag();
  return v;
}

Su11Model::GroupPoint Su11Model::base_section(const Eigen::VectorXd& v) const {
  cplx z(v[0], v[1]);
  double m = 1.0 - std::norm(z);
  if (m <= 0.0)
    throw std::invalid_argument("su11: base point outside the unit disc");
  double a = 1.0 / std::sqrt(m);
  return {a, z * a};
}

nlohmann::json Su11Model::json_G(const GroupPoint& g) const {
  return {{"alpha", {{"re", g.alpha.real()}, {"im", g.alpha.imag()}}},
          {"beta", {{"re", g.beta.real()}, {"im", g.beta.imag()}}}};
}

nlohmann::json Su11Model::json_Gs(const DualGroupPoint& gamma) const {
  return {{"A", gamma.A},
          {"N", {{"re", gamma.N.real()}, {"im", gamma.N.imag()}}}};
}

}  // namespace plg
