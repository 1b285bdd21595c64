#include "plg/algebra.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>
#include <fstream>
#include <sstream>

namespace plg::algebra {

void LieAlgebraData::validate(double tol) const {
  if (static_cast<int>(c.size()) != dim)
    throw std::invalid_argument("structure constant tensor has wrong size");
  for (const auto& ck : c) {
    if (ck.rows() != dim || ck.cols() != dim)
      throw std::invalid_argument("structure constant slice has wrong shape");
    if (max_norm(Eigen::MatrixXd(ck + ck.transpose())) > tol)
      throw std::invalid_argument("structure constants not antisymmetric");
  }
}

Eigen::MatrixXd LieAlgebraData::ad(const Eigen::VectorXd& x) const {
  if (x.size() != dim) throw std::invalid_argument("ad: dimension mismatch");
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim, dim);
  for (int k = 0; k < dim; ++k)
    for (int j = 0; j < dim; ++j) m(k, j) = x.dot(c[k].col(j));
  return m;
}

Eigen::VectorXd bracket(const LieAlgebraData& a, const Eigen::VectorXd& x,
                        const Eigen::VectorXd& y) {
  if (x.size() != a.dim || y.size() != a.dim)
    throw std::invalid_argument("bracket: dimension mismatch");
  Eigen::VectorXd out(a.dim);
  for (int k = 0; k < a.dim; ++k) out[k] = x.dot(a.c[k] * y);
  return out;
}

double jacobi_defect(const LieAlgebraData& a) {
  a.validate();
  double worst = 0.0;
  Eigen::VectorXd ei = Eigen::VectorXd::Zero(a.dim);
  Eigen::VectorXd ej = Eigen::VectorXd::Zero(a.dim);
  Eigen::VectorXd ek = Eigen::VectorXd::Zero(a.dim);
  for (int i = 0; i < a.dim; ++i)
    for (int j = i + 1; j < a.dim; ++j)
      for (int k = j + 1; k < a.dim; ++k) {
        ei.setZero(); ei[i] = 1.0;
        ej.setZero(); ej[j] = 1.0;
        ek.setZero(); ek[k] = 1.0;
        const Eigen::VectorXd s = bracket(a, bracket(a, ei, ej), ek) +
                                  bracket(a, bracket(a, ej, ek), ei) +
                                  bracket(a, bracket(a, ek, ei), ej);
        worst = std::max(worst, s.cwiseAbs().maxCoeff());
      }
  return worst;
}

void LieBialgebraData::validate(double tol) const {
  g.validate(tol);
  g_star.validate(tol);
  if (g.dim != g_star.dim)
    throw std::invalid_argument("bialgebra sides have different dimensions");
}

namespace {

// delta(x) as an antisymmetric matrix in the e-basis:
// delta(x)^{ab} = sum_k x_k * cstar[k](a,b).
Eigen::MatrixXd delta_matrix(const LieBialgebraData& b,
                             const Eigen::VectorXd& x) {
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(b.g.dim, b.g.dim);
  for (int k = 0; k < b.g.dim; ++k) d += x[k] * b.g_star.c[k];
  return d;
}

}  // namespace

double cocycle_defect(const LieBialgebraData& b) {
  b.validate();
  const int n = b.g.dim;
  double worst = 0.0;
  std::vector<Eigen::MatrixXd> ad(n), del(n);
  for (int i = 0; i < n; ++i) {
    Eigen::VectorXd ei = Eigen::VectorXd::Zero(n);
    ei[i] = 1.0;
    ad[i] = b.g.ad(ei);
    del[i] = delta_matrix(b, ei);
  }
  Eigen::VectorXd ei = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd ej = Eigen::VectorXd::Zero(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      ei.setZero(); ei[i] = 1.0;
      ej.setZero(); ej[j] = 1.0;
      const Eigen::MatrixXd lhs = delta_matrix(b, bracket(b.g, ei, ej));
      const Eigen::MatrixXd act_i = ad[i] * del[j] + del[j] * ad[i].transpose();
      const Eigen::MatrixXd act_j = ad[j] * del[i] + del[i] * ad[j].transpose();
      worst = std::max(worst, max_norm(Eigen::MatrixXd(lhs - act_i + act_j)));
    }
  return worst;
}

DoubleVector DoubleVector::zero(int n) {
  return {Eigen::VectorXd::Zero(n), Eigen::VectorXd::Zero(n)};
}

Eigen::VectorXd DoubleVector::stacked() const {
  Eigen::VectorXd v(x.size() + xi.size());
  v << x, xi;
  return v;
}

DoubleVector DoubleVector::from_stacked(const Eigen::VectorXd& v) {
  const int n = static_cast<int>(v.size()) / 2;
  return {v.head(n), v.tail(n)};
}

DoubleVector project(const DoubleVector& u, Side side) {
  DoubleVector out = u;
  if (side == Side::g)
    out.xi.setZero();
  else
    out.x.setZero();
  return out;
}

double pairing(const DoubleVector& u, const DoubleVector& v) {
  if (u.x.size() != v.x.size() || u.xi.size() != v.xi.size())
    throw std::invalid_argument("pairing: dimension mismatch");
  return u.xi.dot(v.x) + v.xi.dot(u.x);
}

DoubleVector double_bracket(const LieBialgebraData& b, const DoubleVector& u,
                            const DoubleVector& v) {
  const int n = b.g.dim;
  if (u.x.size() != n || v.x.size() != n)
    throw std::invalid_argument("double_bracket: dimension mismatch");

  // Coadjoint action of g on g*: (ad*_X eta)_k = -sum_{i,j} X_i eta_j c[j](i,k).
  auto coad_g = [&](const Eigen::VectorXd& X, const Eigen::VectorXd& eta) {
    Eigen::VectorXd out = Eigen::VectorXd::Zero(n);
    for (int k = 0; k < n; ++k)
      for (int j = 0; j < n; ++j) out[k] -= eta[j] * X.dot(b.g.c[j].col(k));
    return out;
  };
  // Coadjoint action of g* on g, mirrored.
  auto coad_gstar = [&](const Eigen::VectorXd& xi, const Eigen::VectorXd& Y) {
    Eigen::VectorXd out = Eigen::VectorXd::Zero(n);
    for (int k = 0; k < n; ++k)
      for (int j = 0; j < n; ++j)
        out[k] -= Y[j] * xi.dot(b.g_star.c[j].col(k));
    return out;
  };

  DoubleVector out = DoubleVector::zero(n);
  out.x = bracket(b.g, u.x, v.x) - coad_gstar(v.xi, u.x) + coad_gstar(u.xi, v.x);
  out.xi =
      bracket(b.g_star, u.xi, v.xi) + coad_g(u.x, v.xi) - coad_g(v.x, u.xi);
  return out;
}

double pairing_invariance_defect(const LieBialgebraData& b) {
  const int n = b.g.dim;
  std::vector<DoubleVector> basis;
  for (int i = 0; i < 2 * n; ++i) {
    DoubleVector u = DoubleVector::zero(n);
    if (i < n)
      u.x[i] = 1.0;
    else
      u.xi[i - n] = 1.0;
    basis.push_back(u);
  }
  double worst = 0.0;
  for (const auto& u : basis)
    for (const auto& v : basis)
      for (const auto& w : basis) {
        const double s = pairing(double_bracket(b, u, v), w) +
                         pairing(v, double_bracket(b, u, w));
        worst = std::max(worst, std::abs(s));
      }
  return worst;
}

Eigen::MatrixXd SubspaceData::basis_matrix() const {
  Eigen::MatrixXd m(parent_dim, static_cast<Eigen::Index>(basis.size()));
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    if (basis[j].size() != parent_dim)
      throw std::invalid_argument("subspace basis vector has wrong dimension");
    m.col(j) = basis[j];
  }
  return m;
}

SubspaceData annihilator(const SubspaceData& s) {
  const Eigen::MatrixXd V = s.basis_matrix().transpose();  // k x n
  Eigen::FullPivLU<Eigen::MatrixXd> lu(V);
  lu.setThreshold(1e-10);
  if (lu.rank() != V.rows())
    throw std::invalid_argument("annihilator: input basis is rank deficient");
  const Eigen::MatrixXd K = lu.kernel();
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(K);
  Eigen::MatrixXd Q =
      qr.householderQ() * Eigen::MatrixXd::Identity(K.rows(), K.cols());
  // Householder reflections leave the column signs arbitrary; pin them so
  // the dominant entry of each basis vector is positive. For coordinate
  // subspaces this recovers the plain dual-basis vectors.
  for (Eigen::Index j = 0; j < Q.cols(); ++j) {
    Eigen::Index imax = 0;
    Q.col(j).cwiseAbs().maxCoeff(&imax);
    if (Q(imax, j) < 0) Q.col(j) = -Q.col(j);
  }
  SubspaceData out;
  out.parent_dim = s.parent_dim;
  for (Eigen::Index j = 0; j < Q.cols(); ++j) out.basis.push_back(Q.col(j));
  return out;
}

namespace {

double span_distance(const Eigen::MatrixXd& B, const Eigen::VectorXd& w) {
  // Distance of w from the column span of B, via least squares.
  const Eigen::VectorXd r = w - B * B.colPivHouseholderQr().solve(w);
  return r.size() == 0 ? w.cwiseAbs().maxCoeff() : r.cwiseAbs().maxCoeff();
}

}  // namespace

SubalgebraCheck is_subalgebra(const LieAlgebraData& a, const SubspaceData& s,
                              double tol) {
  const Eigen::MatrixXd B = s.basis_matrix();
  double worst = 0.0;
  for (size_t i = 0; i < s.basis.size(); ++i)
    for (size_t j = i + 1; j < s.basis.size(); ++j)
      worst = std::max(
          worst, span_distance(B, bracket(a, s.basis[i], s.basis[j])));
  return {worst <= tol, worst};
}

SubalgebraCheck is_ideal(const LieAlgebraData& a, const SubspaceData& s,
                         double tol) {
  const Eigen::MatrixXd B = s.basis_matrix();
  double worst = 0.0;
  for (int i = 0; i < a.dim; ++i) {
    Eigen::VectorXd ei = Eigen::VectorXd::Zero(a.dim);
    ei[i] = 1.0;
    for (const auto& v : s.basis)
      worst = std::max(worst, span_distance(B, bracket(a, ei, v)));
  }
  return {worst <= tol, worst};
}

bool equal_span(const SubspaceData& a, const SubspaceData& b, double tol) {
  if (a.parent_dim != b.parent_dim) return false;
  auto rank = [tol](const Eigen::MatrixXd& m) {
    if (m.cols() == 0) return Eigen::Index(0);
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(m);
    qr.setThreshold(tol);
    return qr.rank();
  };
  const Eigen::MatrixXd A = a.basis_matrix();
  const Eigen::MatrixXd B = b.basis_matrix();
  Eigen::MatrixXd AB(a.parent_dim, A.cols() + B.cols());
  AB << A, B;
  const auto ra = rank(A), rb = rank(B), rab = rank(AB);
  return ra == rb && rb == rab;
}

LieAlgebraData load_structure_constants(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  struct Entry {
    int i, j, k;
    double v;
  };
  std::vector<Entry> entries;
  int dim = 0;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    Entry e{};
    if (!(ls >> e.i >> e.j >> e.k >> e.v) || e.i < 0 || e.j < 0 || e.k < 0)
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": malformed structure constant line");
    std::string trailing;
    if (ls >> trailing)
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": trailing tokens");
    dim = std::max({dim, e.i + 1, e.j + 1, e.k + 1});
    entries.push_back(e);
  }
  LieAlgebraData a;
  a.dim = dim;
  a.c.assign(dim, Eigen::MatrixXd::Zero(dim, dim));
  for (const auto& e : entries) a.c[e.k](e.i, e.j) += e.v;
  a.validate();
  return a;
}

void save_structure_constants(const LieAlgebraData& a,
                              const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path);
  out << "# structure constants: i j k value with [e_i,e_j] = value e_k\n";
  out.precision(17);
  for (int k = 0; k < a.dim; ++k)
    for (int i = 0; i < a.dim; ++i)
      for (int j = 0; j < a.dim; ++j)
        if (a.c[k](i, j) != 0.0)
          out << i << ' ' << j << ' ' << k << ' ' << a.c[k](i, j) << '\n';
}

}  // namespace plg::algebra
