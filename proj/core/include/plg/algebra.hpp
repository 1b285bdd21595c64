#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "plg/common.hpp"

namespace plg::algebra {

/// Real Lie algebra in a fixed basis, stored as dense structure constants:
/// [e_i, e_j] = sum_k c[k](i, j) e_k.
struct LieAlgebraData {
  int dim = 0;
  std::vector<std::string> labels;
  std::vector<Eigen::MatrixXd> c;  // c[k](i,j)

  /// Throws std::invalid_argument on size mismatch or broken antisymmetry.
  void validate(double tol = 1e-12) const;

  /// Matrix of ad_x in the basis: (ad_x)_{k j} = coefficient of e_k in [x, e_j].
  Eigen::MatrixXd ad(const Eigen::VectorXd& x) const;
};

Eigen::VectorXd bracket(const LieAlgebraData& a, const Eigen::VectorXd& x,
                        const Eigen::VectorXd& y);

/// Max norm of [[e_i,e_j],e_k] + [[e_j,e_k],e_i] + [[e_k,e_i],e_j] over basis
/// triples.
double jacobi_defect(const LieAlgebraData& a);

/// A Lie algebra together with a Lie bracket on its dual space, in dual bases.
struct LieBialgebraData {
  LieAlgebraData g;
  LieAlgebraData g_star;

  void validate(double tol = 1e-12) const;
};

/// Defect of the cocycle condition for delta = transpose of the dual bracket,
/// viewed as a map g -> Lambda^2 g:
/// max over basis pairs of
///   || delta([e_i,e_j]) - ad_{e_i} delta(e_j) + ad_{e_j} delta(e_i) ||.
double cocycle_defect(const LieBialgebraData& b);

/// Element of the double g + g*: x holds e-coordinates, xi holds
/// f-coordinates. The same storage represents elements of the dual of the
/// double through the canonical pairing.
struct DoubleVector {
  Eigen::VectorXd x;
  Eigen::VectorXd xi;

  static DoubleVector zero(int n);
  Eigen::VectorXd stacked() const;  // (x; xi), the fixed basis order
  static DoubleVector from_stacked(const Eigen::VectorXd& v);
};

enum class Side { g, g_star };

/// Zeroes the complementary component.
DoubleVector project(const DoubleVector& u, Side side);

/// Canonical pairing <x + xi, y + eta> = xi(y) + eta(x).
double pairing(const DoubleVector& u, const DoubleVector& v);

/// Bracket of the double built from the two brackets and their coadjoint
/// actions; reduces to the g / g* brackets on pure elements.
DoubleVector double_bracket(const LieBialgebraData& b, const DoubleVector& u,
                            const DoubleVector& v);

/// Max over basis triples u,v,w of |<[u,v],w> + <v,[u,w]>|.
double pairing_invariance_defect(const LieBialgebraData& b);

/// Linear subspace of an n-dimensional coordinate space.
struct SubspaceData {
  int parent_dim = 0;
  std::vector<Eigen::VectorXd> basis;

  Eigen::MatrixXd basis_matrix() const;  // columns are the basis vectors
};

/// Annihilator subspace in the dual coordinates. Throws on rank-deficient
/// input basis.
SubspaceData annihilator(const SubspaceData& s);

struct SubalgebraCheck {
  bool is_subalgebra = false;
  double defect = 0.0;
};

/// Residual of closure of s under the bracket of a (distance of each basis
/// bracket from span(s)).
SubalgebraCheck is_subalgebra(const LieAlgebraData& a, const SubspaceData& s,
                              double tol = 1e-9);

/// Residual of [a-basis, s] staying inside span(s): ideal test.
SubalgebraCheck is_ideal(const LieAlgebraData& a, const SubspaceData& s,
                         double tol = 1e-9);

/// Rank-test span equality at tolerance.
bool equal_span(const SubspaceData& a, const SubspaceData& b,
                double tol = 1e-10);

/// Plain-text structure constant format: lines "i j k value" meaning
/// [e_i, e_j] gains value * e_k; 0-based indices; blank lines and lines
/// starting with '#' ignored. Dimension inferred from the largest index.
LieAlgebraData load_structure_constants(const std::string& path);
void save_structure_constants(const LieAlgebraData& a, const std::string& path);

}  // namespace plg::algebra
