#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "plg/reduction.hpp"
#include "plg/su11.hpp"
#include "plg/trivial.hpp"

using namespace plg;

namespace {
Eigen::VectorXd vec(std::initializer_list<double> v) {
  Eigen::VectorXd out(static_cast<int>(v.size()));
  int i = 0;
  for (double x : v) out[i++] = x;
  return out;
}

groupoid::GroupoidElement<Su11Model> level_element(const Su11Model& m, cplx N,
                                                   const Eigen::VectorXd& gx) {
  return groupoid::make_from_right(m, Su11Model::DualGroupPoint{1.0, N},
                                   m.exp_G(gx));
}
}  // namespace

TEST_CASE("subgroup data: annihilator span and the subgroup property") {
  Su11Model m;
  auto sub = reduction::subgroup_data(m);
  CHECK(sub.is_poisson_subgroup);
  CHECK(sub.h.basis.size() == 1);
  CHECK(sub.h_perp.basis.size() == 2);

  algebra::SubspaceData expect;
  expect.parent_dim = 3;
  expect.basis.push_back(vec({0, 1, 0}));
  expect.basis.push_back(vec({0, 0, 1}));
  CHECK(algebra::equal_span(sub.h_perp, expect));
}

TEST_CASE("level membership through the momentum class") {
  Su11Model m;
  auto on = level_element(m, cplx(3.0, 1.0), vec({0.2, -0.4, 0.1}));
  CHECK(reduction::level_residual(m, on) == 0.0);
  CHECK(reduction::level_set_contains(m, on));
  CHECK(reduction::J_H(m, on)[0] == 1.0);

  auto off = groupoid::make_from_right(m, Su11Model::DualGroupPoint{2.0, 0.0},
                                       m.exp_G(vec({0.2, -0.4, 0.1})));
  CHECK(reduction::level_residual(m, off) == 1.0);
  CHECK_FALSE(reduction::level_set_contains(m, off));
}

TEST_CASE("the subgroup action on the level set") {
  Su11Model m;
  auto x = level_element(m, cplx(0.6, -0.8), vec({0.3, 0.5, -0.2}));
  Eigen::VectorXd t(1);
  t << 0.6;
  auto h = m.h_exp(t);

  auto y = reduction::h_act(m, h, x);
  CHECK(m.dist_G(y.g1, m.mul(h, x.g1)) == 0.0);
  CHECK(reduction::level_residual(m, y) <= 1e-12);
  // gamma2 rotates by e^{2 i theta}
  CHECK(std::abs(y.gamma2.N - std::polar(1.0, 1.2) * x.gamma2.N) <= 1e-12);
  // the base point of the source leg is unchanged
  CHECK((m.base_chart(y.g1) - m.base_chart(x.g1)).lpNorm<Eigen::Infinity>() <=
        1e-15);

  CHECK_THROWS_AS(
      reduction::h_act(m, Su11Model::GroupPoint{std::sqrt(2.0), 1.0}, x),
      std::invalid_argument);
  auto off = groupoid::make_from_right(m, Su11Model::DualGroupPoint{2.0, 0.0},
                                       m.exp_G(vec({0.1, 0.0, 0.0})));
  CHECK_THROWS_AS(reduction::h_act(m, h, off), std::logic_error);
}

TEST_CASE("reduce snaps onto the canonical section") {
  Su11Model m;
  auto x = level_element(m, cplx(-0.4, 0.9), vec({0.7, -0.3, 0.4}));
  auto red = reduction::reduce(m, x);

  CHECK(red.rep.g1.alpha.imag() == doctest::Approx(0).epsilon(1e-13));
  CHECK(red.rep.g1.alpha.real() > 0);
  CHECK(m.dist_G(red.rep.g1, m.base_section(red.z)) <= 1e-12);
  CHECK((red.z - m.base_chart(x.g1)).lpNorm<Eigen::Infinity>() <= 1e-13);

  // idempotence
  auto red2 = reduction::reduce(m, red.rep);
  CHECK(reduction::reduced_dist(m, red2, red) <= 1e-10);

  // orbit invariance: representatives over the same class reduce equally
  Eigen::VectorXd t(1);
  t << -1.1;
  auto red3 = reduction::reduce(m, reduction::h_act(m, m.h_exp(t), x));
  CHECK(reduction::reduced_dist(m, red3, red) <= 1e-9);

  auto off = groupoid::make_from_right(m, Su11Model::DualGroupPoint{2.0, 0.0},
                                       m.exp_G(vec({0.1, 0.0, 0.0})));
  CHECK_THROWS_AS(reduction::reduce(m, off), std::logic_error);
}

TEST_CASE("reduced elements from natural coordinates") {
  Su11Model m;
  auto sub = reduction::subgroup_data(m);
  Eigen::VectorXd z = vec({0.3, -0.2});
  Eigen::VectorXd s = vec({0.4, 0.7});
  auto a = reduction::reduced_from_chart(m, sub, z, s);
  CHECK((a.z - z).lpNorm<Eigen::Infinity>() <= 1e-12);
  CHECK(m.dist_G(a.rep.g1, m.base_section(z)) <= 1e-12);
  CHECK((reduction::hperp_coords(m, sub, a.rep.gamma2) - s)
            .lpNorm<Eigen::Infinity>() <= 1e-11);
  CHECK(reduction::level_residual(m, a.rep) <= 1e-12);
}

TEST_CASE("reduced groupoid: units, inverses, associativity") {
  Su11Model m;
  auto sub = reduction::subgroup_data(m);
  Rng rng(53);
  for (int trial = 0; trial < 10; ++trial) {
    Eigen::VectorXd z = vec({rng.sym(0.4), rng.sym(0.4)});
    Eigen::VectorXd s = vec({rng.sym(0.4), rng.sym(0.4)});
    auto a = reduction::reduced_from_chart(m, sub, z, s);

    auto b = reduction::reduced_from_chart(
        m, sub, reduction::reduced_target(m, a),
        vec({rng.sym(0.4), rng.sym(0.4)}));
    auto ab = reduction::reduced_mult(m, a, b);
    CHECK((reduction::reduced_source(ab) - reduction::reduced_source(a))
              .lpNorm<Eigen::Infinity>() <= 1e-9);
    CHECK((reduction::reduced_target(m, ab) - reduction::reduced_target(m, b))
              .lpNorm<Eigen::Infinity>() <= 1e-9);

    auto c = reduction::reduced_from_chart(
        m, sub, reduction::reduced_target(m, b),
        vec({rng.sym(0.4), rng.sym(0.4)}));
    CHECK(reduction::reduced_dist(
              m, reduction::reduced_mult(m, ab, c),
              reduction::reduced_mult(m, a, reduction::reduced_mult(m, b, c))) <=
          1e-8);

    auto ua = reduction::reduced_unit(m, reduction::reduced_source(a));
    CHECK(reduction::reduced_dist(m, reduction::reduced_mult(m, ua, a), a) <=
          1e-8);
    auto ub = reduction::reduced_unit(m, reduction::reduced_target(m, a));
    CHECK(reduction::reduced_dist(m, reduction::reduced_mult(m, a, ub), a) <=
          1e-8);

    auto ainv = reduction::reduced_inverse(m, a);
    CHECK(reduction::reduced_dist(m, reduction::reduced_mult(m, a, ainv), ua) <=
          1e-8);
  }
}

TEST_CASE("reduced composition rejects mismatched base points") {
  Su11Model m;
  auto sub = reduction::subgroup_data(m);
  auto a = reduction::reduced_from_chart(m, sub, vec({0.3, 0.0}), vec({0.2, 0.1}));
  auto b = reduction::reduced_from_chart(m, sub, vec({-0.5, 0.4}), vec({0.0, 0.3}));
  double gap = (reduction::reduced_target(m, a) - reduction::reduced_source(b))
                   .lpNorm<Eigen::Infinity>();
  REQUIRE(gap > 1e-3);  // generic points really are apart
  CHECK_THROWS_AS(reduction::reduced_mult(m, a, b), NotComposable);
}

TEST_CASE("representative independence of the reduced product") {
  Su11Model m;
  auto sub = reduction::subgroup_data(m);
  auto a = reduction::reduced_from_chart(m, sub, vec({0.2, 0.1}), vec({0.3, -0.2}));
  auto b = reduction::reduced_from_chart(
      m, sub, reduction::reduced_target(m, a), vec({-0.1, 0.25}));
  auto ab = reduction::reduced_mult(m, a, b);

  Eigen::VectorXd t(1);
  t << 0.8;
  auto a2 = reduction::reduce(m, reduction::h_act(m, m.h_exp(t), a.rep));
  Eigen::VectorXd t2(1);
  t2 << -0.35;
  auto b2 = reduction::reduce(m, reduction::h_act(m, m.h_exp(t2), b.rep));
  auto ab2 = reduction::reduced_mult(m, a2, b2);
  CHECK(reduction::reduced_dist(m, ab2, ab) <= 1e-8);
}

TEST_CASE("cotangent covector through the canonical section") {
  Su11Model m;
  auto sub = reduction::subgroup_data(m);

  // gamma2 = identity: the covector vanishes at any base point
  auto a0 = reduction::reduced_from_chart(m, sub, vec({0.4, -0.3}), vec({0, 0}));
  CHECK(reduction::cotangent_chart(m, a0).lpNorm<Eigen::Infinity>() <= 1e-12);

  // over z = 0 the covector reads off the exponential coordinates
  Eigen::VectorXd s = vec({0.35, -0.8});
  auto a = reduction::reduced_from_chart(m, sub, vec({0, 0}), s);
  CHECK((reduction::cotangent_chart(m, a) - s).lpNorm<Eigen::Infinity>() <=
        1e-8);

  // independence of the section used to compute it
  auto b = reduction::reduced_from_chart(m, sub, vec({0.25, 0.15}), vec({0.5, 0.2}));
  auto section2 = [&](const Eigen::VectorXd& z) {
    Eigen::VectorXd t(1);
    t << 0.3 + 0.2 * z[0] - 0.1 * z[1];
    return m.mul(m.h_exp(t), m.base_section(z));
  };
  Eigen::VectorXd via_canonical = reduction::cotangent_chart(m, b);
  Eigen::VectorXd via_other =
      reduction::cotangent_chart_with_section(m, b, section2);
  CHECK((via_canonical - via_other).lpNorm<Eigen::Infinity>() <= 1e-6);
}

TEST_CASE("coadjoint transport intertwines the dual exponential") {
  Su11Model m;
  auto sub = reduction::subgroup_data(m);
  Rng rng(61);
  for (int trial = 0; trial < 20; ++trial) {
    Eigen::VectorXd t(1);
    t << rng.sym(2.5);
    Eigen::VectorXd s = vec({rng.sym(1.0), rng.sym(1.0)});
    CHECK(reduction::intertwining_defect(m, sub, m.h_exp(t), s) <= 1e-10);
  }
}

TEST_CASE("the unit level set is coisotropic, off-level points are not flat") {
  Su11Model m;
  auto sub = reduction::subgroup_data(m);

  auto at_unit = groupoid::unit_G(m, m.base_section(vec({0.3, 0.2})));
  CHECK(reduction::coisotropy_defect(m, sub, at_unit) <= 1e-4);

  auto on = level_element(m, cplx(0.5, 0.3), vec({0.2, -0.3, 0.4}));
  CHECK(reduction::coisotropy_defect(m, sub, on) <= 1e-4);

  auto off = groupoid::make_from_right(m, Su11Model::DualGroupPoint{1.8, 0.2},
                                       m.exp_G(vec({0.2, -0.3, 0.4})));
  CHECK(reduction::coisotropy_defect(m, sub, off) > 1e-2);
}

TEST_CASE("reduced bivector: antisymmetry, nondegeneracy, source pushforward") {
  Su11Model m;
  auto sub = reduction::subgroup_data(m);
  auto a = reduction::reduced_from_chart(m, sub, vec({0.3, -0.1}), vec({0.2, 0.4}));
  Eigen::MatrixXd pr = reduction::reduced_bivector(m, sub, a);
  REQUIRE(pr.rows() == 4);
  CHECK(max_norm(Eigen::MatrixXd(pr + pr.transpose())) <= 1e-5);
  CHECK(std::abs(pr.determinant()) > 1e-8);
  CHECK(reduction::reduced_source_pushforward_defect(m, sub, a) <= 1e-4);
}

TEST_CASE("serialized reduced elements expose only level coordinates") {
  Su11Model m;
  auto sub = reduction::subgroup_data(m);
  auto a = reduction::reduced_from_chart(m, sub, vec({0.1, 0.2}), vec({0.3, 0.4}));
  auto j = reduction::to_json(m, a);
  CHECK(j["z"].size() == 2);
  CHECK(j.contains("gamma1"));
  CHECK(j["gamma2"].contains("N"));
  CHECK_FALSE(j["gamma2"].contains("A"));
  CHECK(j["residuals"]["level"].get<double>() <= 1e-9);
}

TEST_CASE("abelian model reduces to the canonical cotangent structure") {
  TrivialModel m;
  auto sub = reduction::subgroup_data(m);
  CHECK(sub.is_poisson_subgroup);

  auto a = reduction::reduced_from_chart(m, sub, vec({0.7, -1.2}), vec({0.4, 2.0}));
  Eigen::MatrixXd pr = reduction::reduced_bivector(m, sub, a);
  Eigen::MatrixXd expect = Eigen::MatrixXd::Zero(4, 4);
  expect.topRightCorner(2, 2) = -Eigen::MatrixXd::Identity(2, 2);
  expect.bottomLeftCorner(2, 2) = Eigen::MatrixXd::Identity(2, 2);
  CHECK(max_norm(Eigen::MatrixXd(pr - expect)) <= 1e-14);

  CHECK(reduction::reduced_source_pushforward_defect(m, sub, a) <= 1e-14);
  CHECK(reduction::coisotropy_defect(m, sub, a.rep) <= 1e-13);

  // composition is addition in every slot
  auto b = reduction::reduced_from_chart(
      m, sub, reduction::reduced_target(m, a), vec({-0.3, 0.5}));
  auto ab = reduction::reduced_mult(m, a, b);
  CHECK((reduction::hperp_coords(m, sub, ab.rep.gamma2) - vec({0.1, 2.5}))
            .lpNorm<Eigen::Infinity>() <= 1e-12);
}
