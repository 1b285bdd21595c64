#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "plg/groupoid.hpp"
#include "plg/su11.hpp"

using namespace plg;

namespace {
Eigen::VectorXd vec3(double a, double b, double c) {
  Eigen::VectorXd v(3);
  v << a, b, c;
  return v;
}

// small generators keep every product inside the factorizable locus
groupoid::GroupoidElement<Su11Model> sample(const Su11Model& m, Rng& rng,
                                            double r = 0.3) {
  auto g = m.exp_G(vec3(rng.sym(r), rng.sym(r), rng.sym(r)));
  auto gamma = m.exp_Gs(vec3(rng.sym(r), rng.sym(r), rng.sym(r)));
  return groupoid::make(m, g, gamma);
}

double elem_dist(const Su11Model& m,
                 const groupoid::GroupoidElement<Su11Model>& a,
                 const groupoid::GroupoidElement<Su11Model>& b) {
  double d = m.dist_G(a.g1, b.g1);
  d = std::max(d, m.dist_Gs(a.gamma1, b.gamma1));
  d = std::max(d, m.dist_Gs(a.gamma2, b.gamma2));
  d = std::max(d, m.dist_G(a.g2, b.g2));
  return d;
}
}  // namespace

TEST_CASE("completion maps satisfy the defining relation") {
  Su11Model m;
  Rng rng(5);
  for (int s = 0; s < 40; ++s) {
    auto x = sample(m, rng);
    CHECK(x.omega_residual <= 1e-12);
    CHECK(groupoid::omega_residual(m, x.g1, x.gamma1, x.gamma2, x.g2) <= 1e-12);
    CHECK(groupoid::reassembly_defect(m, x) <= 1e-10);
  }
}

TEST_CASE("completion over a subgroup point is the dressed pair") {
  Su11Model m;
  Eigen::VectorXd t(1);
  t << M_PI / 3.0;
  auto h = m.h_exp(t);
  Su11Model::DualGroupPoint gamma{1.5, cplx(2.0, -1.0)};
  auto x = groupoid::make(m, h, gamma);
  CHECK(m.dist_G(x.g2, h) <= 1e-13);
  CHECK(x.gamma2.A == doctest::Approx(1.5).epsilon(1e-13));
  CHECK(std::abs(x.gamma2.N -
                 cplx(-0.1339745962155614, 2.2320508075688772)) <= 1e-12);
}

TEST_CASE("element construction rejects inconsistent quadruples") {
  Su11Model m;
  Rng rng(9);
  auto x = sample(m, rng);
  auto y = sample(m, rng);
  CHECK_THROWS_AS(groupoid::element(m, x.g1, x.gamma1, y.gamma2, y.g2),
                  std::logic_error);
}

TEST_CASE("composition over G: units, inverses, associativity") {
  Su11Model m;
  Rng rng(17);
  for (int s = 0; s < 25; ++s) {
    auto x = sample(m, rng, 0.25);
    auto y = groupoid::make(
        m, x.g2, m.exp_Gs(vec3(rng.sym(0.25), rng.sym(0.25), rng.sym(0.25))));
    auto z = groupoid::make(
        m, y.g2, m.exp_Gs(vec3(rng.sym(0.25), rng.sym(0.25), rng.sym(0.25))));

    auto xy = groupoid::mult_G(m, x, y);
    CHECK(m.dist_G(groupoid::source_G(xy), groupoid::source_G(x)) == 0.0);
    CHECK(m.dist_G(groupoid::target_G(xy), groupoid::target_G(y)) == 0.0);

    CHECK(elem_dist(m, groupoid::mult_G(m, groupoid::mult_G(m, x, y), z),
                    groupoid::mult_G(m, x, groupoid::mult_G(m, y, z))) <=
          1e-9);

    CHECK(elem_dist(m, groupoid::mult_G(m, groupoid::unit_G(m, x.g1), x), x) <=
          1e-12);
    CHECK(elem_dist(m, groupoid::mult_G(m, x, groupoid::unit_G(m, x.g2)), x) <=
          1e-12);

    auto xinv = groupoid::inverse_G(m, x);
    CHECK(elem_dist(m, groupoid::mult_G(m, x, xinv),
                    groupoid::unit_G(m, x.g1)) <= 1e-12);
    CHECK(elem_dist(m, groupoid::mult_G(m, xinv, x),
                    groupoid::unit_G(m, x.g2)) <= 1e-12);

    CHECK(groupoid::J_multiplicative_defect(m, x, y) == 0.0);
  }
}

TEST_CASE("composition over G rejects mismatched edges") {
  Su11Model m;
  Rng rng(21);
  auto x = sample(m, rng);
  auto y = sample(m, rng);  // generic: source does not match x's target
  CHECK_THROWS_AS(groupoid::mult_G(m, x, y), NotComposable);
  try {
    groupoid::mult_G(m, x, y);
  } catch (const NotComposable& e) {
    CHECK(e.mismatch > 1e-9);
  }
}

TEST_CASE("composition over the dual and the momentum action") {
  Su11Model m;
  Rng rng(29);
  for (int s = 0; s < 25; ++s) {
    auto x = sample(m, rng, 0.25);
    auto y = groupoid::make_from_right(
        m, x.gamma1, m.exp_G(vec3(rng.sym(0.25), rng.sym(0.25), rng.sym(0.25))));

    auto xy = groupoid::mult_Gstar(m, x, y);
    CHECK(m.dist_Gs(groupoid::source_Gstar(xy), groupoid::source_Gstar(x)) ==
          0.0);
    CHECK(m.dist_Gs(groupoid::target_Gstar(xy), groupoid::target_Gstar(y)) ==
          0.0);

    auto z = groupoid::make_from_right(
        m, y.gamma1, m.exp_G(vec3(rng.sym(0.25), rng.sym(0.25), rng.sym(0.25))));
    CHECK(elem_dist(m,
                    groupoid::mult_Gstar(m, groupoid::mult_Gstar(m, x, y), z),
                    groupoid::mult_Gstar(m, x, groupoid::mult_Gstar(m, y, z))) <=
          1e-9);
  }
}

TEST_CASE("dual-side units and inverses") {
  Su11Model m;
  Rng rng(33);
  for (int s = 0; s < 20; ++s) {
    auto x = sample(m, rng, 0.3);
    CHECK(elem_dist(m, groupoid::mult_Gstar(
                           m, x, groupoid::unit_Gstar(m, x.gamma1)), x) <=
          1e-12);
    CHECK(elem_dist(m, groupoid::mult_Gstar(
                           m, groupoid::unit_Gstar(m, x.gamma2), x), x) <=
          1e-12);
    auto xinv = groupoid::inverse_Gstar(m, x);
    CHECK(elem_dist(m, groupoid::mult_Gstar(m, x, xinv),
                    groupoid::unit_Gstar(m, x.gamma2)) <= 1e-12);

    auto y = groupoid::make_from_right(
        m, x.gamma1, m.exp_G(vec3(rng.sym(0.3), rng.sym(0.3), rng.sym(0.3))));
    auto acted = groupoid::act(m, x, y);
    CHECK(elem_dist(m, acted, groupoid::mult_Gstar(m, x, y)) == 0.0);
  }
}

TEST_CASE("momentum action rejects anchor mismatches") {
  Su11Model m;
  Rng rng(37);
  auto x = sample(m, rng);
  auto y = sample(m, rng);
  CHECK_THROWS_AS(groupoid::act(m, x, y), AnchorMismatch);
}

TEST_CASE("charts of the correspondence space round trip") {
  Su11Model m;
  Rng rng(41);
  for (int s = 0; s < 20; ++s) {
    auto x = sample(m, rng);
    auto c = groupoid::chart_of(m, x);
    CHECK(c.size() == 6);
    CHECK(elem_dist(m, groupoid::from_chart(m, c), x) <= 1e-11);
  }
}

TEST_CASE("momentum identity on a fixed element") {
  Su11Model m;
  auto x = groupoid::make(m, m.exp_G(vec3(0.2, 0.3, -0.1)),
                          m.exp_Gs(vec3(0.1, -0.2, 0.4)));
  Eigen::VectorXd X = vec3(0.7, -0.3, 0.5);
  CHECK(groupoid::momentum_identity_defect(m, x, X) <= 1e-4);
  CHECK(groupoid::momentum_closed_form_defect(m, x, X) <= 1e-5);
}

TEST_CASE("structure maps are (anti-)Poisson") {
  Su11Model m;
  auto x = groupoid::make(m, m.exp_G(vec3(0.3, 0.1, 0.2)),
                          m.exp_Gs(vec3(-0.2, 0.3, 0.1)));
  CHECK(groupoid::source_poisson_defect(m, x) <= 1e-5);
  CHECK(groupoid::target_poisson_defect(m, x) <= 1e-5);
  CHECK(groupoid::J_anti_poisson_defect(m, x) <= 1e-5);
}

TEST_CASE("serialization carries all four components") {
  Su11Model m;
  Rng rng(43);
  auto x = sample(m, rng);
  auto j = groupoid::to_json(m, x);
  for (const char* key : {"g1", "gamma1", "gamma2", "g2", "omega_residual"})
    CHECK(j.contains(key));
  CHECK(j["g1"].contains("alpha"));
  CHECK(j["gamma2"].contains("A"));
  CHECK(j["omega_residual"].get<double>() <= 1e-12);
}
