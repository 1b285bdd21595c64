#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "plg/su11.hpp"
#include "plg/tensors.hpp"
#include "plg/trivial.hpp"

using namespace plg;

namespace {
Eigen::VectorXd vec3(double a, double b, double c) {
  Eigen::VectorXd v(3);
  v << a, b, c;
  return v;
}
}  // namespace

TEST_CASE("tensors vanish at the identities") {
  Su11Model m;
  CHECK(max_norm(tensors::pi_G(m, m.id_G()).m) <= 1e-14);
  CHECK(max_norm(tensors::pi_Gstar(m, m.id_Gs()).m) <= 1e-14);

  auto pp = tensors::pi_plus(m, m.id_G(), m.id_Gs());
  CHECK(pp.frame == FrameTag::mixed_lg_rgamma);
  Eigen::MatrixXd expected = Eigen::MatrixXd::Zero(6, 6);
  expected.topRightCorner(3, 3) = -Eigen::MatrixXd::Identity(3, 3);
  expected.bottomLeftCorner(3, 3) = Eigen::MatrixXd::Identity(3, 3);
  CHECK(max_norm(Eigen::MatrixXd(pp.m - expected)) <= 1e-14);
}

TEST_CASE("group tensor on a boost matches the closed form") {
  Su11Model m;
  const double b = 0.5;
  auto g = m.exp_G(vec3(0, b, 0));
  double S = std::sinh(2.0 * b);
  double s2 = std::sinh(b) * std::sinh(b);
  Eigen::MatrixXd expect(3, 3);
  expect << 0, S / 2, 0,
      -S / 2, 0, s2,
      0, -s2, 0;
  CHECK(max_norm(Eigen::MatrixXd(tensors::pi_G(m, g).m - expect)) <= 1e-12);
}

TEST_CASE("group tensor vanishes along the subgroup") {
  Su11Model m;
  for (double t : {0.0, 0.4, -1.3, 2.9}) {
    Eigen::VectorXd tt(1);
    tt << t;
    CHECK(max_norm(tensors::pi_G(m, m.h_exp(tt)).m) <= 1e-13);
  }
}

TEST_CASE("dual tensor on the diagonal subgroup matches the closed form") {
  Su11Model m;
  auto gamma = m.exp_Gs(vec3(1, 0, 0));  // A = e^{1/2}
  double lam = std::exp(1.0);            // A^2
  Eigen::MatrixXd expect = Eigen::MatrixXd::Zero(3, 3);
  expect(1, 2) = 1.0 - lam * lam;
  expect(2, 1) = lam * lam - 1.0;
  CHECK(max_norm(Eigen::MatrixXd(tensors::pi_Gstar(m, gamma).m - expect)) <=
        1e-13);
}

TEST_CASE("the two pi_plus expansions agree") {
  Su11Model m;
  Rng rng(7);
  for (int s = 0; s < 40; ++s) {
    auto g = m.random_G(rng);
    auto gamma = m.random_Gs(rng);
    CHECK(tensors::pi_plus_mismatch(m, g, gamma) <= 1e-10);
  }
}

TEST_CASE("sharp enforces frame and kind") {
  Su11Model m;
  auto g = m.exp_G(vec3(0.3, 0.8, -0.2));
  auto b = tensors::pi_G(m, g);

  FrameVector good{FrameTag::right_trivialized, VecKind::covector, vec3(1, 0, 2)};
  auto out = tensors::sharp(b, good);
  CHECK(out.kind == VecKind::vector);
  CHECK((out.coords - Eigen::VectorXd(b.m * good.coords))
            .lpNorm<Eigen::Infinity>() == 0.0);

  FrameVector wrong_frame{FrameTag::left_trivialized, VecKind::covector,
                          vec3(1, 0, 2)};
  CHECK_THROWS_AS(tensors::sharp(b, wrong_frame), std::invalid_argument);
  FrameVector wrong_kind{FrameTag::right_trivialized, VecKind::vector,
                         vec3(1, 0, 2)};
  CHECK_THROWS_AS(tensors::sharp(b, wrong_kind), std::invalid_argument);
}

TEST_CASE("multiplicativity of both tensors") {
  Su11Model m;
  Rng rng(13);
  for (int s = 0; s < 40; ++s) {
    auto g = m.random_G(rng);
    auto h = m.random_G(rng);
    CHECK(tensors::multiplicativity_defect_G(m, g, h) <= 1e-10);
    auto a = m.random_Gs(rng);
    auto b = m.random_Gs(rng);
    CHECK(tensors::multiplicativity_defect_Gstar(m, a, b) <= 1e-10);
    CHECK(tensors::multiplicativity_defect_G(m, g, m.id_G()) <= 1e-12);
  }
}

TEST_CASE("chart tensors stay antisymmetric") {
  Su11Model m;
  auto g = m.exp_G(vec3(0.5, -0.3, 0.8));
  auto gamma = m.exp_Gs(vec3(0.4, 1.0, -0.6));
  Eigen::MatrixXd a = tensors::pi_G_chart(m, g);
  CHECK(max_norm(Eigen::MatrixXd(a + a.transpose())) <= 1e-9);
  Eigen::MatrixXd b = tensors::pi_Gstar_chart(m, gamma);
  CHECK(max_norm(Eigen::MatrixXd(b + b.transpose())) <= 1e-9);
  Eigen::MatrixXd c = tensors::pi_plus_chart(m, g, gamma);
  CHECK(max_norm(Eigen::MatrixXd(c + c.transpose())) <= 1e-9);
  // the double's bivector is nondegenerate
  CHECK(std::abs(c.determinant()) > 1e-6);
}

TEST_CASE("pushforward defect of the identity map is zero") {
  Su11Model m;
  auto g = m.exp_G(vec3(0.2, 0.5, -0.1));
  Eigen::MatrixXd pi = tensors::pi_G_chart(m, g);
  tensors::ChartMap id_map = [](const Eigen::VectorXd& x) { return x; };
  CHECK(tensors::pushforward_defect(id_map, m.chart_G(g), pi, pi, 1.0) <=
        1e-14);
}

TEST_CASE("disc tensor: closed form, base point independence, rotation") {
  Su11Model m;
  // at the origin the structure vanishes
  CHECK(max_norm(tensors::pi_base(m, Eigen::VectorXd::Zero(2))) <= 1e-10);

  // pi(z) = r^2 (1 - r^2) dx ^ dy on the real axis
  for (double r : {0.3, 0.5, 0.72}) {
    Eigen::VectorXd z(2);
    z << r, 0;
    Eigen::MatrixXd pb = tensors::pi_base(m, z);
    CHECK(pb(0, 1) == doctest::Approx(r * r * (1 - r * r)).epsilon(1e-6));
    CHECK(pb(0, 0) == doctest::Approx(0).epsilon(1e-8));
    CHECK((pb(0, 1) + pb(1, 0)) == doctest::Approx(0).epsilon(1e-10));
  }

  // rotation invariance of the coefficient
  Eigen::VectorXd z1(2), z2(2);
  z1 << 0.5, 0.0;
  double phi = 1.1;
  z2 << 0.5 * std::cos(phi), 0.5 * std::sin(phi);
  CHECK(tensors::pi_base(m, z1)(0, 1) ==
        doctest::Approx(tensors::pi_base(m, z2)(0, 1)).epsilon(1e-7));

  // independence of the fibre representative
  Eigen::VectorXd t(1);
  t << 0.9;
  auto g0 = m.base_section(z1);
  auto g1 = m.mul(m.h_exp(t), g0);
  CHECK(max_norm(Eigen::MatrixXd(tensors::pi_base_from(m, g0) -
                                 tensors::pi_base_from(m, g1))) <= 1e-7);
}

TEST_CASE("dressing fields agree with the sharp of the group tensor") {
  Su11Model m;
  Rng rng(23);
  for (int s = 0; s < 30; ++s) {
    Eigen::VectorXd xi = vec3(rng.sym(1), rng.sym(1), rng.sym(1));
    auto g = m.random_G(rng);
    CHECK(tensors::dressing_sign_defect(m, xi, g) <= 1e-9);
  }
}

TEST_CASE("abelian model has identically zero tensors") {
  TrivialModel m;
  Rng rng(3);
  for (int s = 0; s < 10; ++s) {
    auto g = m.random_G(rng);
    auto gamma = m.random_Gs(rng);
    CHECK(max_norm(tensors::pi_G(m, g).m) <= 1e-15);
    CHECK(max_norm(tensors::pi_Gstar(m, gamma).m) <= 1e-15);
    CHECK(tensors::pi_plus_mismatch(m, g, gamma) <= 1e-14);
  }
  CHECK(max_norm(tensors::pi_base(m, Eigen::VectorXd::Zero(2))) <= 1e-14);
}
