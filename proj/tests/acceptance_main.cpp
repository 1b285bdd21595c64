#include <Eigen/Dense>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "plg/dressing.hpp"
#include "plg/groupoid.hpp"
#include "plg/reduction.hpp"
#include "plg/su11.hpp"
#include "plg/tensors.hpp"
#include "plg/trivial.hpp"
#include "plg/verify.hpp"

// Acceptance gate: one line per criterion, exit code = number of failures.
// Numerical thresholds match the verification suite's advertised tolerances;
// timing limits assume a release build.

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

int failures = 0;

void line(int id, bool pass, const std::string& desc) {
  std::printf("criterion %d: %s - %s\n", id, pass ? "PASS" : "FAIL",
              desc.c_str());
  if (!pass) ++failures;
}

bool ids_pass(const plg::report::VerificationReport& rep,
              const std::vector<std::string>& ids) {
  for (const auto& id : ids) {
    bool found = false;
    for (const auto& c : rep.checks)
      if (c.id == id) {
        found = true;
        if (!c.pass) return false;
      }
    if (!found) return false;
  }
  return true;
}

Eigen::VectorXd vec3(double a, double b, double c) {
  Eigen::VectorXd v(3);
  v << a, b, c;
  return v;
}

}  // namespace

int main() {
  using namespace plg;
  char buf[160];

  // ---- 1: exhaustive bialgebra identities ----
  auto t0 = Clock::now();
  auto alg = verify::run("su11", "algebra", 1, 0);
  double alg_s = seconds_since(t0);
  bool c1 = ids_pass(alg, {"algebra.antisymmetry", "algebra.jacobi_g",
                           "algebra.jacobi_gstar", "algebra.cocycle",
                           "algebra.pairing_invariance",
                           "algebra.double_bracket_jacobi",
                           "algebra.double_bracket_matrix_consistency"}) &&
            alg_s < 1.0;
  std::snprintf(buf, sizeof(buf),
                "exhaustive bialgebra defects within 1e-12 (%.2f s)", alg_s);
  line(1, c1, buf);

  // ---- 2: two-sided factorization, existence iff positive margin ----
  t0 = Clock::now();
  Su11Model su;
  Rng rng(2024);
  bool c2 = true;
  for (int s = 0; s < 1000 && c2; ++s) {
    auto g = su.random_G(rng);
    auto gamma = su.random_Gs(rng);
    for (Order order : {Order::G_Gstar, Order::Gstar_G}) {
      Eigen::MatrixXcd d = (order == Order::G_Gstar)
                               ? su.embed(g) * su.embed(gamma)
                               : su.embed(gamma) * su.embed(g);
      auto out = su.factorize(d, order);
      if (out.result.has_value() != (out.margin > 0)) c2 = false;
      if (!out.result) continue;
      Eigen::MatrixXcd re = (order == Order::G_Gstar)
                                ? su.embed(out.result->g) * su.embed(out.result->gamma)
                                : su.embed(out.result->gamma) * su.embed(out.result->g);
      if (max_norm(Eigen::MatrixXcd(re - d)) > 1e-10) c2 = false;
    }
  }
  Eigen::MatrixXcd bad(2, 2);
  bad << std::sqrt(2.0), -1.0, 1.0, 0.0;
  auto blocked = su.factorize(bad, Order::Gstar_G);
  if (blocked.result.has_value() || blocked.margin != -1.0) c2 = false;
  double fac_s = seconds_since(t0);
  c2 = c2 && fac_s < 1.0;
  std::snprintf(buf, sizeof(buf),
                "1000 factorization roundtrips and the margin criterion "
                "(%.2f s)",
                fac_s);
  line(2, c2, buf);

  // ---- 3: dressing compatibility laws and infinitesimal fields ----
  auto drs = verify::run("su11", "dressing", 1, 0);
  bool c3 = ids_pass(drs, {"dressing.compat_law_left",
                           "dressing.compat_law_right", "dressing.h_invariance",
                           "dressing.h_automorphism", "dressing.field_fd_G",
                           "dressing.field_fd_Gstar", "dressing.sharp_form"});
  line(3, c3, "dressing action laws and finite-difference field agreement");

  // ---- 4: incompleteness witness with bracketed escape time ----
  t0 = Clock::now();
  Su11Model::GroupPoint start{std::sqrt(2.0), 1.0};
  const double texp = std::sqrt(2.0) - 1.0;
  auto fwd = dressing::flow(su, start, vec3(0, 0, 1), 1.0, 1e-3);
  auto bwd = dressing::flow(su, start, vec3(0, 0, -1), -1.0, 1e-3);
  auto fine = dressing::flow(su, start, vec3(0, 0, 1), 1.0, 5e-4);
  Eigen::VectorXd hh(1);
  hh << 0.7;
  auto hflow = dressing::flow(su, su.h_exp(hh), vec3(0, 0.9, -0.4), 3.0, 1e-2);
  double flow_s = seconds_since(t0);
  bool c4 = fwd.termination == dressing::Termination::Escaped &&
            std::abs(fwd.t_escape - texp) <= 1e-6 &&
            bwd.termination == dressing::Termination::Escaped &&
            std::abs(bwd.t_escape + texp) <= 1e-6 &&
            std::abs(fine.t_escape - fwd.t_escape) <= 2e-7 &&
            fwd.method_disagreement <= 1e-6 &&
            hflow.termination == dressing::Termination::Completed &&
            flow_s < 5.0;
  std::snprintf(buf, sizeof(buf),
                "dressing orbit escapes at |t| = 0.41421356 +/- 1e-6, stable "
                "under dt halving (%.2f s)",
                flow_s);
  line(4, c4, buf);

  // ---- 5: Poisson tensors ----
  auto ten = verify::run("su11", "tensors", 1, 0);
  bool c5 = ids_pass(ten, {"tensors.pi_identity_zero",
                           "tensors.pi_plus_decomposition",
                           "tensors.pi_plus_nondegenerate",
                           "tensors.multiplicativity_G",
                           "tensors.multiplicativity_Gstar",
                           "tensors.pi_h_subgroup",
                           "tensors.dressing_sign_consistency",
                           "tensors.sharp_antisymmetry",
                           "tensors.disc_pushforward_well_defined"});
  line(5, c5, "tensor identities, nondegeneracy and multiplicativity");

  // ---- 6: groupoid axioms and structure maps ----
  auto grp = verify::run("su11", "groupoid", 1, 0);
  bool c6 = ids_pass(grp, {"groupoid.omega_invariant",
                           "groupoid.dressing_form_maps", "groupoid.axioms_G",
                           "groupoid.axioms_Gstar", "groupoid.action_axioms",
                           "groupoid.J_multiplicative",
                           "groupoid.source_target_poisson"});
  line(6, c6, "double groupoid axioms; source/target (anti-)Poisson at 1e-5");

  // ---- 7: momentum identity ----
  bool c7 = ids_pass(grp, {"groupoid.momentum_identity",
                           "groupoid.momentum_closed_form_frame"});
  line(7, c7, "momentum map Hamiltonian identity at 1e-4 over 100 samples");

  // ---- 8: coisotropic reduction bundle ----
  auto red = verify::run("su11", "reduction", 1, 0);
  bool c8 = ids_pass(
      red, {"reduction.poisson_subgroup_condition",
            "reduction.level_closed_under_mult", "reduction.h_action_law",
            "reduction.canonicalize_orbit_invariance", "reduction.coisotropy",
            "reduction.coisotropy_negative_control",
            "reduction.reduced_axioms",
            "reduction.representative_independence",
            "reduction.reduced_source_pushforward", "reduction.disc_zero",
            "reduction.cotangent_chart_section_independence",
            "reduction.cotangent_chart_intertwining"});
  line(8, c8, "reduced groupoid over the disc with its cotangent charts");

  // ---- 9: abelian null model ----
  TrivialModel tm;
  auto tsub = reduction::subgroup_data(tm);
  Rng trng(9);
  double worst = 0.0;
  for (int s = 0; s < 25; ++s) {
    auto g = tm.random_G(trng);
    auto h = tm.random_G(trng);
    auto a = tm.random_Gs(trng);
    auto b = tm.random_Gs(trng);
    worst = std::max(worst, max_norm(tensors::pi_G(tm, g).m));
    worst = std::max(worst, max_norm(tensors::pi_Gstar(tm, a).m));
    worst = std::max(worst, tensors::pi_plus_mismatch(tm, g, a));
    worst = std::max(worst, tensors::multiplicativity_defect_G(tm, g, h));
    worst = std::max(worst, tensors::multiplicativity_defect_Gstar(tm, a, b));
    auto x = groupoid::make(tm, g, a);
    worst = std::max(worst, x.omega_residual);
    auto y = groupoid::make(tm, groupoid::target_G(x), b);
    worst = std::max(worst, groupoid::J_multiplicative_defect(tm, x, y));
    Eigen::MatrixXcd d = tm.embed(g) * tm.embed(a);
    worst = std::max(worst, std::abs(tm.factorize(d, Order::Gstar_G).margin - 1.0));
  }
  Eigen::VectorXd z0(2), s0(2);
  z0 << 0.7, -1.2;
  s0 << 0.4, 2.0;
  auto ra = reduction::reduced_from_chart(tm, tsub, z0, s0);
  Eigen::MatrixXd canonical = Eigen::MatrixXd::Zero(4, 4);
  canonical.topRightCorner(2, 2) = -Eigen::MatrixXd::Identity(2, 2);
  canonical.bottomLeftCorner(2, 2) = Eigen::MatrixXd::Identity(2, 2);
  worst = std::max(worst,
                   max_norm(Eigen::MatrixXd(
                       reduction::reduced_bivector(tm, tsub, ra) - canonical)));
  worst = std::max(worst,
                   reduction::reduced_source_pushforward_defect(tm, tsub, ra));
  for (double zx : {-1.5, 0.0, 2.0})
    worst = std::max(worst, max_norm(tensors::pi_base(tm, Eigen::Vector2d(zx, 0.3))));
  bool c9_report = verify::run("trivial", "all", 1, 0).pass();
  bool c9 = worst <= 1e-14 && c9_report;
  std::snprintf(buf, sizeof(buf),
                "abelian model: every defect functional at %.2e, full suite %s",
                worst, c9_report ? "passes" : "FAILS");
  line(9, c9, buf);

  // ---- 10: full run under a minute, byte-identical reports ----
  t0 = Clock::now();
  auto full_a = verify::run("su11", "all", 7, 0);
  double full_s = seconds_since(t0);
  auto full_b = verify::run("su11", "all", 7, 0);
  bool c10 = full_a.pass() && full_s < 60.0 &&
             full_a.to_json().dump() == full_b.to_json().dump();
  std::snprintf(buf, sizeof(buf),
                "full verification in %.1f s, deterministic report bytes",
                full_s);
  line(10, c10, buf);

  if (failures == 0)
    std::printf("acceptance: all 10 criteria hold\n");
  else
    std::printf("acceptance: %d criterion(s) failing\n", failures);
  return failures;
}
