#include <CLI11.hpp>
#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "plg/common.hpp"
#include "plg/dressing.hpp"
#include "plg/groupoid.hpp"
#include "plg/models.hpp"
#include "plg/reduction.hpp"
#include "plg/verify.hpp"

namespace {

constexpr const char* kReportSchema =
    "report JSON: {schema:1, model, suite, seed, samples, precision, checks:"
    "[{id, samples, max_defect, tolerance, pass}...] sorted by id, pass}";

constexpr const char* kCsvSchema =
    "CSV: header t,re_alpha,im_alpha,re_beta,im_beta,margin; one %.17g row "
    "per sample; trailing comment '# termination=completed|step_limit|"
    "escaped(t_escape=...)'";

constexpr const char* kDemoSchema =
    "transcript JSON: {schema:1, model, tolerance, inputs, a, b, "
    "a_compose_b (element or not_composable:{mismatch}), c_over_target_a, "
    "a_compose_c, unit_checks, replay, max_residual, pass}";

int write_text(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::cout << text;
    return 0;
  }
  std::ofstream os(out_path);
  if (!os) {
    std::cerr << "cannot open " << out_path << "\n";
    return 2;
  }
  os << text;
  return 0;
}

int run_verify(const std::string& model, const std::string& suite,
               std::uint64_t seed, long samples, const std::string& out_path) {
  auto rep = plg::verify::run(model, suite, seed, samples);
  std::string text = rep.to_json().dump(2) + "\n";
  int rc = write_text(out_path, text);
  if (rc != 0) return rc;
  long failed = 0;
  for (const auto& c : rep.checks)
    if (!c.pass) ++failed;
  std::cerr << "verify: " << model << "/" << suite << " "
            << (rep.pass() ? "PASS" : "FAIL") << " (" << rep.checks.size()
            << " checks, " << failed << " failed)\n";
  return rep.pass() ? 0 : 1;
}

int run_orbit(const std::string& model, const std::vector<double>& alpha,
              const std::vector<double>& beta, const std::vector<double>& xi,
              double t_end, double dt, const std::string& out_path) {
  if (model != "su11") {
    std::cerr << "orbit: start point is parametrized as (alpha, beta); only "
                 "the su11 model supports this chart\n";
    return 2;
  }
  plg::Su11Model m;
  plg::Su11Model::GroupPoint start{{alpha[0], alpha[1]}, {beta[0], beta[1]}};
  double membership =
      std::abs(std::norm(start.alpha) - std::norm(start.beta) - 1.0);
  if (membership > 1e-6) {
    std::cerr << "orbit: invalid start point, |alpha|^2 - |beta|^2 - 1 = "
              << membership << "\n";
    return 2;
  }
  start = m.renormalized(start);
  Eigen::VectorXd x(3);
  x << xi[0], xi[1], xi[2];

  auto trace = plg::dressing::flow(m, start, x, t_end, dt);
  std::ostringstream csv;
  plg::dressing::write_flow_csv(m, trace, csv);
  int rc = write_text(out_path, csv.str());
  if (rc != 0) return rc;

  std::cerr << "orbit: termination=" << plg::dressing::to_string(trace.termination);
  if (trace.termination == plg::dressing::Termination::Escaped) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), " t_escape=%.9g", trace.t_escape);
    std::cerr << buf;
  }
  std::cerr << " samples=" << trace.times.size()
            << " method_disagreement=" << trace.method_disagreement << "\n";
  return 0;
}

template <class M>
int run_reduce_demo_impl(const M& m, const std::vector<double>& z1v,
                         const std::vector<double>& z2v,
                         const std::vector<double>& gammav, std::uint64_t seed,
                         const std::string& out_path) {
  namespace red = plg::reduction;
  const double tol = 1e-8;
  auto sub = red::subgroup_data(m);

  Eigen::VectorXd z1 = Eigen::Map<const Eigen::VectorXd>(z1v.data(), z1v.size());
  Eigen::VectorXd z2 = Eigen::Map<const Eigen::VectorXd>(z2v.data(), z2v.size());
  Eigen::VectorXd s =
      Eigen::Map<const Eigen::VectorXd>(gammav.data(), gammav.size());

  nlohmann::json j;
  j["schema"] = 1;
  j["model"] = m.name();
  j["tolerance"] = tol;
  j["inputs"] = {{"z1", z1v}, {"z2", z2v}, {"gamma", gammav}, {"seed", seed}};

  double max_residual = 0.0;
  auto record = [&](const red::ReducedElement<M>& e) {
    nlohmann::json je;
    je["element"] = red::to_json(m, e);
    je["source"] = std::vector<double>(e.z.data(), e.z.data() + e.z.size());
    Eigen::VectorXd t = red::reduced_target(m, e);
    je["target"] = std::vector<double>(t.data(), t.data() + t.size());
    max_residual = std::max(max_residual, e.rep.omega_residual);
    max_residual = std::max(max_residual, red::level_residual(m, e.rep));
    return je;
  };

  auto a = red::reduced_from_chart(m, sub, z1, s);
  auto b = red::reduced_from_chart(m, sub, z2, s);
  j["a"] = record(a);
  j["b"] = record(b);

  try {
    auto ab = red::reduced_mult(m, a, b);
    j["a_compose_b"] = record(ab);
  } catch (const plg::NotComposable& e) {
    j["a_compose_b"] = {{"not_composable", {{"mismatch", e.mismatch}}}};
  }

  auto c = red::reduced_from_chart(m, sub, red::reduced_target(m, a), s);
  j["c_over_target_a"] = record(c);
  auto ac = red::reduced_mult(m, a, c);
  j["a_compose_c"] = record(ac);

  auto ainv = red::reduced_inverse(m, a);
  double d_right = red::reduced_dist(
      m, red::reduced_mult(m, a, ainv),
      red::reduced_unit(m, red::reduced_source(a)));
  double d_left = red::reduced_dist(
      m, red::reduced_mult(m, ainv, a),
      red::reduced_unit(m, red::reduced_target(m, a)));
  j["unit_checks"] = {{"a_ainv_vs_unit_source", d_right},
                      {"ainv_a_vs_unit_target", d_left}};
  max_residual = std::max({max_residual, d_right, d_left});

  // Same composition with h-shifted representatives; the classes must agree.
  plg::Rng rng(seed ^ 0x9e3779b97f4a7c15ull);
  auto a2 = red::reduce(m, red::h_act(m, m.h_random(rng), a.rep));
  auto c2 = red::reduce(m, red::h_act(m, m.h_random(rng), c.rep));
  double replay = red::reduced_dist(m, red::reduced_mult(m, a2, c2), ac);
  j["replay"] = {{"class_distance", replay}};
  max_residual = std::max(max_residual, replay);

  j["max_residual"] = max_residual;
  bool pass = max_residual <= tol;
  j["pass"] = pass;

  int rc = write_text(out_path, j.dump(2) + "\n");
  if (rc != 0) return rc;
  std::cerr << "reduce-demo: " << (pass ? "PASS" : "FAIL")
            << " max_residual=" << max_residual << "\n";
  return pass ? 0 : 1;
}

int run_reduce_demo(const std::string& model, const std::vector<double>& z1,
                    const std::vector<double>& z2,
                    const std::vector<double>& gamma, std::uint64_t seed,
                    const std::string& out_path) {
  return plg::models::with_model(model, [&](auto& m) {
    if (static_cast<int>(z1.size()) != m.base_dim() ||
        static_cast<int>(z2.size()) != m.base_dim()) {
      std::cerr << "reduce-demo: z must have " << m.base_dim()
                << " coordinates\n";
      return 2;
    }
    if (static_cast<int>(gamma.size()) != m.n() - m.h_dim()) {
      std::cerr << "reduce-demo: gamma must have " << m.n() - m.h_dim()
                << " coordinates\n";
      return 2;
    }
    if (m.name() == "su11") {
      for (const auto* z : {&z1, &z2})
        if ((*z)[0] * (*z)[0] + (*z)[1] * (*z)[1] >= 1.0) {
          std::cerr << "reduce-demo: base points must lie inside the unit "
                       "disc\n";
          return 2;
        }
    }
    try {
      return run_reduce_demo_impl(m, z1, z2, gamma, seed, out_path);
    } catch (const std::exception& e) {
      std::cerr << "reduce-demo: " << e.what() << "\n";
      return 1;
    }
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Poisson-Lie groups, dressing flows, and the symplectic "
               "groupoid of the Poisson unit disc"};
  app.require_subcommand(1);

  std::string model = "su11";
  std::string suite = "all";
  std::uint64_t seed = 0;
  long samples = 0;
  std::string out_path;

  auto model_names = plg::models::names();
  auto suite_names = plg::verify::suite_names();

  auto* v = app.add_subcommand("verify", "Run a verification suite and emit "
                                         "a JSON report");
  v->add_option("--model", model, "model name")
      ->required()
      ->check(CLI::IsMember(model_names));
  v->add_option("--suite", suite, "check suite")
      ->check(CLI::IsMember(suite_names));
  v->add_option("--seed", seed, "RNG seed (reports are deterministic in it)");
  v->add_option("--samples", samples, "override sample count of sampled checks")
      ->check(CLI::NonNegativeNumber);
  v->add_option("--out", out_path, "write the report here instead of stdout");
  v->footer(kReportSchema);

  std::vector<double> alpha{1.0, 0.0}, beta{0.0, 0.0}, xi{0.0, 0.0, 0.0};
  double t_end = 1.0, dt = 1e-3;

  auto* o = app.add_subcommand("orbit", "Integrate a dressing orbit and emit "
                                        "the trace as CSV");
  o->add_option("--model", model, "model name (su11 only)")
      ->check(CLI::IsMember(model_names));
  o->add_option("--alpha", alpha, "start alpha as re,im")
      ->delimiter(',')
      ->expected(2);
  o->add_option("--beta", beta, "start beta as re,im")
      ->delimiter(',')
      ->expected(2);
  o->add_option("--xi", xi, "dual-algebra direction coordinates")
      ->delimiter(',')
      ->expected(3);
  o->add_option("--t-end", t_end, "signed integration horizon");
  o->add_option("--dt", dt, "sampling step")->check(CLI::PositiveNumber);
  o->add_option("--out", out_path, "write the CSV here instead of stdout");
  o->footer(kCsvSchema);

  std::vector<double> z1{0.0, 0.0}, z2{0.0, 0.0}, gamma{0.0, 0.0};

  auto* r = app.add_subcommand("reduce-demo",
                               "Build two reduced classes, compose them, and "
                               "print the transcript");
  r->add_option("--model", model, "model name")
      ->check(CLI::IsMember(model_names));
  r->add_option("--z1", z1, "base point of the first class")
      ->delimiter(',')
      ->expected(2);
  r->add_option("--z2", z2, "base point of the second class")
      ->delimiter(',')
      ->expected(2);
  r->add_option("--gamma", gamma, "transverse coordinates of the dual leg")
      ->delimiter(',')
      ->expected(2);
  r->add_option("--seed", seed, "seed for the representative replay");
  r->add_option("--out", out_path, "write the transcript here instead of stdout");
  r->footer(kDemoSchema);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (v->parsed()) return run_verify(model, suite, seed, samples, out_path);
    if (o->parsed()) return run_orbit(model, alpha, beta, xi, t_end, dt, out_path);
    if (r->parsed()) return run_reduce_demo(model, z1, z2, gamma, seed, out_path);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
