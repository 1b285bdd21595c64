#include <doctest.h>

#include <algorithm>
#include <stdexcept>
#include <string>

#include "plg/verify.hpp"

using namespace plg;

namespace {
const report::CheckResult* find(const report::VerificationReport& r,
                                const std::string& id) {
  for (const auto& c : r.checks)
    if (c.id == id) return &c;
  return nullptr;
}
}  // namespace

TEST_CASE("abelian model passes the algebra suite") {
  auto rep = verify::run("trivial", "algebra", 1, 0);
  CHECK(rep.pass());
  CHECK(rep.model == "trivial");
  CHECK(rep.suite == "algebra");
  CHECK(rep.schema == 1);
  CHECK(rep.checks.size() >= 8);
  for (const auto& c : rep.checks) {
    CHECK(c.pass);
    CHECK(c.max_defect <= c.tolerance);
  }

  auto* jac = find(rep, "algebra.jacobi_g");
  REQUIRE(jac != nullptr);
  CHECK(jac->samples == 27);  // exhaustive over basis triples, n = 3
}

TEST_CASE("sample override touches only the randomized checks") {
  auto rep = verify::run("trivial", "algebra", 1, 7);
  auto* sampled = find(rep, "algebra.ad_pairing_invariance");
  REQUIRE(sampled != nullptr);
  CHECK(sampled->samples == 7);
  auto* exhaustive = find(rep, "algebra.jacobi_g");
  REQUIRE(exhaustive != nullptr);
  CHECK(exhaustive->samples == 27);
}

TEST_CASE("reports are byte-for-byte deterministic") {
  auto a = verify::run("trivial", "groupoid", 42, 15);
  auto b = verify::run("trivial", "groupoid", 42, 15);
  CHECK(a.to_json().dump(2) == b.to_json().dump(2));

  auto c = verify::run("su11", "tensors", 7, 10);
  auto d = verify::run("su11", "tensors", 7, 10);
  CHECK(c.to_json().dump(2) == d.to_json().dump(2));
  CHECK(c.pass());
}

TEST_CASE("every suite of the abelian model passes") {
  auto rep = verify::run("trivial", "all", 3, 10);
  CHECK(rep.pass());
  // the full set covers every module
  bool has_reduction = false, has_dressing = false;
  for (const auto& c : rep.checks) {
    if (c.id.rfind("reduction.", 0) == 0) has_reduction = true;
    if (c.id.rfind("dressing.", 0) == 0) has_dressing = true;
  }
  CHECK(has_reduction);
  CHECK(has_dressing);
}

TEST_CASE("hyperbolic model passes a thinned dressing suite") {
  auto rep = verify::run("su11", "dressing", 11, 8);
  CHECK(rep.pass());
  auto* witness = find(rep, "dressing.flow_escape_witness");
  REQUIRE(witness != nullptr);
  CHECK(witness->pass);
}

TEST_CASE("unknown model or suite is rejected") {
  CHECK_THROWS_AS(verify::run("so3", "all", 0, 0), std::invalid_argument);
  CHECK_THROWS_AS(verify::run("trivial", "cohomology", 0, 0),
                  std::invalid_argument);
}

TEST_CASE("suite registry") {
  auto names = verify::suite_names();
  for (const char* want :
       {"all", "algebra", "dressing", "tensors", "groupoid", "reduction"})
    CHECK(std::find(names.begin(), names.end(), want) != names.end());
}

TEST_CASE("serialized reports are sorted and carry the run parameters") {
  auto rep = verify::run("trivial", "tensors", 9, 5);
  auto j = rep.to_json();
  CHECK(j["schema"] == 1);
  CHECK(j["model"] == "trivial");
  CHECK(j["suite"] == "tensors");
  CHECK(j["seed"] == 9);
  CHECK(j["samples"] == 5);
  CHECK(j["precision"] == "double");
  REQUIRE(j.contains("checks"));
  std::string prev;
  for (const auto& c : j["checks"]) {
    std::string id = c["id"].get<std::string>();
    CHECK(prev < id);
    prev = id;
    for (const char* key : {"samples", "max_defect", "tolerance", "pass"})
      CHECK(c.contains(key));
  }
}
