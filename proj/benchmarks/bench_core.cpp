#include <benchmark/benchmark.h>

#include <Eigen/Dense>

#include "plg/dressing.hpp"
#include "plg/groupoid.hpp"
#include "plg/su11.hpp"
#include "plg/tensors.hpp"

namespace {

using plg::Su11Model;

Su11Model::GroupPoint sample_g(const Su11Model& m, plg::Rng& rng) {
  return m.random_G(rng);
}

void BM_factorize(benchmark::State& state) {
  Su11Model m;
  plg::Rng rng(7);
  Eigen::MatrixXcd d = m.embed(m.random_G(rng)) * m.embed(m.random_Gs(rng));
  for (auto _ : state) {
    auto out = m.factorize(d, plg::Order::Gstar_G);
    benchmark::DoNotOptimize(out);
  }
}
BENCHMARK(BM_factorize);

void BM_pi_plus(benchmark::State& state) {
  Su11Model m;
  plg::Rng rng(7);
  auto g = sample_g(m, rng);
  auto gamma = m.random_Gs(rng);
  for (auto _ : state) {
    auto pi = plg::tensors::pi_plus(m, g, gamma);
    benchmark::DoNotOptimize(pi.m);
  }
}
BENCHMARK(BM_pi_plus);

void BM_groupoid_mult(benchmark::State& state) {
  Su11Model m;
  plg::Rng rng(7);
  auto x = plg::groupoid::make(m, sample_g(m, rng), m.random_Gs(rng));
  auto y = plg::groupoid::make(m, x.g2, m.random_Gs(rng));
  for (auto _ : state) {
    auto xy = plg::groupoid::mult_G(m, x, y);
    benchmark::DoNotOptimize(xy);
  }
}
BENCHMARK(BM_groupoid_mult);

void BM_flow_step(benchmark::State& state) {
  Su11Model m;
  Su11Model::GroupPoint start{2.0, std::sqrt(3.0)};
  Eigen::VectorXd xi(3);
  xi << 0.3, 0.2, -0.1;
  plg::dressing::detail::ExactCurve<Su11Model> curve(m, start);
  double t = 0.0;
  for (auto _ : state) {
    t += 1e-4;
    if (t > 0.2) t = 0.0;
    auto out = curve.at(t, xi);
    benchmark::DoNotOptimize(out);
  }
}
BENCHMARK(BM_flow_step);

}  // namespace

BENCHMARK_MAIN();
