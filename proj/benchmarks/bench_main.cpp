#include <benchmark/benchmark.h>

#include <random>

#include "qqbethe/backlund.hpp"
#include "qqbethe/bethe.hpp"
#include "qqbethe/opermat.hpp"
#include "qqbethe/qq.hpp"
#include "qqbethe/roots.hpp"

using namespace qqb;

namespace {

// A_r instance with n points per color at 1..n (shifted per color) and twist (1/2, 1/3, ...).
QQInstance<Rational> chain_instance(int r, int n) {
  std::vector<SingularPoint<Rational>> pts;
  for (int j = 0; j < r; ++j)
    for (int k = 0; k < n; ++k) {
      std::vector<int> w(r, 0);
      w[j] = 1;
      pts.push_back({Rational(k + 1) + Rational(j, r + 1), w});
    }
  std::vector<Rational> zeta;
  for (int i = 0; i < r; ++i) zeta.push_back(Rational(1, i + 2));
  return make_instance<Rational>(make_type('A', r), pts, zeta);
}

InfinitePartition<Complex> all_points(const QQInstance<Complex>& inst) {
  InfinitePartition<Complex> part;
  part.w.resize(inst.rank());
  for (const auto& p : inst.points)
    for (int j = 0; j < inst.rank(); ++j)
      if (p.weights[j]) part.w[j].push_back(p.z);
  return part;
}

void BM_CompleteMinusExact(benchmark::State& st) {
  auto inst = chain_instance(2, static_cast<int>(st.range(0)));
  std::vector<Poly<Rational>> qp(2, Poly<Rational>::constant(Rational(1)));
  for (auto _ : st) benchmark::DoNotOptimize(complete_minus(inst, qp));
}
BENCHMARK(BM_CompleteMinusExact)->Arg(2)->Arg(8)->Arg(32);

void BM_SeedAndContinue(benchmark::State& st) {
  PrecisionScope ps(256);
  auto inst = to_numeric(chain_instance(static_cast<int>(st.range(0)), static_cast<int>(st.range(1))));
  auto part = all_points(inst);
  for (auto _ : st) benchmark::DoNotOptimize(seed_and_continue(inst, part));
}
BENCHMARK(BM_SeedAndContinue)->Args({1, 2})->Args({2, 2})->Args({3, 2})->Unit(benchmark::kMillisecond);

void BM_NewtonPolish(benchmark::State& st) {
  PrecisionScope ps(256);
  auto inst = to_numeric(chain_instance(2, 3));
  auto br = seed_and_continue(inst, all_points(inst));
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1e-6, 1e-6);
  for (auto& r : br.roots)
    for (auto& w : r) w += Complex(Real::from_double(u(rng)), Real::from_double(u(rng)));
  for (auto _ : st) benchmark::DoNotOptimize(solve_newton(inst, br));
}
BENCHMARK(BM_NewtonPolish)->Unit(benchmark::kMillisecond);

void BM_PolyRoots(benchmark::State& st) {
  PrecisionScope ps(static_cast<int>(st.range(1)));
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1, 1);
  std::vector<Complex> c;
  for (int k = 0; k < st.range(0); ++k) c.push_back(Complex(Real::from_double(u(rng)), Real::from_double(u(rng))));
  c.push_back(Complex(1L));
  Poly<Complex> p(c);
  for (auto _ : st) benchmark::DoNotOptimize(roots(p));
}
BENCHMARK(BM_PolyRoots)->Args({8, 128})->Args({8, 512})->Args({32, 256})->Unit(benchmark::kMillisecond);

void BM_ChainW0(benchmark::State& st) {
  auto inst = chain_instance(2, 1);
  std::vector<Poly<Rational>> qp(2, Poly<Rational>::constant(Rational(1)));
  auto sol = complete_minus(inst, qp);
  auto word = w0_reduced_word(inst.type);
  ChainOptions co;
  co.throw_on_break = false;
  for (auto _ : st) benchmark::DoNotOptimize(chain(inst, sol, word, co));
}
BENCHMARK(BM_ChainW0);

}  // namespace

BENCHMARK_MAIN();
