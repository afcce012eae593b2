#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>

#include "vsdg/stokes.hpp"
#include "vsdg/vlasov.hpp"

using namespace vsdg;

namespace {

const Rectangle kX{{0.0, 0.0}, {1.0, 1.0}};
const Rectangle kV{{-1.0, -1.0}, {1.0, 1.0}};

std::shared_ptr<const PhaseSpace> space(int n, int k) { return make_phase_space(kX, {n, n}, k, kV, {2 * n, 2 * n}, k); }

PhaseField bump(const std::shared_ptr<const PhaseSpace>& s) {
  return project_initial(s, [](const Vec2& x, const Vec2& v) {
    return (1.0 + 0.5 * std::sin(2 * std::numbers::pi * x[0])) * std::exp(-4.0 * (v[0] * v[0] + v[1] * v[1]));
  });
}

VelocityField swirl(const std::shared_ptr<const PhaseSpace>& s) {
  VelocityField u(s->x());
  const int pts = s->x()->degree() + 3;
  u.comp[0] = project_scalar(s->x(), [](const Vec2& x) { return 0.3 * std::sin(2 * std::numbers::pi * x[1]); }, pts);
  u.comp[1] = project_scalar(s->x(), [](const Vec2& x) { return 0.3 * std::cos(2 * std::numbers::pi * x[0]); }, pts);
  return u;
}

void BM_ApplyX(benchmark::State& state) {
  const auto s = space(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  const TransportOperator op(s);
  const PhaseField f = bump(s);
  PhaseField r(s);
  for (auto _ : state) {
    op.apply_x(f, r);
    benchmark::DoNotOptimize(r.coeffs.data());
  }
  state.counters["dofs"] = static_cast<double>(s->num_dofs());
}

void BM_ApplyV(benchmark::State& state) {
  const auto s = space(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  const TransportOperator op(s);
  const PhaseField f = bump(s);
  const VelocityField u = swirl(s);
  PhaseField r(s);
  for (auto _ : state) {
    op.apply_v(u, f, r);
    benchmark::DoNotOptimize(r.coeffs.data());
  }
  state.counters["dofs"] = static_cast<double>(s->num_dofs());
}

void BM_Moments(benchmark::State& state) {
  const auto s = space(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  const PhaseField f = bump(s);
  for (auto _ : state) benchmark::DoNotOptimize(compute_moments(f));
}

void BM_StokesSolve(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0)), k = static_cast<int>(state.range(1));
  auto xs = std::make_shared<const DGSpace2D>(build_mesh(kX, {n, n}, {true, true}), k);
  const StokesSolver st(xs, 10.0);
  const ScalarField rho = project_scalar(xs, [](const Vec2& x) { return 1.0 + 0.5 * std::sin(2 * std::numbers::pi * x[0]); }, k + 3);
  const VectorFunction g = [](const Vec2& x) { return Vec2{std::sin(2 * std::numbers::pi * x[1]), 0.0}; };
  for (auto _ : state) benchmark::DoNotOptimize(st.solve(rho, nullptr, g));
}

void BM_Projection(benchmark::State& state) {
  const auto s = space(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(bump(s));
}

}  // namespace

BENCHMARK(BM_ApplyX)->Args({4, 1})->Args({8, 1})->Args({4, 2})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ApplyV)->Args({4, 1})->Args({8, 1})->Args({4, 2})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Moments)->Args({8, 1})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_StokesSolve)->Args({8, 1})->Args({16, 1})->Args({8, 2})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Projection)->Args({4, 1})->Args({8, 1})->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
