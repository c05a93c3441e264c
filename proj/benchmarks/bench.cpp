// Microbenchmarks for the hot paths: matrix assembly, the CG solve against the
// per-step system matrix, and full time steps with and without forcing.

#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "wavefem/assembly.hpp"
#include "wavefem/linalg.hpp"
#include "wavefem/mesh.hpp"
#include "wavefem/presets.hpp"
#include "wavefem/stepper.hpp"

namespace {

constexpr double kPi = 3.14159265358979323846;

void BM_AssembleMass(benchmark::State& state) {
    const int N = static_cast<int>(state.range(0));
    wavefem::Mesh mesh = wavefem::build_rect_mesh(N, N, 0.0, 1.0, 0.0, 1.0);
    auto one = wavefem::CoefficientField::constant(1.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(wavefem::assemble_weighted_mass(mesh, one));
    }
    state.SetComplexityN(N);
}
BENCHMARK(BM_AssembleMass)->RangeMultiplier(2)->Range(8, 64)->Complexity();

void BM_AssembleStiffness(benchmark::State& state) {
    const int N = static_cast<int>(state.range(0));
    wavefem::Mesh mesh = wavefem::build_rect_mesh(N, N, 0.0, 1.0, 0.0, 1.0);
    auto one = wavefem::CoefficientField::constant(1.0);
    auto zero = wavefem::CoefficientField::constant(0.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(wavefem::assemble_stiffness(mesh, one, zero, one, zero));
    }
    state.SetComplexityN(N);
}
BENCHMARK(BM_AssembleStiffness)->RangeMultiplier(2)->Range(8, 64)->Complexity();

void BM_CgStepMatrix(benchmark::State& state) {
    const int N = static_cast<int>(state.range(0));
    wavefem::SimConfig cfg;
    cfg.nx = cfg.ny = N;
    wavefem::Mesh mesh = wavefem::build_rect_mesh(N, N, 0.0, 1.0, 0.0, 1.0);
    cfg.k = mesh.h * mesh.h;
    wavefem::PrecomputedSystem sys = wavefem::precompute(cfg, mesh);
    std::vector<double> b(sys.S.n);
    for (std::size_t i = 0; i < b.size(); ++i) b[i] = std::sin(0.37 * (1.0 + i));
    for (auto _ : state) {
        benchmark::DoNotOptimize(wavefem::cg_solve(sys.S, b));
    }
    state.SetComplexityN(N);
}
BENCHMARK(BM_CgStepMatrix)->RangeMultiplier(2)->Range(8, 64)->Complexity();

void BM_StepUnforced(benchmark::State& state) {
    const int N = static_cast<int>(state.range(0));
    wavefem::SimConfig cfg;
    cfg.nx = cfg.ny = N;
    cfg.damping = wavefem::CoefficientField::constant(2.0);
    cfg.u0 = [](double x, double y) { return std::sin(kPi * x) * std::sin(kPi * y); };
    cfg.u1 = [](double, double) { return 0.0; };
    wavefem::Mesh mesh = wavefem::build_rect_mesh(N, N, 0.0, 1.0, 0.0, 1.0);
    cfg.k = mesh.h * mesh.h;
    wavefem::PrecomputedSystem sys = wavefem::precompute(cfg, mesh);
    auto [U0, U1] = wavefem::initialize(cfg, mesh);
    wavefem::StepperState st;
    st.U_prev = U0;
    st.U_curr = U1;
    st.n = 1;
    st.t = cfg.k;
    for (auto _ : state) {
        st = wavefem::step(st, sys, cfg, mesh);
        benchmark::DoNotOptimize(st.U_curr.data());
    }
    state.SetComplexityN(N);
}
BENCHMARK(BM_StepUnforced)->RangeMultiplier(2)->Range(8, 64)->Complexity();

void BM_StepForced(benchmark::State& state) {
    const int N = static_cast<int>(state.range(0));
    wavefem::PresetInstance inst = wavefem::get_preset("example3").build(N, {});
    wavefem::Mesh mesh = wavefem::build_rect_mesh(N, N, inst.sim.x0, inst.sim.x1, inst.sim.y0,
                                                  inst.sim.y1);
    inst.sim.k = mesh.h * mesh.h;
    wavefem::PrecomputedSystem sys = wavefem::precompute(inst.sim, mesh);
    auto [U0, U1] = wavefem::initialize(inst.sim, mesh);
    wavefem::StepperState st;
    st.U_prev = U0;
    st.U_curr = U1;
    st.n = 1;
    st.t = inst.sim.k;
    for (auto _ : state) {
        st = wavefem::step(st, sys, inst.sim, mesh);
        benchmark::DoNotOptimize(st.U_curr.data());
    }
    state.SetComplexityN(N);
}
BENCHMARK(BM_StepForced)->RangeMultiplier(2)->Range(8, 64)->Complexity();

}  // namespace

BENCHMARK_MAIN();
