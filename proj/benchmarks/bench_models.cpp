#include "pneumodel/config.hpp"
#include "pneumodel/control.hpp"
#include "pneumodel/lisper.hpp"
#include "pneumodel/plant.hpp"
#include "pneumodel/scasper.hpp"
#include "pneumodel/units.hpp"

#include <benchmark/benchmark.h>

using namespace pneumodel;

namespace {

const ModelConfig& cfg() {
    static const ModelConfig c = default_config();
    return c;
}

void bm_solve_bellow_geometry(benchmark::State& state) {
    const ModelConfig& c = cfg();
    const RootConfig rc{c.sim.abs_tol, c.sim.x_tol, c.sim.max_iter};
    double p = 1e4;
    for (auto _ : state) {
        benchmark::DoNotOptimize(solve_bellow_geometry(c.lisper, c.material, p, rc));
        p = (p < 9e4) ? p + 1e3 : 1e4;
    }
}
BENCHMARK(bm_solve_bellow_geometry);

void bm_output_force(benchmark::State& state) {
    const ModelConfig& c = cfg();
    const double bend = deg_to_rad(45.0);
    for (auto _ : state)
        benchmark::DoNotOptimize(output_force(c.lisper, c.material, 5e4, bend, c.sim));
}
BENCHMARK(bm_output_force);

void bm_free_bending_angle(benchmark::State& state) {
    const ModelConfig& c = cfg();
    for (auto _ : state)
        benchmark::DoNotOptimize(free_bending_angle(c.lisper, c.material, 8e4, c.sim));
}
BENCHMARK(bm_free_bending_angle);

void bm_inverse_pressure(benchmark::State& state) {
    const ModelConfig& c = cfg();
    const double bend = deg_to_rad(30.0);
    for (auto _ : state)
        benchmark::DoNotOptimize(inverse_pressure(c.lisper, c.material, bend, 5.0, c.sim));
}
BENCHMARK(bm_inverse_pressure);

void bm_scasper_total_torque(benchmark::State& state) {
    const ModelConfig& c = cfg();
    for (auto _ : state)
        benchmark::DoNotOptimize(total_torque(c.scasper, c.material, 8e4, 0.5));
}
BENCHMARK(bm_scasper_total_torque);

void bm_plant_step(benchmark::State& state) {
    const ModelConfig& c = cfg();
    PlantState s = initial_state(c);
    const PressureCommand cmd{8e4, 4e4};
    for (auto _ : state) {
        s = step(s, cmd, c, c.sim.dt);
        benchmark::DoNotOptimize(s);
        if (s.t > 5.0) s = initial_state(c);
    }
}
BENCHMARK(bm_plant_step);

void bm_position_controller_step(benchmark::State& state) {
    const ModelConfig& c = cfg();
    PidState pid;
    const double target = deg_to_rad(20.0);
    const double real = deg_to_rad(12.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            position_controller_step(c, JointId::elbow, target, real, 3e4, pid, 0.01));
    }
}
BENCHMARK(bm_position_controller_step);

} // namespace

BENCHMARK_MAIN();
