#include <benchmark/benchmark.h>

#include <random>

#include "officelab/contacts.hpp"
#include "officelab/decoder.hpp"
#include "officelab/fusion.hpp"
#include "officelab/io.hpp"
#include "officelab/scenarios.hpp"
#include "officelab/sensors.hpp"
#include "officelab/simulator.hpp"

using namespace officelab;

namespace {

// office50 with `ticks` per day and one day.
WorldConfig office(int ticks) { return scenarios::office50(1, ticks, 1); }

void BM_Simulate(benchmark::State& state) {
  const auto cfg = office(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(run_simulation(cfg));
  state.SetItemsProcessed(state.iterations() * state.range(0) *
                          static_cast<int64_t>(cfg.agents.size()));
}
BENCHMARK(BM_Simulate)->Arg(480)->Arg(4800);

void BM_Observe(benchmark::State& state) {
  const auto cfg = office(480);
  const auto records = run_simulation(cfg);
  for (auto _ : state)
    benchmark::DoNotOptimize(generate_event_log(records, cfg.sensors, cfg.rng_seed));
}
BENCHMARK(BM_Observe);

void BM_Likelihood(benchmark::State& state) {
  const auto cfg = office(480);
  const auto records = run_simulation(cfg);
  const auto events = generate_event_log(records, cfg.sensors, cfg.rng_seed);
  const EventIndex index(events, cfg.days, cfg.ticks_per_day);
  const EvidenceModel model(cfg.floor_plan, cfg.sensors, cfg.agents.size());
  int tick = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(model.likelihood(index.at(0, tick), cfg.agents[0].id));
    tick = (tick + 1) % cfg.ticks_per_day;
  }
}
BENCHMARK(BM_Likelihood);

void BM_FuseRun(benchmark::State& state) {
  const auto cfg = office(static_cast<int>(state.range(0)));
  const auto records = run_simulation(cfg);
  const auto events = generate_event_log(records, cfg.sensors, cfg.rng_seed);
  const auto motion = build_motion_model(cfg);
  for (auto _ : state) benchmark::DoNotOptimize(fuse_run(events, cfg, motion));
}
BENCHMARK(BM_FuseRun)->Arg(480)->Unit(benchmark::kMillisecond);

void BM_Viterbi(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto ticks = static_cast<std::size_t>(state.range(1));
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.01, 1.0);
  TransitionMatrix kernel(n);
  for (std::size_t i = 0; i < n; ++i) {
    double total = 0;
    for (std::size_t j = 0; j < n; ++j) total += kernel(i, j) = u(rng);
    for (std::size_t j = 0; j < n; ++j) kernel(i, j) /= total;
  }
  Distribution initial(n, 1.0 / static_cast<double>(n));
  std::vector<Distribution> evidence(ticks, Distribution(n));
  for (auto& e : evidence)
    for (auto& v : e) v = u(rng);
  for (auto _ : state) benchmark::DoNotOptimize(viterbi_decode(initial, kernel, evidence));
  state.SetItemsProcessed(state.iterations() * state.range(1));
}
BENCHMARK(BM_Viterbi)->Args({10, 480})->Args({50, 480})->Unit(benchmark::kMicrosecond);

void BM_Contacts(benchmark::State& state) {
  const auto cfg = scenarios::office50(1);
  const auto tracks = io::tracks_from_records(run_simulation(cfg), cfg);
  for (auto _ : state)
    benchmark::DoNotOptimize(extract_contacts(tracks, cfg.floor_plan, cfg.contacts));
}
BENCHMARK(BM_Contacts);

}  // namespace

BENCHMARK_MAIN();
