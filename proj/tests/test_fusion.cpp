#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "officelab/fusion.hpp"
#include "officelab/scenarios.hpp"
#include "officelab/simulator.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

using namespace officelab;
using testing_support::line_plan;
using testing_support::make_agent;
using testing_support::make_config;

namespace {

const TransitionMatrix kTwoState{{0.7, 0.3}, {0.4, 0.6}};

SensorSpec reader(SensorId id, std::vector<LocationId> coverage, double pd,
                  double pfp, double pc) {
  SensorSpec s;
  s.id = id;
  s.kind = SensorKind::tag_reader;
  s.coverage = std::move(coverage);
  s.p_detect = pd;
  s.p_false_positive = pfp;
  s.p_confuse = pc;
  return s;
}

Distribution random_distribution(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(0.01, 1.0);
  Distribution d(n);
  double total = 0;
  for (auto& v : d) total += v = u(rng);
  for (auto& v : d) v /= total;
  return d;
}

double sum(const Distribution& d) {
  double s = 0;
  for (double v : d) s += v;
  return s;
}

}  // namespace

TEST(Predict, PointMassSelectsRow) {
  const std::vector<double> b{1, 0};
  const auto out = predict(b, kTwoState);
  EXPECT_NEAR(out[0], 0.7, 1e-15);
  EXPECT_NEAR(out[1], 0.3, 1e-15);
}

TEST(Predict, IdentityKeepsBelief) {
  const std::vector<double> b{0.2, 0.5, 0.3};
  EXPECT_EQ(predict(b, TransitionMatrix::identity(3)), Distribution(b));
}

TEST(Predict, HandEvaluatedMixture) {
  const std::vector<double> b{0.5, 0.5};
  const auto out = predict(b, kTwoState);
  EXPECT_NEAR(out[0], 0.55, 1e-12);
  EXPECT_NEAR(out[1], 0.45, 1e-12);
}

TEST(Predict, PreservesMassOnRandomKernels) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + trial % 7;
    TransitionMatrix k(n);
    for (std::size_t i = 0; i < n; ++i) {
      const auto row = random_distribution(rng, n);
      for (std::size_t j = 0; j < n; ++j) k(i, j) = row[j];
    }
    const auto out = predict(random_distribution(rng, n), k);
    EXPECT_NEAR(sum(out), 1.0, 1e-12);
    for (double v : out) EXPECT_GE(v, 0.0);
  }
}

TEST(Update, HandComputedBayesRule) {
  const std::vector<double> prior{0.8, 0.2}, like{0.5, 0.9};
  const auto post = update(prior, like);
  EXPECT_NEAR(post[0], 0.40 / 0.58, 1e-12);
  EXPECT_NEAR(post[0], 0.6897, 1e-4);
  EXPECT_NEAR(post[1], 0.3103, 1e-4);
}

TEST(Update, UniformLikelihoodKeepsPrior) {
  const std::vector<double> prior{0.1, 0.6, 0.3}, like{0.2, 0.2, 0.2};
  const auto post = update(prior, like);
  for (std::size_t i = 0; i < prior.size(); ++i) EXPECT_NEAR(post[i], prior[i], 1e-15);
}

TEST(Update, ContradictionIsDegenerate) {
  const std::vector<double> prior{1, 0}, like{0, 1};
  EXPECT_THROW(update(prior, like), DegenerateEvidenceError);
}

TEST(Update, InvariantToLikelihoodScale) {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> scale(1e-6, 1e6);
  for (int trial = 0; trial < 200; ++trial) {
    const auto prior = random_distribution(rng, 5);
    auto like = random_distribution(rng, 5);
    const auto a = update(prior, like);
    const double c = scale(rng);
    for (double& v : like) v *= c;
    const auto b = update(prior, like);
    for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(a[i], b[i], 1e-12);
  }
}

TEST(ApplyFloor, LiftsZerosAndRenormalises) {
  Distribution d{1.0, 0.0, 0.0};
  apply_floor(d);
  EXPECT_GT(d[1], 0.0);
  EXPECT_NEAR(sum(d), 1.0, 1e-15);
}

// Two locations, one sensor on location 0, no reports: the covered location
// pays for the miss, the other only for the absent false positive.
TEST(Likelihood, MissedDetectionTwoLocations) {
  const auto plan = line_plan(2);
  const std::vector<SensorSpec> sensors{reader(0, {0}, 0.9, 0.01, 0.05)};
  const auto w = likelihood_of_events({}, 0, sensors, plan, 1);
  EXPECT_NEAR(w[0], 0.1 * (1 - 0.01), 1e-15);
  EXPECT_NEAR(w[1], 1 - 0.01, 1e-15);
}

// For one agent and at most one report per sensor the model is exact;
// compare with hand-enumerated report probabilities.
TEST(Likelihood, ExactForSingleAgentSingleReport) {
  const auto plan = line_plan(4);
  const double pd = 0.8, pfp = 0.05;
  const std::vector<SensorSpec> sensors{reader(3, {1, 2}, pd, pfp, 0.3)};
  const double per_loc = pfp / 2;
  for (LocationId y : {1, 2}) {
    const std::vector<ObservationEvent> events{{3, 0, 0, 0, y}};
    const auto w = likelihood_of_events(events, 0, sensors, plan, 1);
    for (LocationId x = 0; x < 4; ++x) {
      const bool covered = x == 1 || x == 2;
      // detection at x with no false positive, or miss/outside plus a false positive at y
      const double exact = covered ? pd * (1 - pfp) * (x == y) + (1 - pd) * per_loc
                                   : per_loc;
      EXPECT_NEAR(w[x], exact, 1e-15) << "x=" << x << " y=" << y;
    }
  }
}

TEST(Likelihood, NoiselessReportConcentratesOnLocation) {
  const auto plan = line_plan(5);
  const std::vector<SensorSpec> sensors{reader(0, {0, 1, 2}, 1, 0, 0)};
  const std::vector<ObservationEvent> events{{0, 0, 0, 7, 1}};
  const auto w = likelihood_of_events(events, 7, sensors, plan, 3);
  EXPECT_GT(w[1], 0.0);
  for (LocationId x : {0, 2, 3, 4}) EXPECT_EQ(w[x], 0.0);
}

TEST(Likelihood, IndependentSensorsMultiply) {
  const auto plan = line_plan(4);
  const auto s1 = reader(0, {0, 1}, 0.9, 0.02, 0.05);
  const auto s2 = reader(1, {1, 2}, 0.7, 0.01, 0.1);
  const std::vector<ObservationEvent> events{{0, 0, 0, 2, 1}, {1, 0, 0, 2, 1}};
  const std::vector<SensorSpec> both{s1, s2}, only1{s1}, only2{s2};
  const std::vector<ObservationEvent> e1{events[0]}, e2{events[1]};
  const auto w = likelihood_of_events(events, 2, both, plan, 3);
  const auto w1 = likelihood_of_events(e1, 2, only1, plan, 3);
  const auto w2 = likelihood_of_events(e2, 2, only2, plan, 3);
  for (std::size_t x = 0; x < 4; ++x) EXPECT_NEAR(w[x], w1[x] * w2[x], 1e-15);
}

TEST(Likelihood, ReportsForOtherAgentsAreIgnored) {
  const auto plan = line_plan(3);
  const std::vector<SensorSpec> sensors{reader(0, {0, 1, 2}, 0.9, 0.01, 0.05)};
  const std::vector<ObservationEvent> events{{0, 0, 0, 5, 1}};
  EXPECT_EQ(likelihood_of_events(events, 4, sensors, plan, 2),
            likelihood_of_events({}, 4, sensors, plan, 2));
}

TEST(Likelihood, UnknownSensorIsRejected) {
  const auto plan = line_plan(2);
  const std::vector<SensorSpec> sensors{reader(0, {0}, 0.9, 0.01, 0.05)};
  const std::vector<ObservationEvent> events{{9, 0, 0, 0, 0}};
  EXPECT_THROW(likelihood_of_events(events, 0, sensors, plan, 1), InvalidArgument);
}

TEST(MotionModelCheck, SimulatorKernelIsValidAndAdjacencyBounded) {
  const auto cfg = scenarios::office50(1);
  const auto model = build_motion_model(cfg);
  ASSERT_EQ(model.kernels.size(), cfg.agents.size());
  EXPECT_NO_THROW(model.validate(cfg.floor_plan));
  // the blend keeps every adjacent move possible
  for (const auto& k : model.kernels)
    for (const auto& [a, b] : cfg.floor_plan.edges()) EXPECT_GT(k(a, b), 0.0);
}

TEST(MotionModelCheck, RejectsNonAdjacentMass) {
  const auto plan = line_plan(3);
  MotionModel bad;
  bad.kernels.push_back(TransitionMatrix{{0.5, 0, 0.5}, {0, 1, 0}, {0, 0, 1}});
  EXPECT_THROW(bad.validate(plan), InvalidArgument);
  MotionModel unnormalised;
  unnormalised.kernels.push_back(TransitionMatrix{{0.5, 0.4, 0}, {0, 1, 0}, {0, 0, 1}});
  EXPECT_THROW(unnormalised.validate(plan), InvalidArgument);
}

TEST(MotionModelCheck, AdjacentKernelIsUniformOverStayAndNeighbours) {
  const auto k = adjacent_kernel(line_plan(3));
  EXPECT_DOUBLE_EQ(k(0, 0), 0.5);
  EXPECT_DOUBLE_EQ(k(1, 0), 1.0 / 3);
  EXPECT_DOUBLE_EQ(k(1, 2), 1.0 / 3);
  EXPECT_DOUBLE_EQ(k(0, 2), 0.0);
}

TEST(FuseRun, WithoutSensorsBeliefsAreMotionDiffusion) {
  auto cfg = make_config(line_plan(4), {make_agent(0, 1, 4, 0.6)}, 30, 1, 3);
  cfg.fusion.motion = MotionPrior::adjacent;
  const auto motion = build_motion_model(cfg);
  const auto result = fuse_run({}, cfg, motion);
  ASSERT_EQ(result.beliefs.size(), 30u);
  Distribution expected{0, 1, 0, 0};
  for (int t = 0; t < 30; ++t) {
    if (t > 0) expected = predict(expected, motion.kernels[0]);
    for (std::size_t x = 0; x < 4; ++x)
      EXPECT_NEAR(result.beliefs[t].probs[0][x], expected[x], 1e-9);
  }
}

TEST(FuseRun, SingleTickMatchesPredictThenUpdate) {
  auto cfg = make_config(line_plan(2), {make_agent(0, 0, 2, 0.5)}, 2, 1, 1);
  cfg.sensors = {reader(0, {1}, 0.9, 0.01, 0.05)};
  MotionModel motion{{kTwoState}};
  const std::vector<ObservationEvent> events{{0, 0, 1, 0, 1}};
  const auto result = fuse_run(events, cfg, motion);
  const auto quiet = likelihood_of_events({}, 0, cfg.sensors, cfg.floor_plan, 1);
  const auto heard = likelihood_of_events(events, 0, cfg.sensors, cfg.floor_plan, 1);
  auto b0 = update(std::vector<double>{1, 0}, quiet);
  apply_floor(b0);
  auto b1 = update(predict(b0, kTwoState), heard);
  apply_floor(b1);
  for (std::size_t x = 0; x < 2; ++x) {
    EXPECT_NEAR(result.beliefs[0].probs[0][x], b0[x], 1e-15);
    EXPECT_NEAR(result.beliefs[1].probs[0][x], b1[x], 1e-15);
  }
}

TEST(FuseRun, NoiselessFullCoverageRecoversTruth) {
  auto cfg = scenarios::demo(21);
  cfg.sensors = scenarios::full_coverage_sensors(cfg.floor_plan, 1, 0, 0);
  const auto records = run_simulation(cfg);
  const auto events = generate_event_log(records, cfg.sensors, 21);
  const auto result = fuse_run(events, cfg, build_motion_model(cfg));
  EXPECT_EQ(result.degenerate_updates, 0u);
  const auto paths = argmax_paths(result.beliefs, cfg.agents.size(), cfg.days,
                                  cfg.ticks_per_day);
  for (const auto& r : records)
    ASSERT_EQ(paths[cfg.agent_index(r.agent)][r.day][r.tick], r.location);
}

TEST(FuseRun, ContradictoryEvidenceFallsBackToPredict) {
  auto cfg = make_config(line_plan(4), {make_agent(0, 0, 4, 0.5)}, 2, 1, 1);
  cfg.sensors = {reader(0, {0, 1}, 1, 0, 0), reader(1, {2, 3}, 1, 0, 0)};
  MotionModel motion{{adjacent_kernel(cfg.floor_plan)}};
  // tick 0 agrees with the home start; tick 1 names two far-apart places
  const std::vector<ObservationEvent> events{
      {0, 0, 0, 0, 0}, {0, 0, 1, 0, 0}, {1, 0, 1, 0, 3}};
  const auto result = fuse_run(events, cfg, motion);
  EXPECT_EQ(result.degenerate_updates, 1u);
  auto expected = predict(result.beliefs[0].probs[0], motion.kernels[0]);
  apply_floor(expected);
  for (std::size_t x = 0; x < 4; ++x)
    EXPECT_NEAR(result.beliefs[1].probs[0][x], expected[x], 1e-15);
}

// Small worlds: filtered beliefs equal explicit sums over all sequences.
TEST(FuseRun, MatchesForwardEnumerationOnSmallWorlds) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 2 + trial % 3;  // 2..4 locations
    const int ticks = 6;
    const auto plan = testing_support::random_connected_plan(rng, n, 0.4);
    std::vector<AgentProfile> agents{make_agent(0, 0, n, 0.6),
                                     make_agent(1, static_cast<LocationId>(n - 1), n, 0.4)};
    auto cfg = make_config(plan, agents, ticks, 1, 100 + trial);
    cfg.fluctuation_rate = 0.1;
    cfg.fusion.motion = trial % 2 ? MotionPrior::adjacent : MotionPrior::simulator;
    cfg.sensors = {reader(0, {0}, 0.8, 0.1, 0.2),
                   reader(1, {static_cast<LocationId>(n - 1)}, 0.7, 0.05, 0.1)};
    if (n > 2) cfg.sensors.push_back(reader(2, {0, 1, 2}, 0.6, 0.2, 0.3));
    const auto records = run_simulation(cfg);
    const auto events = generate_event_log(records, cfg.sensors, cfg.rng_seed);
    const auto motion = build_motion_model(cfg);
    const auto result = fuse_run(events, cfg, motion);
    const EventIndex index(events, 1, ticks);
    for (std::size_t a = 0; a < agents.size(); ++a) {
      std::vector<Distribution> evidence;
      for (int t = 0; t < ticks; ++t)
        evidence.push_back(
            likelihood_of_events(index.at(0, t), agents[a].id, cfg.sensors, plan, 2));
      Distribution initial(n, 0.0);
      initial[agents[a].home] = 1.0;
      const auto expected = oracle::forward_enumeration(initial, motion.kernels[a], evidence);
      for (int t = 0; t < ticks; ++t)
        for (std::size_t x = 0; x < n; ++x)
          ASSERT_NEAR(result.beliefs[t].probs[a][x], expected[t][x], 1e-9)
              << "trial " << trial << " agent " << a << " tick " << t;
    }
  }
}

TEST(FuseRun, RowsStayNormalisedOverLongRuns) {
  auto cfg = scenarios::demo(4);
  cfg.days = 1;
  cfg.ticks_per_day = 10000;
  const auto records = run_simulation(cfg);
  const auto events = generate_event_log(records, cfg.sensors, 4);
  const auto result = fuse_run(events, cfg, build_motion_model(cfg));
  double worst = 0;
  for (const auto& m : result.beliefs)
    for (const auto& row : m.probs) {
      worst = std::max(worst, std::abs(sum(row) - 1.0));
      for (double v : row) ASSERT_GE(v, 0.0);
    }
  EXPECT_LT(worst, 1e-9);
}

TEST(FuseRun, AccuracyImprovesWithSensorQuality) {
  double low = 0, high = 0;
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    auto cfg = scenarios::office50(seed, 480, 1);
    const auto records = run_simulation(cfg);
    const auto motion = build_motion_model(cfg);
    auto accuracy = [&](double pd) {
      auto c = cfg;
      for (auto& s : c.sensors) s.p_detect = pd;
      const auto events = generate_event_log(records, c.sensors, seed);
      const auto fused = fuse_run(events, c, motion);
      const auto paths = argmax_paths(fused.beliefs, c.agents.size(), 1, c.ticks_per_day);
      double correct = 0;
      for (const auto& r : records)
        correct += paths[c.agent_index(r.agent)][r.day][r.tick] == r.location;
      return correct / static_cast<double>(records.size());
    };
    low += accuracy(0.6);
    high += accuracy(0.95);
  }
  EXPECT_GE(high, low);
}

TEST(EventIndexCheck, RejectsUnsortedAndOutOfRange) {
  const std::vector<ObservationEvent> unsorted{{0, 0, 3, 0, 0}, {0, 0, 1, 0, 0}};
  EXPECT_THROW(EventIndex(unsorted, 1, 5), InvalidArgument);
  const std::vector<ObservationEvent> outside{{0, 2, 0, 0, 0}};
  EXPECT_THROW(EventIndex(outside, 1, 5), InvalidArgument);
  const std::vector<ObservationEvent> ok{{0, 0, 1, 0, 0}, {1, 0, 1, 0, 0}, {0, 0, 4, 0, 0}};
  const EventIndex index(ok, 1, 5);
  EXPECT_EQ(index.at(0, 0).size(), 0u);
  EXPECT_EQ(index.at(0, 1).size(), 2u);
  EXPECT_EQ(index.at(0, 4).size(), 1u);
}
