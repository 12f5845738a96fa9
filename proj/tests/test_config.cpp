#include <gtest/gtest.h>

#include <sstream>
#include <string>

#include "banditlab/config.hpp"
#include "banditlab/csv.hpp"

using namespace banditlab;
using io::ConfigError;
using io::ExperimentConfig;

namespace {

const char* kBaseConfig = R"(# demo experiment
[experiment]
id = demo-1
policy = thompson
horizon = 1000
runs = 10
seed = 42

[arms]
arm = bernoulli 0.5
arm = bernoulli 0.4
)";

std::string expect_error(const std::string& text) {
  try {
    (void)ExperimentConfig::parse_string(text, "test.ini");
    ADD_FAILURE() << "config accepted unexpectedly:\n" << text;
    return {};
  } catch (const ConfigError& e) {
    return e.what();
  }
}

}  // namespace

TEST(ConfigParse, MinimalDefaults) {
  const auto cfg = ExperimentConfig::parse_string(kBaseConfig, "test.ini");
  EXPECT_EQ(cfg.id, "demo-1");
  EXPECT_EQ(cfg.policy, PolicyKind::thompson);
  EXPECT_EQ(cfg.horizon, 1000u);
  EXPECT_EQ(cfg.runs, 10u);
  EXPECT_EQ(cfg.seed, 42u);
  EXPECT_TRUE(cfg.checkpoints.empty());
  EXPECT_FALSE(cfg.diagnostics);
  EXPECT_EQ(cfg.delay.kind, DelayModel::Kind::none);
  EXPECT_EQ(cfg.arms.size(), 2u);
  EXPECT_FALSE(cfg.sweep.has_value());
  EXPECT_FALSE(cfg.bounds_request.has_value());
  // run_config defaults the checkpoint list to the horizon
  EXPECT_EQ(cfg.run_config().checkpoints, (std::vector<std::uint64_t>{1000}));
  EXPECT_EQ(cfg.instance().n_arms(), 2u);
}

TEST(ConfigParse, FullSections) {
  const std::string text = R"([experiment]
id = full_one
policy = ucb1
horizon = 5000
runs = 32
seed = 7
checkpoints = 100 1000 5000
diagnostics = off
out = results.csv

[delay]
kind = batch
size = 25

[arms]
unique_optimum = on
arm = scaled_beta 2 5
arm = bernoulli 0.2
arm = discrete 0.1:0.5 0.9:0.5
arm = uniform 0.0 0.4
arm = constant 0.05

[bounds]
kinds = thm2_appendix ucb1_auer
horizons = 10 100 1000
remark1_c = 2.5
)";
  const auto cfg = ExperimentConfig::parse_string(text, "test.ini");
  EXPECT_EQ(cfg.policy, PolicyKind::ucb1);
  EXPECT_EQ(cfg.checkpoints, (std::vector<std::uint64_t>{100, 1000, 5000}));
  EXPECT_EQ(cfg.out, "results.csv");
  EXPECT_EQ(cfg.delay.kind, DelayModel::Kind::batch);
  EXPECT_EQ(cfg.delay.param, 25u);
  EXPECT_TRUE(cfg.unique_optimum);
  ASSERT_EQ(cfg.arms.size(), 5u);
  EXPECT_NEAR(cfg.arms[2].mean(), 0.5, 1e-15);
  ASSERT_TRUE(cfg.bounds_request.has_value());
  EXPECT_EQ(cfg.bounds_request->kinds,
            (std::vector<bounds::BoundKind>{bounds::BoundKind::thm2_appendix,
                                            bounds::BoundKind::ucb1_auer}));
  EXPECT_DOUBLE_EQ(cfg.bounds_request->remark1_c, 2.5);
  // the discrete arm's mean 0.5 is the unique optimum here
  EXPECT_NO_THROW(cfg.instance());
}

TEST(ConfigParse, SerializeRoundTripIsFixpoint) {
  for (const std::string& text : {std::string(kBaseConfig), std::string(R"([experiment]
id = rt
policy = uniform_random
horizon = 64
runs = 2
seed = 9
checkpoints = 32 64
diagnostics = off

[delay]
kind = fixed
steps = 3

[arms]
arm = bernoulli 0.75
arm = uniform 0.25 0.75

[sweep]
horizon = 64 128
policy = thompson ucb1

[bounds]
kinds = thm1
horizons = 100
remark1_c = 1
)")}) {
    const auto cfg = ExperimentConfig::parse_string(text, "a.ini");
    const std::string once = cfg.serialize();
    const auto reparsed = ExperimentConfig::parse_string(once, "b.ini");
    EXPECT_EQ(once, reparsed.serialize());
  }
}

TEST(ConfigParse, LineAnchoredErrors) {
  EXPECT_NE(expect_error("[experiment]\nid = x\npolicy = nope\nhorizon = 1\nruns = 1\nseed = 0\n")
                .find("test.ini:3"),
            std::string::npos);
  EXPECT_NE(expect_error("[experiment]\nid = ??\n").find("test.ini:2"), std::string::npos);
  EXPECT_NE(expect_error("[what]\n").find("unknown section"), std::string::npos);
  EXPECT_NE(expect_error("id = x\n").find("outside any section"), std::string::npos);
  EXPECT_NE(expect_error("[experiment]\nid x\n").find("key = value"), std::string::npos);
  EXPECT_NE(expect_error("[experiment]\nid = x\nid = y\n").find("duplicate key"),
            std::string::npos);
  EXPECT_NE(expect_error("[experiment]\nbogus = 1\n").find("unknown key"), std::string::npos);
  EXPECT_NE(expect_error(std::string(kBaseConfig) + "[experiment2]\n").find("test.ini:12"),
            std::string::npos);
}

TEST(ConfigParse, RequiredKeysReported) {
  EXPECT_NE(expect_error("[experiment]\npolicy = thompson\nhorizon = 1\nruns = 1\nseed = 0\n")
                .find("missing required key 'id'"),
            std::string::npos);
  EXPECT_NE(expect_error("[experiment]\nid = x\nhorizon = 1\nruns = 1\nseed = 0\n")
                .find("missing required key 'policy'"),
            std::string::npos);
  EXPECT_NE(expect_error("[experiment]\nid = x\npolicy = thompson\nruns = 1\nseed = 0\n")
                .find("missing required key 'horizon'"),
            std::string::npos);
}

TEST(ConfigParse, ValueValidation) {
  const std::string head = "[experiment]\nid = x\npolicy = thompson\nhorizon = 100\nruns = 1\nseed = 0\n";
  EXPECT_NE(expect_error(head + "checkpoints = 10 10\n").find("strictly increasing"),
            std::string::npos);
  EXPECT_NE(expect_error(head + "checkpoints = 10 200\n").find("exceed the horizon"),
            std::string::npos);
  EXPECT_NE(expect_error(head + "diagnostics = maybe\n").find("on/off"), std::string::npos);
  EXPECT_NE(expect_error(head + "[delay]\nkind = fixed\n").find("needs 'steps'"),
            std::string::npos);
  EXPECT_NE(expect_error(head + "[delay]\nkind = batch\nsize = 0\n").find("batch size"),
            std::string::npos);
  EXPECT_NE(expect_error(head + "[delay]\nkind = none\nsteps = 4\n").find("no parameters"),
            std::string::npos);
  EXPECT_NE(expect_error(head + "[delay]\nsteps = 4\n").find("without 'kind'"),
            std::string::npos);
  EXPECT_NE(expect_error(head + "[arms]\narm = bernoulli 1.5\narm = bernoulli 0.1\n")
                .find("test.ini:8"),
            std::string::npos);
  EXPECT_NE(expect_error(head + "[arms]\narm = cauchy 1\narm = bernoulli 0.1\n")
                .find("unknown arm law"),
            std::string::npos);
  EXPECT_NE(expect_error(head + "[arms]\narm = discrete 0.5:0.4 0.6:0.4\narm = bernoulli 0.1\n")
                .find("test.ini:8"),
            std::string::npos);
  EXPECT_NE(expect_error(head + "[arms]\narm = bernoulli 0.4\n").find("at least two"),
            std::string::npos);
  EXPECT_NE(expect_error(head + "[bounds]\nkinds = thm7\n").find("unknown bound kind"),
            std::string::npos);
  EXPECT_NE(expect_error(head + "[bounds]\nremark1_c = 0\n").find("remark1_c"),
            std::string::npos);
}

TEST(ConfigParse, UniqueOptimumViolationNamesArm) {
  const std::string text = R"([experiment]
id = dup
policy = thompson
horizon = 10
runs = 1
seed = 0

[arms]
unique_optimum = on
arm = bernoulli 0.5
arm = bernoulli 0.3
arm = bernoulli 0.5
)";
  const std::string msg = expect_error(text);
  EXPECT_NE(msg.find("arm 2"), std::string::npos) << msg;
}

TEST(ConfigParse, DiagnosticsRequireThompson) {
  const std::string text = R"([experiment]
id = d
policy = ucb1
horizon = 10
runs = 1
seed = 0
diagnostics = on

[arms]
arm = bernoulli 0.5
arm = bernoulli 0.3
)";
  EXPECT_NE(expect_error(text).find("thompson"), std::string::npos);
}

TEST(ConfigParse, SweepValidation) {
  const std::string head = "[experiment]\nid = s\npolicy = thompson\nhorizon = 100\nruns = 1\nseed = 3\n";
  EXPECT_NE(expect_error(head + "[sweep]\ndelta = 0.1 0.2\n").find("needs mu_star"),
            std::string::npos);
  EXPECT_NE(expect_error(head + "[sweep]\nmu_star = 0.5\n").find("delta axis"),
            std::string::npos);
  EXPECT_NE(expect_error(head + "[sweep]\ndelta = 0.7\nmu_star = 0.5\n").find("in [0,1]"),
            std::string::npos);
  EXPECT_NE(expect_error(head + "[sweep]\ndelta = 1.2\nmu_star = 0.9\n").find("(0,1)"),
            std::string::npos);
  EXPECT_NE(expect_error(head + "[arms]\narm = bernoulli 0.5\narm = bernoulli 0.4\n" +
                         "[sweep]\ndelta = 0.1\nmu_star = 0.5\n")
                .find("conflicts"),
            std::string::npos);
}

TEST(ExpandSweep, GridOrderSeedsAndTags) {
  const std::string text = R"([experiment]
id = grid
policy = thompson
horizon = 100
runs = 1
seed = 11

[sweep]
delta = 0.1 0.2
mu_star = 0.6
policy = thompson ucb1
)";
  const auto cfg = ExperimentConfig::parse_string(text, "test.ini");
  const auto cells = io::expand_sweep(cfg);
  ASSERT_EQ(cells.size(), 4u);
  EXPECT_EQ(cells[0].experiment_id, "grid[delta=0.1|policy=thompson]");
  EXPECT_EQ(cells[1].experiment_id, "grid[delta=0.1|policy=ucb1]");
  EXPECT_EQ(cells[2].experiment_id, "grid[delta=0.2|policy=thompson]");
  EXPECT_EQ(cells[3].experiment_id, "grid[delta=0.2|policy=ucb1]");
  for (std::size_t i = 0; i < cells.size(); ++i) {
    EXPECT_EQ(cells[i].index, i);
    EXPECT_EQ(cells[i].seed, derive_stream_seed(11, i));
    EXPECT_EQ(cells[i].horizon, 100u);  // no horizon axis: base value everywhere
    EXPECT_EQ(cells[i].instance.n_arms(), 2u);
    EXPECT_DOUBLE_EQ(cells[i].instance.mu_star(), 0.6);
  }
  EXPECT_DOUBLE_EQ(cells[0].instance.gap(1), 0.1);
  EXPECT_DOUBLE_EQ(cells[3].instance.gap(1), 0.2);
}

TEST(ExpandSweep, UsesBaseInstanceWithoutDeltaAxis) {
  const std::string text = R"([experiment]
id = base
policy = thompson
horizon = 50
runs = 1
seed = 5

[arms]
arm = bernoulli 0.9
arm = bernoulli 0.2

[sweep]
horizon = 50 100 200
)";
  const auto cfg = ExperimentConfig::parse_string(text, "test.ini");
  const auto cells = io::expand_sweep(cfg);
  ASSERT_EQ(cells.size(), 3u);
  EXPECT_EQ(cells[0].experiment_id, "base[T=50]");
  EXPECT_EQ(cells[2].experiment_id, "base[T=200]");
  EXPECT_EQ(cells[2].horizon, 200u);
  EXPECT_DOUBLE_EQ(cells[1].instance.gap(1), 0.7);
}

TEST(ExpandSweep, RejectsOversizedGridAndMissingSection) {
  std::string deltas;
  for (int i = 1; i <= 150; ++i) deltas += " 0." + std::to_string(1000 + i);
  const std::string text = "[experiment]\nid = big\npolicy = thompson\nhorizon = 10\nruns = 1\n"
                           "seed = 0\n[sweep]\ndelta =" + deltas + "\nmu_star = 0.9\n" +
                           "horizon = 1 2 3 4 5 6 7 8 9 10 11 12 13 14 15 16 17 18 19 20\n" +
                           "policy = thompson ucb1 uniform_random\n" +
                           "delay = none fixed:1 fixed:2 batch:5\n";
  const auto cfg = ExperimentConfig::parse_string(text, "test.ini");
  try {
    (void)io::expand_sweep(cfg);
    FAIL() << "oversized sweep accepted";
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("36000"), std::string::npos) << e.what();
  }

  const auto plain = ExperimentConfig::parse_string(kBaseConfig, "test.ini");
  EXPECT_THROW(io::expand_sweep(plain), ConfigError);
}

TEST(CsvWriters, GoldenRegretRows) {
  RegretSummary summary;
  summary.points.push_back({100, 12.5, 0.25, 8});
  summary.points.push_back({200, 30.0, 1.5, 8});
  std::ostringstream os;
  io::write_regret_rows(os, "exp1", "thompson", summary, 42, true);
  EXPECT_EQ(os.str(),
            "experiment_id,policy,T_checkpoint,mean_regret,stderr,runs,seed\n"
            "exp1,thompson,100,12.5,0.25,8,42\n"
            "exp1,thompson,200,30,1.5,8,42\n");
  std::ostringstream headerless;
  io::write_regret_rows(headerless, "exp1", "thompson", summary, 42, false);
  EXPECT_EQ(headerless.str().find("experiment_id"), std::string::npos);
}

TEST(CsvWriters, GoldenDiagnosticsRows) {
  Trace trace;
  trace.final_plays = {7, 3};
  DiagnosticsRecord d;
  d.saturation_time = {-1, 4};
  d.event_violations = 2;
  d.steps_before_first_opt = 1;
  d.gap_count = 4;
  d.gap_sum = 2;
  trace.diagnostics = d;
  std::ostringstream os;
  io::write_diagnostics_rows(os, "exp2", {trace}, true);
  EXPECT_EQ(os.str(),
            "experiment_id,run,arm,plays,saturation_time,event_violations,gap_mean,gap_count\n"
            "exp2,0,0,7,-1,2,0.5,4\n"
            "exp2,0,1,3,4,2,0.5,4\n");
}

TEST(CsvWriters, NumberFormattingIsShortestRoundTrip) {
  EXPECT_EQ(io::format_double(0.1), "0.1");
  EXPECT_EQ(io::format_double(1.0), "1");
  EXPECT_EQ(io::format_double(1e-3), "0.001");
  EXPECT_EQ(io::format_double(std::nan("")), "nan");
  EXPECT_EQ(io::format_u64(0), "0");
  EXPECT_EQ(io::format_i64(-5), "-5");
  const double tricky = 0.30000000000000004;
  EXPECT_EQ(std::stod(io::format_double(tricky)), tricky);
}
