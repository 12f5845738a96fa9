#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

struct CliResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("banditlab_cli_" + std::to_string(::getpid()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }

  void TearDown() override { fs::remove_all(dir_); }

  fs::path write_file(const std::string& name, const std::string& content) {
    const fs::path p = dir_ / name;
    std::ofstream(p) << content;
    return p;
  }

  CliResult run(const std::string& args) {
    const fs::path out = dir_ / "stdout.txt";
    const fs::path err = dir_ / "stderr.txt";
    const std::string cmd = std::string(BANDITLAB_BIN) + " " + args + " >" + out.string() +
                            " 2>" + err.string();
    const int rc = std::system(cmd.c_str());
    CliResult r;
    r.exit_code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
  }

  fs::path dir_;
};

int count_lines(const std::string& s) {
  int n = 0;
  for (char c : s) n += c == '\n';
  return n;
}

const char* kRunConfig = R"([experiment]
id = cli-run
policy = thompson
horizon = 400
runs = 8
seed = 1234
checkpoints = 200 400

[arms]
arm = bernoulli 0.6
arm = bernoulli 0.4
)";

}  // namespace

TEST_F(CliTest, VersionFlag) {
  const auto r = run("--version");
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_NE(r.out.find("0.1.0"), std::string::npos);
}

TEST_F(CliTest, RunEmitsRegretCsvAndConfigEcho) {
  const auto cfg = write_file("run.ini", kRunConfig);
  const auto r = run("run --config " + cfg.string());
  ASSERT_EQ(r.exit_code, 0) << r.err;
  EXPECT_EQ(r.out.rfind("experiment_id,policy,T_checkpoint,mean_regret,stderr,runs,seed\n", 0),
            0u);
  EXPECT_EQ(count_lines(r.out), 3);  // header + one row per checkpoint
  EXPECT_NE(r.out.find("cli-run,thompson,200,"), std::string::npos);
  EXPECT_NE(r.out.find("cli-run,thompson,400,"), std::string::npos);
  // resolved config echo goes to stderr and parses back
  EXPECT_NE(r.err.find("[experiment]"), std::string::npos);
  EXPECT_NE(r.err.find("id = cli-run"), std::string::npos);
}

TEST_F(CliTest, RunIsByteDeterministicAcrossWorkerCounts) {
  const auto cfg = write_file("run.ini", kRunConfig);
  const auto first = run("run --config " + cfg.string() + " --workers 1");
  const auto again = run("run --config " + cfg.string() + " --workers 1");
  const auto wide = run("run --config " + cfg.string() + " --workers 8");
  ASSERT_EQ(first.exit_code, 0);
  EXPECT_EQ(first.out, again.out);
  EXPECT_EQ(first.out, wide.out);
}

TEST_F(CliTest, SeedOverrideChangesRows) {
  const auto cfg = write_file("run.ini", kRunConfig);
  const auto base = run("run --config " + cfg.string());
  const auto reseeded = run("run --config " + cfg.string() + " --seed 999");
  ASSERT_EQ(reseeded.exit_code, 0);
  EXPECT_NE(base.out, reseeded.out);
  EXPECT_NE(reseeded.out.find(",999\n"), std::string::npos);
}

TEST_F(CliTest, RunWritesDiagnosticsFileWhenRequested) {
  const std::string cfg_text = R"([experiment]
id = diag
policy = thompson
horizon = 120
runs = 5
seed = 77
diagnostics = on

[arms]
arm = bernoulli 0.7
arm = bernoulli 0.3
)";
  const auto cfg = write_file("diag.ini", cfg_text);
  const fs::path out = dir_ / "regret.csv";
  const auto r = run("run --config " + cfg.string() + " --out " + out.string());
  ASSERT_EQ(r.exit_code, 0) << r.err;
  EXPECT_TRUE(fs::exists(out));
  const fs::path diag = dir_ / "regret_diagnostics.csv";
  ASSERT_TRUE(fs::exists(diag));
  const std::string content = slurp(diag);
  EXPECT_EQ(content.rfind("experiment_id,run,arm,plays,saturation_time,event_violations,"
                          "gap_mean,gap_count\n",
                          0),
            0u);
  EXPECT_EQ(count_lines(content), 1 + 5 * 2);  // header + runs x arms
}

TEST_F(CliTest, RunRejectsSweepConfigs) {
  const std::string text = std::string(kRunConfig) + "\n[sweep]\nhorizon = 100 200\n";
  const auto cfg = write_file("sweepy.ini", text);
  const auto r = run("run --config " + cfg.string());
  EXPECT_EQ(r.exit_code, 2);
  EXPECT_NE(r.err.find("sweep"), std::string::npos);
}

TEST_F(CliTest, MissingAndMalformedConfigs) {
  const auto missing = run("run --config " + (dir_ / "nope.ini").string());
  EXPECT_EQ(missing.exit_code, 2);
  const auto cfg = write_file("bad.ini", "[experiment]\nid = x\nwat = 1\n");
  const auto r = run("run --config " + cfg.string());
  EXPECT_EQ(r.exit_code, 2);
  EXPECT_NE(r.err.find("bad.ini:3"), std::string::npos) << r.err;
}

TEST_F(CliTest, SweepEmitsTaggedCells) {
  const std::string text = R"([experiment]
id = gridz
policy = thompson
horizon = 150
runs = 4
seed = 31

[sweep]
delta = 0.2 0.4
mu_star = 0.7
horizon = 150 300
)";
  const auto cfg = write_file("sweep.ini", text);
  const auto r = run("sweep --config " + cfg.string());
  ASSERT_EQ(r.exit_code, 0) << r.err;
  EXPECT_EQ(count_lines(r.out), 5);  // header + 4 cells
  EXPECT_NE(r.out.find("gridz[delta=0.2|T=150],thompson,150,"), std::string::npos);
  EXPECT_NE(r.out.find("gridz[delta=0.4|T=300],thompson,300,"), std::string::npos);
  const auto again = run("sweep --config " + cfg.string());
  EXPECT_EQ(r.out, again.out);
}

TEST_F(CliTest, SweepFailsFastOnOversizedGrid) {
  std::string deltas;
  for (int i = 1; i <= 101; ++i) deltas += " 0." + std::to_string(1000 + i);
  const std::string text = "[experiment]\nid = big\npolicy = thompson\nhorizon = 10\nruns = 1\n"
                           "seed = 0\n[sweep]\ndelta =" + deltas + "\nmu_star = 0.9\n" +
                           "horizon = 1 2 3 4 5 6 7 8 9 10\n" +
                           "policy = thompson ucb1 uniform_random\n" +
                           "delay = none fixed:1 batch:5 batch:7\n";
  const auto cfg = write_file("big.ini", text);
  const fs::path out = dir_ / "big.csv";
  const auto r = run("sweep --config " + cfg.string() + " --out " + out.string());
  EXPECT_EQ(r.exit_code, 2);
  EXPECT_NE(r.err.find("12120"), std::string::npos) << r.err;
  EXPECT_FALSE(fs::exists(out));
}

TEST_F(CliTest, BoundsCsvPinnedValueAndLabels) {
  const std::string text = R"([experiment]
id = b
policy = thompson
horizon = 10
runs = 1
seed = 0

[arms]
arm = bernoulli 1.0
arm = bernoulli 0.0

[bounds]
kinds = thm1 lai_robbins_lower remark1_shape
horizons = 2.718281828459045 10
)";
  // lai_robbins needs means inside (0,1); swap the arms for it below
  const std::string lai_safe = R"([experiment]
id = b2
policy = thompson
horizon = 10
runs = 1
seed = 0

[arms]
arm = bernoulli 0.9
arm = bernoulli 0.1

[bounds]
kinds = lai_robbins_lower
horizons = 100
)";
  const auto cfg = write_file("bounds.ini", text);
  const auto r = run("bounds --config " + cfg.string());
  // the first config's means are 1.0/0.0: lai_robbins must reject them
  EXPECT_EQ(r.exit_code, 2);
  EXPECT_NE(r.err.find("(0,1)"), std::string::npos);

  const std::string thm_only = R"([experiment]
id = b3
policy = thompson
horizon = 10
runs = 1
seed = 0

[arms]
arm = bernoulli 1.0
arm = bernoulli 0.0

[bounds]
kinds = thm1 ucb1_auer
horizons = 2.718281828459045
)";
  const auto cfg3 = write_file("bounds3.ini", thm_only);
  const auto r3 = run("bounds --config " + cfg3.string());
  ASSERT_EQ(r3.exit_code, 0) << r3.err;
  EXPECT_EQ(r3.out.rfind("bound_kind,T,value,label\n", 0), 0u);
  std::istringstream rows(r3.out);
  std::string line;
  std::getline(rows, line);  // header
  ASSERT_TRUE(std::getline(rows, line));
  EXPECT_EQ(line.rfind("thm1,", 0), 0u);
  EXPECT_NE(line.find(",explicit"), std::string::npos);
  const auto second_comma = line.find(',', line.find(',') + 1);
  const double value = std::stod(line.substr(second_comma + 1));
  EXPECT_NEAR(value, 106.0, 1e-9);  // unit gap at T = e
  ASSERT_TRUE(std::getline(rows, line));
  EXPECT_EQ(line.rfind("ucb1_auer,", 0), 0u);

  const auto cfg2 = write_file("lai.ini", lai_safe);
  const auto r2 = run("bounds --config " + cfg2.string());
  ASSERT_EQ(r2.exit_code, 0) << r2.err;
  EXPECT_NE(r2.out.find(",asymptotic"), std::string::npos);
}

TEST_F(CliTest, BoundsEmptyKindsGivesHeaderOnly) {
  const std::string text = R"([experiment]
id = be
policy = thompson
horizon = 10
runs = 1
seed = 0

[bounds]
kinds =
horizons = 10 100
)";
  const auto cfg = write_file("empty.ini", text);
  const auto r = run("bounds --config " + cfg.string());
  ASSERT_EQ(r.exit_code, 0) << r.err;
  EXPECT_EQ(r.out, "bound_kind,T,value,label\n");
}

TEST_F(CliTest, BoundsWithoutSectionFails) {
  const auto cfg = write_file("nobounds.ini", kRunConfig);
  const auto r = run("bounds --config " + cfg.string());
  EXPECT_EQ(r.exit_code, 2);
  EXPECT_NE(r.err.find("[bounds]"), std::string::npos);
}

TEST_F(CliTest, VerifyIdentitiesSmoke) {
  const auto r = run("verify --suite identities --budget smoke");
  EXPECT_EQ(r.exit_code, 0) << r.out << r.err;
  EXPECT_EQ(r.out.rfind("check_name,status,observed,threshold\n", 0), 0u);
  EXPECT_NE(r.out.find("fact1_beta_binomial,pass,"), std::string::npos);
  EXPECT_NE(r.err.find(" 0 failed"), std::string::npos);
}

TEST_F(CliTest, VerifyLemmasSmokeSkipsBudgetGatedCheck) {
  const fs::path out = dir_ / "verify.csv";
  const auto r = run("verify --suite lemmas --budget smoke --out " + out.string());
  EXPECT_EQ(r.exit_code, 0) << r.out << r.err;
  const std::string csv = slurp(out);
  EXPECT_NE(csv.find("lemma2_escape_frequency,skipped(budget),"), std::string::npos) << csv;
  EXPECT_NE(csv.find("lemma1_geometric,pass,"), std::string::npos);
  // summary goes to stdout when the CSV goes to a file
  EXPECT_NE(r.out.find("1 skipped"), std::string::npos);
}

TEST_F(CliTest, VerifyUnknownSuiteIsUsageError) {
  const auto r = run("verify --suite nonsense");
  EXPECT_EQ(r.exit_code, 2);
  EXPECT_NE(r.err.find("unknown verification suite"), std::string::npos);
}
