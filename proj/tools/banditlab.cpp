#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "banditlab/bounds.hpp"
#include "banditlab/config.hpp"
#include "banditlab/csv.hpp"
#include "banditlab/simulator.hpp"
#include "banditlab/verify.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

unsigned default_workers() {
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open output file '" + path + "'");
  return os;
}

std::string diagnostics_path(const std::string& out) {
  const std::size_t dot = out.rfind('.');
  const std::size_t slash = out.find_last_of("/\\");
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) {
    return out + "_diagnostics.csv";
  }
  return out.substr(0, dot) + "_diagnostics" + out.substr(dot);
}

struct CommonOpts {
  std::string config;
  std::string out;
  unsigned workers = default_workers();
  std::uint64_t seed = 0;
  bool seed_set = false;
};

int cmd_run(const CommonOpts& opt) {
  auto cfg = banditlab::io::ExperimentConfig::parse_file(opt.config);
  if (cfg.sweep && cfg.sweep->has_axes()) {
    throw banditlab::io::ConfigError(
        "config declares sweep axes; use the 'sweep' subcommand");
  }
  if (opt.seed_set) cfg.seed = opt.seed;
  if (!opt.out.empty()) cfg.out = opt.out;

  const banditlab::BanditInstance instance = cfg.instance();
  const banditlab::RunConfig rc = cfg.run_config();
  std::cerr << cfg.serialize();

  const auto traces = banditlab::run_ensemble(rc, instance, cfg.runs, opt.workers);
  const auto summary = banditlab::summarize(traces);

  if (cfg.out.empty()) {
    banditlab::io::write_regret_rows(std::cout, cfg.id, banditlab::policy_name(cfg.policy),
                                     summary, cfg.seed, true);
    if (cfg.diagnostics) {
      std::cerr << "note: diagnostics CSV requires a file output; pass --out\n";
    }
  } else {
    auto os = open_out(cfg.out);
    banditlab::io::write_regret_rows(os, cfg.id, banditlab::policy_name(cfg.policy), summary,
                                     cfg.seed, true);
    if (cfg.diagnostics) {
      auto ds = open_out(diagnostics_path(cfg.out));
      banditlab::io::write_diagnostics_rows(ds, cfg.id, traces, true);
    }
  }
  return 0;
}

int cmd_sweep(const CommonOpts& opt) {
  auto cfg = banditlab::io::ExperimentConfig::parse_file(opt.config);
  if (opt.seed_set) cfg.seed = opt.seed;
  if (!opt.out.empty()) cfg.out = opt.out;

  // Every cell is expanded and validated before any simulation starts.
  const auto cells = banditlab::io::expand_sweep(cfg);

  std::ostringstream body;
  bool header = true;
  for (const auto& cell : cells) {
    banditlab::RunConfig rc;
    rc.horizon = cell.horizon;
    rc.seed = cell.seed;
    rc.policy = cell.policy;
    rc.delay = cell.delay;
    rc.checkpoints = {cell.horizon};
    const auto summary =
        banditlab::run_monte_carlo(rc, cell.instance, cfg.runs, opt.workers);
    banditlab::io::write_regret_rows(body, cell.experiment_id,
                                     banditlab::policy_name(cell.policy), summary, cell.seed,
                                     header);
    header = false;
  }

  if (cfg.out.empty()) {
    std::cout << body.str();
  } else {
    auto os = open_out(cfg.out);
    os << body.str();
  }
  std::cerr << "sweep '" << cfg.id << "': " << cells.size() << " cells, " << cfg.runs
            << " runs each\n";
  return 0;
}

int cmd_bounds(const CommonOpts& opt) {
  auto cfg = banditlab::io::ExperimentConfig::parse_file(opt.config);
  if (!opt.out.empty()) cfg.out = opt.out;
  if (!cfg.bounds_request) {
    throw banditlab::io::ConfigError("config has no [bounds] section");
  }
  const auto& request = *cfg.bounds_request;

  std::vector<double> gaps;
  std::vector<double> means;
  if (!cfg.arms.empty()) {
    const banditlab::BanditInstance instance = cfg.instance();
    gaps = instance.suboptimal_gaps();
    means = instance.means();
  }

  std::ostringstream body;
  body << banditlab::io::kBoundsHeader << '\n';
  for (const auto kind : request.kinds) {
    banditlab::bounds::BoundSpec spec;
    spec.kind = kind;
    spec.gaps = gaps;
    spec.means = means;
    spec.c = request.remark1_c;
    const auto curve = banditlab::bounds::evaluate_curve(spec, request.horizons);
    for (const auto& [t, value] : curve.points) {
      body << banditlab::bounds::bound_name(kind) << ',' << banditlab::io::format_double(t)
           << ',' << banditlab::io::format_double(value) << ',' << curve.label << '\n';
    }
  }

  if (cfg.out.empty()) {
    std::cout << body.str();
  } else {
    auto os = open_out(cfg.out);
    os << body.str();
  }
  return 0;
}

struct VerifyOpts {
  std::string suite = "all";
  std::string budget = "smoke";
  std::string out;
  unsigned workers = default_workers();
  std::uint64_t seed = 20260814;
};

int cmd_verify(const VerifyOpts& opt) {
  banditlab::verify::CheckContext ctx;
  ctx.budget = banditlab::verify::budget_from_name(opt.budget);
  ctx.workers = opt.workers;
  ctx.seed = opt.seed;

  const auto results = banditlab::verify::run_suite(opt.suite, ctx);

  std::ostringstream csv;
  csv << banditlab::io::kVerifyHeader << '\n';
  for (const auto& r : results) {
    csv << r.name << ',' << banditlab::verify::status_name(r.status) << ','
        << banditlab::io::format_double(r.observed) << ','
        << banditlab::io::format_double(r.threshold) << '\n';
  }

  std::ostream* summary_stream = &std::cout;
  if (opt.out.empty()) {
    std::cout << csv.str();
    summary_stream = &std::cerr;
  } else {
    auto os = open_out(opt.out);
    os << csv.str();
  }

  std::size_t passed = 0, failed = 0, skipped = 0;
  for (const auto& r : results) {
    switch (r.status) {
      case banditlab::verify::CheckStatus::pass: ++passed; break;
      case banditlab::verify::CheckStatus::fail: ++failed; break;
      case banditlab::verify::CheckStatus::skipped_budget: ++skipped; break;
    }
    *summary_stream << '[' << banditlab::verify::status_name(r.status) << "] " << r.name
                    << " observed=" << banditlab::io::format_double(r.observed)
                    << " threshold=" << banditlab::io::format_double(r.threshold);
    if (!r.note.empty()) *summary_stream << " (" << r.note << ')';
    *summary_stream << '\n';
  }
  *summary_stream << passed << " passed, " << failed << " failed, " << skipped << " skipped\n";
  return failed == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Thompson sampling bandit simulator with regret bound verification"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  CommonOpts run_opts;
  auto* run = app.add_subcommand("run", "simulate one experiment and emit a regret CSV");
  run->add_option("--config", run_opts.config, "experiment config file")->required();
  run->add_option("--out", run_opts.out, "output CSV path (default: config 'out' or stdout)");
  run->add_option("--workers", run_opts.workers, "worker threads");
  run->add_option("--seed", run_opts.seed, "override the config seed")
      ->each([&run_opts](const std::string&) { run_opts.seed_set = true; });

  CommonOpts sweep_opts;
  auto* sweep = app.add_subcommand("sweep", "expand sweep axes and emit one combined CSV");
  sweep->add_option("--config", sweep_opts.config, "experiment config file")->required();
  sweep->add_option("--out", sweep_opts.out, "output CSV path");
  sweep->add_option("--workers", sweep_opts.workers, "worker threads");
  sweep->add_option("--seed", sweep_opts.seed, "override the config seed")
      ->each([&sweep_opts](const std::string&) { sweep_opts.seed_set = true; });

  CommonOpts bounds_opts;
  auto* bounds = app.add_subcommand("bounds", "evaluate regret bound curves as CSV");
  bounds->add_option("--config", bounds_opts.config, "config file with a [bounds] section")
      ->required();
  bounds->add_option("--out", bounds_opts.out, "output CSV path");

  VerifyOpts verify_opts;
  auto* verify = app.add_subcommand("verify", "run statistical self-checks");
  verify->add_option("--suite", verify_opts.suite,
                     "identities, samplers, lemmas, regret, or all");
  verify->add_option("--budget", verify_opts.budget, "smoke or full");
  verify->add_option("--out", verify_opts.out, "write the check CSV to this path");
  verify->add_option("--workers", verify_opts.workers, "worker threads");
  verify->add_option("--seed", verify_opts.seed, "base seed for the checks");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return cmd_run(run_opts);
    if (sweep->parsed()) return cmd_sweep(sweep_opts);
    if (bounds->parsed()) return cmd_bounds(bounds_opts);
    if (verify->parsed()) return cmd_verify(verify_opts);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
