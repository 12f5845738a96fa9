#pragma once

#include <atomic>
#include <cmath>
#include <cstdint>
#include <deque>
#include <optional>
#include <stdexcept>
#include <thread>
#include <vector>

#include "banditlab/core.hpp"
#include "banditlab/policies.hpp"
#include "banditlab/rng.hpp"

namespace banditlab {

// Feedback timing. fixed(0) and batch(1) behave exactly like none.
struct DelayModel {
  enum class Kind { none, fixed, batch };

  Kind kind = Kind::none;
  std::uint64_t param = 0;

  static DelayModel none() { return {}; }
  static DelayModel fixed(std::uint64_t d) { return {Kind::fixed, d}; }
  static DelayModel batch(std::uint64_t period) {
    if (period == 0) throw std::invalid_argument("batch delay needs period >= 1");
    return {Kind::batch, period};
  }

  bool operator==(const DelayModel&) const = default;
};

struct RunConfig {
  std::uint64_t horizon = 0;
  std::uint64_t seed = 0;
  PolicyKind policy = PolicyKind::thompson;
  DelayModel delay{};
  std::vector<std::uint64_t> checkpoints;  // strictly increasing, last <= horizon
  bool diagnostics = false;
};

struct CheckpointRow {
  std::uint64_t t = 0;
  double regret = 0.0;
  std::vector<std::uint64_t> plays;

  bool operator==(const CheckpointRow&) const = default;
};

struct InterplayGap {
  std::uint64_t ordinal = 0;  // which optimal play the gap followed
  std::uint64_t gap = 0;

  bool operator==(const InterplayGap&) const = default;
};

// Saturation times use L_i = ceil(24 ln T / gap_i^2) observed-play thresholds;
// -1 means never reached (or the arm is optimal). Violation events are
// theta draws escaping the half-gap interval around an arm's mean once that
// arm is saturated; with two arms only the upward escape of the suboptimal
// arm counts.
struct DiagnosticsRecord {
  std::vector<std::int64_t> saturation_time;
  std::uint64_t event_violations = 0;
  std::vector<std::uint64_t> violation_steps;
  std::uint64_t steps_before_first_opt = 0;
  std::uint64_t gap_count = 0;  // includes the truncated trailing gap
  std::uint64_t gap_sum = 0;
  std::vector<InterplayGap> nonzero_gaps;

  bool operator==(const DiagnosticsRecord&) const = default;
};

struct Trace {
  std::vector<CheckpointRow> checkpoints;
  double final_regret = 0.0;
  std::vector<std::uint64_t> final_plays;
  std::optional<DiagnosticsRecord> diagnostics;

  bool operator==(const Trace&) const = default;
};

// Pops and returns the events due at the end of step t. Events arrive in
// play order and are delivered in play order.
inline std::vector<FeedbackEvent> delayed_feedback_step(std::deque<FeedbackEvent>& queue,
                                                        std::uint64_t t,
                                                        const DelayModel& delay) {
  std::vector<FeedbackEvent> due;
  switch (delay.kind) {
    case DelayModel::Kind::none:
      due.assign(queue.begin(), queue.end());
      queue.clear();
      break;
    case DelayModel::Kind::fixed:
      while (!queue.empty() && queue.front().t_played + delay.param <= t) {
        due.push_back(queue.front());
        queue.pop_front();
      }
      break;
    case DelayModel::Kind::batch:
      if (t % delay.param == 0) {
        due.assign(queue.begin(), queue.end());
        queue.clear();
      }
      break;
  }
  return due;
}

namespace detail {

// Accumulates the per-step diagnostics during a run. Play counts are the
// counts before the step's play, matching the k_i(t) convention of the
// saturation and violation definitions.
class DiagnosticsCollector {
 public:
  DiagnosticsCollector(const BanditInstance& instance, std::uint64_t horizon)
      : n_(instance.n_arms()),
        sat_time_(instance.n_arms(), -1),
        thresholds_(instance.n_arms(), horizon + 1),
        mu_(instance.means()),
        gaps_(instance.gaps()) {
    const double ln_t = std::log(static_cast<double>(horizon));
    std::size_t suboptimal = 0;
    for (std::size_t i = 0; i < n_; ++i) {
      if (gaps_[i] > 0.0) {
        ++suboptimal;
        const double l = std::ceil(24.0 * ln_t / (gaps_[i] * gaps_[i]));
        if (l <= static_cast<double>(horizon)) {
          thresholds_[i] = static_cast<std::uint64_t>(l);
        }
      } else if (opt_arm_ == SIZE_MAX) {
        opt_arm_ = i;
      }
    }
    two_arm_ = (n_ == 2 && suboptimal == 1);
  }

  void observe_step(std::uint64_t t, const std::vector<double>& theta,
                    const std::vector<std::uint64_t>& plays) {
    bool violated = false;
    for (std::size_t i = 0; i < n_; ++i) {
      if (gaps_[i] <= 0.0) continue;
      const bool saturated = plays[i] >= thresholds_[i];
      if (saturated && sat_time_[i] < 0) sat_time_[i] = static_cast<std::int64_t>(t);
      if (!saturated) continue;
      const double dev = theta[i] - mu_[i];
      if (two_arm_ ? dev > gaps_[i] / 2.0 : std::fabs(dev) > gaps_[i] / 2.0) violated = true;
    }
    if (violated) {
      ++record_.event_violations;
      record_.violation_steps.push_back(t);
    }
  }

  void note_play(std::uint64_t t, std::size_t arm) {
    if (arm != opt_arm_) return;
    if (last_opt_play_ == 0) {
      record_.steps_before_first_opt = t - 1;
    } else {
      push_gap(t - last_opt_play_ - 1);
    }
    last_opt_play_ = t;
  }

  DiagnosticsRecord finalize(std::uint64_t horizon) {
    record_.saturation_time = sat_time_;
    if (last_opt_play_ == 0) {
      record_.steps_before_first_opt = horizon;
    } else {
      push_gap(horizon - last_opt_play_);
    }
    return std::move(record_);
  }

 private:
  void push_gap(std::uint64_t gap) {
    ++record_.gap_count;
    record_.gap_sum += gap;
    if (gap > 0) record_.nonzero_gaps.push_back({record_.gap_count, gap});
  }

  std::size_t n_;
  std::vector<std::int64_t> sat_time_;
  std::vector<std::uint64_t> thresholds_;
  std::vector<double> mu_;
  std::vector<double> gaps_;
  std::size_t opt_arm_ = SIZE_MAX;
  bool two_arm_ = false;
  std::uint64_t last_opt_play_ = 0;
  DiagnosticsRecord record_;
};

inline void validate_run_config(const RunConfig& config, const BanditInstance& instance) {
  if (config.horizon < 1) throw std::invalid_argument("run config: horizon must be >= 1");
  std::uint64_t prev = 0;
  for (std::uint64_t c : config.checkpoints) {
    if (c <= prev) throw std::invalid_argument("run config: checkpoints must be strictly increasing");
    if (c > config.horizon) {
      throw std::invalid_argument("run config: checkpoints must not exceed the horizon");
    }
    prev = c;
  }
  if (config.diagnostics && config.policy != PolicyKind::thompson) {
    throw std::invalid_argument("run config: diagnostics need the thompson policy");
  }
  (void)instance;
}

}  // namespace detail

// One simulated run. Per step: select (thompson draws theta for arms
// 0..N-1 in order), draw the reward, draw the binarization, then deliver
// whatever feedback is due, so decisions always see the posterior as of the
// last delivered event.
inline Trace run_single(const RunConfig& config, const BanditInstance& instance) {
  detail::validate_run_config(config, instance);
  const std::size_t n = instance.n_arms();
  RngStream rng(config.seed);
  Policy policy(config.policy, n);
  std::deque<FeedbackEvent> queue;
  std::vector<double> theta;
  std::vector<std::uint64_t> plays(n, 0);
  std::optional<detail::DiagnosticsCollector> diag;
  if (config.diagnostics) diag.emplace(instance, config.horizon);

  Trace trace;
  trace.checkpoints.reserve(config.checkpoints.size());
  std::size_t next_checkpoint = 0;
  double regret = 0.0;
  const bool want_theta = config.policy == PolicyKind::thompson && config.diagnostics;

  for (std::uint64_t t = 1; t <= config.horizon; ++t) {
    const std::size_t arm = policy.select(rng, want_theta ? &theta : nullptr);
    if (diag) diag->observe_step(t, theta, plays);
    const double raw = draw_reward(instance, arm, rng);
    const int bin = binarize(raw, rng);
    ++plays[arm];
    regret += instance.gap(arm);
    if (diag) diag->note_play(t, arm);
    queue.push_back({t, static_cast<std::uint32_t>(arm), raw, static_cast<std::uint8_t>(bin)});
    for (const FeedbackEvent& event : delayed_feedback_step(queue, t, config.delay)) {
      policy.observe(event);
    }
    if (next_checkpoint < config.checkpoints.size() && t == config.checkpoints[next_checkpoint]) {
      trace.checkpoints.push_back({t, regret, plays});
      ++next_checkpoint;
    }
  }

  trace.final_regret = regret;
  trace.final_plays = std::move(plays);
  if (diag) trace.diagnostics = diag->finalize(config.horizon);
  return trace;
}

struct RegretPoint {
  std::uint64_t t = 0;
  double mean = 0.0;
  double std_err = 0.0;  // NaN when runs == 1
  std::uint64_t runs = 0;
};

struct RegretSummary {
  std::vector<RegretPoint> points;
};

// Runs an ensemble with per-run seeds derived from config.seed. Results land
// in run-indexed slots, so the output is identical for any worker count and
// any completion order.
inline std::vector<Trace> run_ensemble(const RunConfig& config, const BanditInstance& instance,
                                       std::uint64_t runs, unsigned workers) {
  if (runs < 1) throw std::invalid_argument("run_ensemble: need at least one run");
  std::vector<Trace> traces(runs);
  const auto run_one = [&](std::uint64_t r) {
    RunConfig local = config;
    local.seed = derive_stream_seed(config.seed, r);
    traces[r] = run_single(local, instance);
  };
  const unsigned used = static_cast<unsigned>(
      std::min<std::uint64_t>(std::max(1u, workers), runs));
  if (used == 1) {
    for (std::uint64_t r = 0; r < runs; ++r) run_one(r);
    return traces;
  }
  std::atomic<std::uint64_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(used);
  for (unsigned w = 0; w < used; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const std::uint64_t r = next.fetch_add(1);
        if (r >= runs) break;
        run_one(r);
      }
    });
  }
  for (auto& th : pool) th.join();
  return traces;
}

inline RegretSummary summarize(const std::vector<Trace>& traces) {
  RegretSummary summary;
  if (traces.empty()) return summary;
  const std::size_t n_points = traces[0].checkpoints.size();
  const double runs = static_cast<double>(traces.size());
  for (std::size_t c = 0; c < n_points; ++c) {
    double mean = 0.0;
    for (const Trace& tr : traces) mean += tr.checkpoints[c].regret;
    mean /= runs;
    double std_err = std::numeric_limits<double>::quiet_NaN();
    if (traces.size() > 1) {
      double ss = 0.0;
      for (const Trace& tr : traces) {
        const double d = tr.checkpoints[c].regret - mean;
        ss += d * d;
      }
      std_err = std::sqrt(ss / (runs - 1.0)) / std::sqrt(runs);
    }
    summary.points.push_back(
        {traces[0].checkpoints[c].t, mean, std_err, traces.size()});
  }
  return summary;
}

inline RegretSummary run_monte_carlo(const RunConfig& config, const BanditInstance& instance,
                                     std::uint64_t runs, unsigned workers) {
  return summarize(run_ensemble(config, instance, runs, workers));
}

}  // namespace banditlab
