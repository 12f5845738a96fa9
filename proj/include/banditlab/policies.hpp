#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "banditlab/core.hpp"
#include "banditlab/numerics.hpp"

namespace banditlab {

enum class PolicyKind { thompson, ucb1, uniform_random };

inline const char* policy_name(PolicyKind kind) {
  switch (kind) {
    case PolicyKind::thompson: return "thompson";
    case PolicyKind::ucb1: return "ucb1";
    case PolicyKind::uniform_random: return "uniform_random";
  }
  throw std::logic_error("policy_name: bad kind");
}

inline PolicyKind policy_from_name(const std::string& name) {
  if (name == "thompson") return PolicyKind::thompson;
  if (name == "ucb1") return PolicyKind::ucb1;
  if (name == "uniform_random") return PolicyKind::uniform_random;
  throw std::invalid_argument("unknown policy '" + name + "'");
}

struct Ucb1State {
  std::vector<std::uint64_t> plays;   // observed plays, lags real plays under delay
  std::vector<double> means;          // running means of raw rewards
  std::uint64_t t = 0;                // current time, counted from 1 at first select

  explicit Ucb1State(std::size_t n_arms) : plays(n_arms, 0), means(n_arms, 0.0) {}

  bool operator==(const Ucb1State&) const = default;
};

// Sample one posterior draw per arm (in arm order) and play the argmax; ties
// break to the lowest index. theta_out, when non-null, receives the draws.
inline std::size_t ts_select(const PosteriorState& posterior, RngStream& rng,
                             std::vector<double>* theta_out = nullptr) {
  const std::size_t n = posterior.size();
  if (n == 0) throw std::invalid_argument("ts_select: empty posterior");
  if (theta_out) theta_out->resize(n);
  std::size_t best = 0;
  double best_theta = -1.0;
  for (std::size_t i = 0; i < n; ++i) {
    const numerics::BetaParams params{
        static_cast<std::int64_t>(posterior.successes[i]) + 1,
        static_cast<std::int64_t>(posterior.failures[i]) + 1};
    const double theta = numerics::sample_beta(params, rng);
    if (theta_out) (*theta_out)[i] = theta;
    if (theta > best_theta) {
      best_theta = theta;
      best = i;
    }
  }
  return best;
}

// Classic UCB1 index mu_i + sqrt(2 ln t / k_i) after one initial pass over
// the arms in index order. state.t must already be the current time.
inline std::size_t ucb1_select(const Ucb1State& state) {
  const std::size_t n = state.plays.size();
  if (n == 0) throw std::invalid_argument("ucb1_select: no arms");
  if (state.t < 1) throw std::domain_error("ucb1_select: t must be >= 1");
  for (std::size_t i = 0; i < n; ++i) {
    if (state.plays[i] == 0) return i;
  }
  const double ln_t = std::log(static_cast<double>(state.t));
  std::size_t best = 0;
  double best_index = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    const double index =
        state.means[i] + std::sqrt(2.0 * ln_t / static_cast<double>(state.plays[i]));
    if (index > best_index) {
      best_index = index;
      best = i;
    }
  }
  return best;
}

// Policy state bundle. Thompson feeds on the binarized outcome, UCB1 on the
// raw reward, uniform_random ignores feedback entirely.
class Policy {
 public:
  Policy(PolicyKind kind, std::size_t n_arms)
      : kind_(kind), n_arms_(n_arms), posterior_(n_arms), ucb_(n_arms) {
    if (n_arms < 1) throw std::invalid_argument("policy needs at least one arm");
  }

  PolicyKind kind() const { return kind_; }
  const PosteriorState& posterior() const { return posterior_; }
  const Ucb1State& ucb_state() const { return ucb_; }

  std::size_t select(RngStream& rng, std::vector<double>* theta_out = nullptr) {
    switch (kind_) {
      case PolicyKind::thompson:
        return ts_select(posterior_, rng, theta_out);
      case PolicyKind::ucb1:
        ++ucb_.t;
        return ucb1_select(ucb_);
      case PolicyKind::uniform_random: {
        const auto arm = static_cast<std::size_t>(rng.next_double() * static_cast<double>(n_arms_));
        return std::min(arm, n_arms_ - 1);
      }
    }
    throw std::logic_error("policy select: bad kind");
  }

  void observe(const FeedbackEvent& event) {
    if (event.arm >= n_arms_) throw std::out_of_range("policy observe: arm index out of range");
    switch (kind_) {
      case PolicyKind::thompson:
        update_posterior(posterior_, event.arm, event.binarized ? 1 : 0);
        break;
      case PolicyKind::ucb1: {
        auto& k = ucb_.plays[event.arm];
        ++k;
        ucb_.means[event.arm] += (event.raw_reward - ucb_.means[event.arm]) / static_cast<double>(k);
        break;
      }
      case PolicyKind::uniform_random:
        break;
    }
  }

 private:
  PolicyKind kind_;
  std::size_t n_arms_;
  PosteriorState posterior_;
  Ucb1State ucb_;
};

// Free-function form of the feedback dispatch, for callers holding the
// states directly.
inline void policy_observe(PolicyKind kind, PosteriorState& posterior, Ucb1State& ucb,
                           const FeedbackEvent& event) {
  switch (kind) {
    case PolicyKind::thompson:
      update_posterior(posterior, event.arm, event.binarized ? 1 : 0);
      break;
    case PolicyKind::ucb1: {
      if (event.arm >= ucb.plays.size()) {
        throw std::out_of_range("policy_observe: arm index out of range");
      }
      auto& k = ucb.plays[event.arm];
      ++k;
      ucb.means[event.arm] += (event.raw_reward - ucb.means[event.arm]) / static_cast<double>(k);
      break;
    }
    case PolicyKind::uniform_random:
      break;
  }
}

}  // namespace banditlab
