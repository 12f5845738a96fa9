#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "banditlab/numerics.hpp"
#include "banditlab/rng.hpp"

namespace banditlab {

struct BernoulliLaw {
  double mu = 0.0;
};

struct DiscreteLaw {
  std::vector<double> values;
  std::vector<double> probs;
  std::vector<double> cum;  // inclusive prefix sums of probs
};

struct ScaledBetaLaw {
  double a = 1.0;
  double b = 1.0;
};

struct UniformLaw {
  double lo = 0.0;
  double hi = 1.0;
};

struct ConstantLaw {
  double c = 0.0;
};

using ArmLaw = std::variant<BernoulliLaw, DiscreteLaw, ScaledBetaLaw, UniformLaw, ConstantLaw>;

// A reward law on [0,1] with its analytic mean fixed at construction, so
// regret accounting never depends on sampling.
class ArmModel {
 public:
  static ArmModel bernoulli(double mu) {
    check_unit(mu, "bernoulli mean");
    return ArmModel(BernoulliLaw{mu}, mu);
  }

  static ArmModel discrete(std::vector<double> values, std::vector<double> probs) {
    if (values.empty() || values.size() != probs.size()) {
      throw std::invalid_argument("discrete law needs matching non-empty values and probs");
    }
    double total = 0.0;
    double mean = 0.0;
    DiscreteLaw law;
    law.values = std::move(values);
    law.probs = std::move(probs);
    law.cum.resize(law.values.size());
    for (std::size_t i = 0; i < law.values.size(); ++i) {
      check_unit(law.values[i], "discrete support point");
      if (law.probs[i] < 0.0) throw std::invalid_argument("discrete law probabilities must be >= 0");
      total += law.probs[i];
      mean += law.values[i] * law.probs[i];
      law.cum[i] = total;
    }
    if (std::fabs(total - 1.0) > 1e-12) {
      throw std::invalid_argument("discrete law probabilities must sum to 1");
    }
    law.cum.back() = 1.0;
    return ArmModel(std::move(law), mean);
  }

  static ArmModel scaled_beta(double a, double b) {
    if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b)) {
      throw std::invalid_argument("scaled_beta shapes must be positive");
    }
    return ArmModel(ScaledBetaLaw{a, b}, a / (a + b));
  }

  static ArmModel uniform(double lo, double hi) {
    check_unit(lo, "uniform lower endpoint");
    check_unit(hi, "uniform upper endpoint");
    if (lo > hi) throw std::invalid_argument("uniform law needs lo <= hi");
    return ArmModel(UniformLaw{lo, hi}, 0.5 * (lo + hi));
  }

  static ArmModel constant(double c) {
    check_unit(c, "constant reward");
    return ArmModel(ConstantLaw{c}, c);
  }

  const ArmLaw& law() const { return law_; }
  double mean() const { return mean_; }

 private:
  ArmModel(ArmLaw law, double mean) : law_(std::move(law)), mean_(mean) {}

  static void check_unit(double v, const char* what) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw std::invalid_argument(std::string(what) + " must lie in [0,1]");
    }
  }

  ArmLaw law_;
  double mean_;
};

// An ordered arm list with precomputed optimal mean and per-arm gaps.
// unique_optimum records a caller claim and is checked, not inferred.
class BanditInstance {
 public:
  explicit BanditInstance(std::vector<ArmModel> arms, bool unique_optimum = false)
      : arms_(std::move(arms)), unique_optimum_(unique_optimum) {
    if (arms_.size() < 2) throw std::invalid_argument("bandit instance needs at least 2 arms");
    mu_star_ = arms_[0].mean();
    for (const auto& arm : arms_) mu_star_ = std::max(mu_star_, arm.mean());
    gaps_.resize(arms_.size());
    for (std::size_t i = 0; i < arms_.size(); ++i) {
      gaps_[i] = mu_star_ - arms_[i].mean();
      if (gaps_[i] == 0.0) optimal_.push_back(i);
    }
    if (unique_optimum_ && optimal_.size() > 1) {
      throw std::invalid_argument("arm " + std::to_string(optimal_[1]) +
                                  " duplicates the optimal mean but unique_optimum is set");
    }
  }

  std::size_t n_arms() const { return arms_.size(); }
  const ArmModel& arm(std::size_t i) const { return arms_.at(i); }
  double mu_star() const { return mu_star_; }
  double gap(std::size_t i) const { return gaps_.at(i); }
  const std::vector<double>& gaps() const { return gaps_; }
  const std::vector<std::size_t>& optimal_arms() const { return optimal_; }
  bool unique_optimum() const { return unique_optimum_; }

  // Gaps of suboptimal arms, in arm order; what the regret bounds consume.
  std::vector<double> suboptimal_gaps() const {
    std::vector<double> out;
    for (double g : gaps_) {
      if (g > 0.0) out.push_back(g);
    }
    return out;
  }

  std::vector<double> means() const {
    std::vector<double> out(arms_.size());
    for (std::size_t i = 0; i < arms_.size(); ++i) out[i] = arms_[i].mean();
    return out;
  }

 private:
  std::vector<ArmModel> arms_;
  std::vector<double> gaps_;
  std::vector<std::size_t> optimal_;
  double mu_star_ = 0.0;
  bool unique_optimum_ = false;
};

// Per-arm success/failure counts; S_i + F_i always equals the number of
// feedback events applied for arm i, which lags plays under delay.
struct PosteriorState {
  std::vector<std::uint64_t> successes;
  std::vector<std::uint64_t> failures;

  explicit PosteriorState(std::size_t n_arms) : successes(n_arms, 0), failures(n_arms, 0) {}
  std::size_t size() const { return successes.size(); }

  bool operator==(const PosteriorState&) const = default;
};

struct FeedbackEvent {
  std::uint64_t t_played = 0;
  std::uint32_t arm = 0;
  double raw_reward = 0.0;
  std::uint8_t binarized = 0;

  bool operator==(const FeedbackEvent&) const = default;
};

inline double draw_reward(const BanditInstance& instance, std::size_t arm, RngStream& rng) {
  if (arm >= instance.n_arms()) throw std::out_of_range("draw_reward: arm index out of range");
  const ArmLaw& law = instance.arm(arm).law();
  return std::visit(
      [&rng](const auto& l) -> double {
        using L = std::decay_t<decltype(l)>;
        if constexpr (std::is_same_v<L, BernoulliLaw>) {
          return static_cast<double>(numerics::sample_bernoulli(l.mu, rng));
        } else if constexpr (std::is_same_v<L, DiscreteLaw>) {
          const double u = rng.next_double();
          for (std::size_t i = 0; i < l.cum.size(); ++i) {
            if (u < l.cum[i]) return l.values[i];
          }
          return l.values.back();
        } else if constexpr (std::is_same_v<L, ScaledBetaLaw>) {
          const double g1 = numerics::sample_gamma(l.a, rng);
          const double g2 = numerics::sample_gamma(l.b, rng);
          return g1 / (g1 + g2);
        } else if constexpr (std::is_same_v<L, UniformLaw>) {
          return l.lo + rng.next_double() * (l.hi - l.lo);
        } else {
          return l.c;
        }
      },
      law);
}

// Bernoulli trial with success probability equal to the raw reward; this is
// the reduction that lets a binary-feedback learner run on [0,1] rewards.
inline int binarize(double raw_reward, RngStream& rng) {
  numerics::detail::require(raw_reward >= 0.0 && raw_reward <= 1.0,
                            "binarize: reward must lie in [0,1]");
  return numerics::sample_bernoulli(raw_reward, rng);
}

inline void update_posterior(PosteriorState& state, std::size_t arm, int outcome) {
  if (arm >= state.size()) throw std::out_of_range("update_posterior: arm index out of range");
  if (outcome != 0 && outcome != 1) {
    throw std::domain_error("update_posterior: outcome must be 0 or 1");
  }
  if (outcome == 1) {
    ++state.successes[arm];
  } else {
    ++state.failures[arm];
  }
}

inline double pseudo_regret_increment(const BanditInstance& instance, std::size_t arm) {
  if (arm >= instance.n_arms()) {
    throw std::out_of_range("pseudo_regret_increment: arm index out of range");
  }
  return instance.gap(arm);
}

}  // namespace banditlab
