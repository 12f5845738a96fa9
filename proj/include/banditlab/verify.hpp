#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "banditlab/bounds.hpp"
#include "banditlab/core.hpp"
#include "banditlab/csv.hpp"
#include "banditlab/numerics.hpp"
#include "banditlab/policies.hpp"
#include "banditlab/simulator.hpp"

namespace banditlab::verify {

enum class Budget { smoke, full };

inline Budget budget_from_name(const std::string& name) {
  if (name == "smoke") return Budget::smoke;
  if (name == "full") return Budget::full;
  throw std::invalid_argument("unknown budget '" + name + "'");
}

enum class CheckStatus { pass, fail, skipped_budget };

inline const char* status_name(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    case CheckStatus::skipped_budget: return "skipped(budget)";
  }
  return "?";
}

struct CheckResult {
  std::string name;
  CheckStatus status = CheckStatus::fail;
  double observed = 0.0;
  double threshold = 0.0;
  std::string note;
};

struct CheckContext {
  Budget budget = Budget::smoke;
  unsigned workers = 1;
  std::uint64_t seed = 20260814;
};

namespace detail {

inline CheckResult bounded(const std::string& name, double observed, double threshold,
                           std::string note = {}) {
  CheckResult r;
  r.name = name;
  r.observed = observed;
  r.threshold = threshold;
  r.status = observed <= threshold ? CheckStatus::pass : CheckStatus::fail;
  r.note = std::move(note);
  return r;
}

struct MeanStats {
  double mean = 0.0;
  double std_err = 0.0;
  std::size_t n = 0;
};

inline MeanStats mean_stats(const std::vector<double>& xs) {
  MeanStats s;
  s.n = xs.size();
  if (xs.empty()) return s;
  for (double x : xs) s.mean += x;
  s.mean /= static_cast<double>(xs.size());
  if (xs.size() > 1) {
    double ss = 0.0;
    for (double x : xs) {
      const double d = x - s.mean;
      ss += d * d;
    }
    s.std_err = std::sqrt(ss / static_cast<double>(xs.size() - 1)) /
                std::sqrt(static_cast<double>(xs.size()));
  }
  return s;
}

inline double z_against(const MeanStats& s, double expected) {
  const double diff = std::fabs(s.mean - expected);
  // sub-rounding agreement counts as exact; degenerate samples otherwise fail
  if (diff < 1e-12) return 0.0;
  if (s.std_err == 0.0) return std::numeric_limits<double>::infinity();
  return diff / s.std_err;
}

// Exact Binomial(n, p) pmf by multiplicative recursion in long double;
// usable up to a few thousand trials before range becomes a concern.
inline std::vector<long double> binomial_pmf_table(std::int64_t n, double p) {
  std::vector<long double> pmf(static_cast<std::size_t>(n) + 1);
  const long double lp = static_cast<long double>(p);
  if (p == 0.0) {
    pmf[0] = 1.0L;
    return pmf;
  }
  if (p == 1.0) {
    pmf[static_cast<std::size_t>(n)] = 1.0L;
    return pmf;
  }
  const long double ratio = lp / (1.0L - lp);
  pmf[0] = std::pow(1.0L - lp, static_cast<long double>(n));
  for (std::int64_t i = 0; i < n; ++i) {
    pmf[static_cast<std::size_t>(i) + 1] = pmf[static_cast<std::size_t>(i)] * ratio *
                                           static_cast<long double>(n - i) /
                                           static_cast<long double>(i + 1);
  }
  return pmf;
}

inline long double brute_binomial_cdf(const std::vector<long double>& pmf, std::int64_t k) {
  long double sum = 0.0L;
  for (std::int64_t i = 0; i <= k && i < static_cast<std::int64_t>(pmf.size()); ++i) {
    sum += pmf[static_cast<std::size_t>(i)];
  }
  return sum;
}

inline long double brute_binomial_upper_tail(const std::vector<long double>& pmf,
                                             std::int64_t from) {
  long double sum = 0.0L;
  for (std::int64_t i = std::max<std::int64_t>(from, 0);
       i < static_cast<std::int64_t>(pmf.size()); ++i) {
    sum += pmf[static_cast<std::size_t>(i)];
  }
  return sum;
}

inline BanditInstance two_arm(double mu1, double mu2) {
  return BanditInstance({ArmModel::bernoulli(mu1), ArmModel::bernoulli(mu2)});
}

}  // namespace detail

// ---------------------------------------------------------------------------
// identities

inline CheckResult check_fact1_beta_binomial(const CheckContext& ctx) {
  const bool full = ctx.budget == Budget::full;
  std::vector<std::int64_t> shapes;
  if (full) {
    for (std::int64_t a = 1; a <= 100; ++a) shapes.push_back(a);
  } else {
    shapes = {1, 2, 3, 7, 20, 50, 100};
  }
  double worst = 0.0;
  for (std::int64_t a : shapes) {
    for (std::int64_t b : shapes) {
      for (int yi = 1; yi <= 99; ++yi) {
        const double y = static_cast<double>(yi) / 100.0;
        const double lhs = numerics::beta_cdf({a, b}, y);
        const double rhs = numerics::beta_cdf_oracle({a, b}, y);
        worst = std::max(worst, std::fabs(lhs - rhs));
      }
    }
  }
  return detail::bounded("fact1_beta_binomial", worst, 1e-10);
}

inline CheckResult check_beta_cdf_monotone(const CheckContext& ctx) {
  const int steps = ctx.budget == Budget::full ? 512 : 128;
  const std::vector<numerics::BetaParams> shapes = {{1, 1}, {2, 5}, {7, 7}, {30, 70}, {100, 3}};
  double worst = 0.0;
  for (const auto& s : shapes) {
    double prev = numerics::beta_cdf(s, 0.0);
    worst = std::max(worst, std::fabs(prev));
    for (int i = 1; i <= steps; ++i) {
      const double y = static_cast<double>(i) / steps;
      const double f = numerics::beta_cdf(s, y);
      worst = std::max(worst, prev - f);
      prev = f;
    }
    worst = std::max(worst, std::fabs(prev - 1.0));
  }
  return detail::bounded("beta_cdf_monotone", worst, 1e-12);
}

inline CheckResult check_binomial_cdf_routes(const CheckContext& ctx) {
  const std::vector<std::int64_t> ns =
      ctx.budget == Budget::full ? std::vector<std::int64_t>{1000, 2000, 5000, 8000, 10000}
                                 : std::vector<std::int64_t>{1000, 4000};
  const std::vector<double> ps = {0.01, 0.1, 0.5, 0.9, 0.99};
  double worst = 0.0;
  for (std::int64_t n : ns) {
    for (double p : ps) {
      const std::int64_t near_mean = static_cast<std::int64_t>(static_cast<double>(n) * p);
      const std::vector<std::int64_t> ks = {0,        n / 10,        n / 4,       n / 2,
                                            3 * n / 4, n - 1,        near_mean,   near_mean + 1,
                                            std::max<std::int64_t>(near_mean - 1, 0)};
      for (std::int64_t k : ks) {
        const double by_sum = numerics::detail::binomial_cdf_sum(n, p, std::min(k, n - 1));
        const double by_cf = static_cast<double>(numerics::detail::reg_inc_beta(
            n - std::min(k, n - 1), std::min(k, n - 1) + 1, 1.0L - static_cast<long double>(p)));
        worst = std::max(worst, std::fabs(by_sum - by_cf));
      }
    }
  }
  return detail::bounded("binomial_cdf_routes", worst, 1e-12);
}

inline CheckResult check_binomial_median_bruteforce(const CheckContext& ctx) {
  (void)ctx;
  std::uint64_t failures = 0;
  for (std::int64_t n = 0; n <= 60; ++n) {
    for (int pi = 1; pi <= 19; ++pi) {
      const double p = static_cast<double>(pi) / 20.0;
      const std::int64_t m = numerics::binomial_median({n, p});
      const double np = static_cast<double>(n) * p;
      const auto pmf = detail::binomial_pmf_table(n, p);
      const long double at_most = detail::brute_binomial_cdf(pmf, m);
      const long double at_least = detail::brute_binomial_upper_tail(pmf, m);
      const bool in_bracket = m >= static_cast<std::int64_t>(std::floor(np)) &&
                              m <= static_cast<std::int64_t>(std::ceil(np));
      if (!in_bracket || at_most < 0.5L - 1e-9L || at_least < 0.5L - 1e-9L) ++failures;
    }
  }
  return detail::bounded("binomial_median_bruteforce", static_cast<double>(failures), 0.0);
}

inline CheckResult check_chernoff_dominance(const CheckContext& ctx) {
  const std::vector<std::int64_t> ns = {10, 50, 100, 500};
  const int delta_steps = ctx.budget == Budget::full ? 30 : 10;
  double worst = -std::numeric_limits<double>::infinity();
  for (std::int64_t n : ns) {
    for (int pi = 1; pi <= 9; ++pi) {
      const double p = static_cast<double>(pi) / 10.0;
      const double np = static_cast<double>(n) * p;
      for (int di = 1; di <= delta_steps; ++di) {
        const double delta = 0.01 * static_cast<double>(di) * (30.0 / delta_steps);
        const double nd = static_cast<double>(n) * delta;
        const double lower = numerics::binomial_cdf(
            {n, p}, static_cast<std::int64_t>(std::floor(np - nd)));
        const double upper =
            1.0 - numerics::binomial_cdf({n, p}, static_cast<std::int64_t>(std::floor(np + nd)));
        const double shifted = 1.0 - numerics::binomial_cdf(
                                         {n + 1, p}, static_cast<std::int64_t>(std::floor(np + nd)));
        worst = std::max(
            worst, lower - numerics::chernoff_tail_bound({n, p, delta, numerics::TailSide::lower}));
        worst = std::max(
            worst, upper - numerics::chernoff_tail_bound({n, p, delta, numerics::TailSide::upper}));
        worst = std::max(worst, shifted - numerics::chernoff_tail_bound(
                                              {n, p, delta, numerics::TailSide::upper_shifted}));
      }
    }
  }
  return detail::bounded("chernoff_dominance", worst, 1e-12);
}

inline CheckResult check_pinsker(const CheckContext& ctx) {
  const int steps = ctx.budget == Budget::full ? 400 : 100;
  double worst = -std::numeric_limits<double>::infinity();
  for (int yi = 0; yi <= steps; ++yi) {
    const double y = static_cast<double>(yi) / steps;
    for (int mi = 1; mi < steps; ++mi) {
      const double mu = static_cast<double>(mi) / steps;
      worst = std::max(worst, 2.0 * (mu - y) * (mu - y) - numerics::kl_bernoulli(y, mu));
    }
  }
  return detail::bounded("pinsker_lower_bound", worst, 1e-12);
}

inline CheckResult check_thm1_eq1_identity(const CheckContext& ctx) {
  (void)ctx;
  const std::vector<double> ts = {2.0, std::exp(1.0), 10.0, 1000.0, 1e6};
  double worst = 0.0;
  for (double t : ts) {
    for (int di = 1; di <= 20; ++di) {
      const double delta = static_cast<double>(di) / 20.0;
      const double lhs = bounds::thm1_bound(t, delta);
      const double rhs = delta * bounds::eq1_play_count_bound(t, delta);
      worst = std::max(worst, std::fabs(lhs - rhs) / std::max(1.0, std::fabs(lhs)));
    }
  }
  return detail::bounded("thm1_eq1_identity", worst, 1e-12);
}

inline CheckResult check_bound_monotonicity(const CheckContext& ctx) {
  (void)ctx;
  const std::vector<double> ts = {10, 100, 1000, 1e4, 1e5, 1e6};
  const std::vector<double> gaps = {0.1, 0.3};
  const std::vector<double> single_gap = {0.3};
  const std::vector<double> means = {0.5, 0.4};
  const std::vector<bounds::BoundSpec> specs = {
      {bounds::BoundKind::thm1, single_gap, {}, 1.0},
      {bounds::BoundKind::eq1_play_count, single_gap, {}, 1.0},
      {bounds::BoundKind::thm2_appendix, gaps, {}, 1.0},
      {bounds::BoundKind::remark1_shape, gaps, {}, 1.0},
      {bounds::BoundKind::lai_robbins_lower, {}, means, 1.0},
      {bounds::BoundKind::ucb1_auer, gaps, {}, 1.0},
  };
  double worst = -std::numeric_limits<double>::infinity();
  for (const auto& spec : specs) {
    double prev = -std::numeric_limits<double>::infinity();
    for (double t : ts) {
      const double v = bounds::evaluate_bound(spec, t);
      worst = std::max(worst, prev - v);
      prev = v;
    }
  }
  return detail::bounded("bound_monotonicity", worst, 0.0);
}

// ---------------------------------------------------------------------------
// samplers

inline CheckResult check_beta_sampler_ks(const CheckContext& ctx) {
  const std::size_t n = ctx.budget == Budget::full ? 100000 : 10000;
  const std::vector<numerics::BetaParams> shapes = {{1, 1}, {2, 5}, {30, 70}, {100, 3}};
  const double critical = numerics::ks_critical_value(n, 1e-3);
  double worst_ratio = 0.0;
  std::uint64_t salt = 0;
  for (const auto& s : shapes) {
    RngStream rng(derive_stream_seed(ctx.seed, 100 + salt++));
    std::vector<double> draws(n);
    for (double& d : draws) d = numerics::sample_beta(s, rng);
    std::sort(draws.begin(), draws.end());
    const double stat = numerics::ks_statistic_sorted(
        draws, [&](double x) { return numerics::beta_cdf(s, x); });
    worst_ratio = std::max(worst_ratio, stat / critical);
  }
  return detail::bounded("beta_sampler_ks", worst_ratio, 1.0);
}

inline CheckResult check_beta_orderstat_ks(const CheckContext& ctx) {
  const std::size_t n = ctx.budget == Budget::full ? 100000 : 10000;
  const std::vector<numerics::BetaParams> shapes = {{1, 1}, {2, 5}, {30, 34}};
  const double critical = numerics::ks_critical_value(n, 1e-3);
  double worst_ratio = 0.0;
  std::uint64_t salt = 0;
  for (const auto& s : shapes) {
    RngStream rng(derive_stream_seed(ctx.seed, 200 + salt++));
    std::vector<double> draws(n);
    for (double& d : draws) d = numerics::sample_beta_orderstat(s, rng);
    std::sort(draws.begin(), draws.end());
    const double stat = numerics::ks_statistic_sorted(
        draws, [&](double x) { return numerics::beta_cdf(s, x); });
    worst_ratio = std::max(worst_ratio, stat / critical);
  }
  return detail::bounded("beta_orderstat_ks", worst_ratio, 1.0);
}

inline CheckResult check_bernoulli_mean(const CheckContext& ctx) {
  const std::size_t n = ctx.budget == Budget::full ? 1000000 : 100000;
  const double p = 0.35;
  RngStream rng(derive_stream_seed(ctx.seed, 300));
  std::uint64_t ones = 0;
  for (std::size_t i = 0; i < n; ++i) ones += numerics::sample_bernoulli(p, rng);
  const double mean = static_cast<double>(ones) / static_cast<double>(n);
  const double se = std::sqrt(p * (1.0 - p) / static_cast<double>(n));
  return detail::bounded("bernoulli_mean", std::fabs(mean - p) / se, 3.0);
}

inline CheckResult check_ts_probability_matching(const CheckContext& ctx) {
  const std::size_t n = ctx.budget == Budget::full ? 100000 : 20000;
  PosteriorState posterior(2);
  posterior.successes = {3, 7};
  posterior.failures = {5, 5};
  RngStream select_rng(derive_stream_seed(ctx.seed, 400));
  std::uint64_t select_zero = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (ts_select(posterior, select_rng) == 0) ++select_zero;
  }
  RngStream oracle_rng(derive_stream_seed(ctx.seed, 401));
  std::uint64_t oracle_zero = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double t0 = numerics::sample_beta({4, 6}, oracle_rng);
    const double t1 = numerics::sample_beta({8, 6}, oracle_rng);
    if (t0 > t1) ++oracle_zero;
  }
  const double f1 = static_cast<double>(select_zero) / static_cast<double>(n);
  const double f2 = static_cast<double>(oracle_zero) / static_cast<double>(n);
  const double se =
      std::sqrt((f1 * (1.0 - f1) + f2 * (1.0 - f2)) / static_cast<double>(n));
  const double z = se == 0.0 ? 0.0 : std::fabs(f1 - f2) / se;
  return detail::bounded("ts_probability_matching", z, 3.0);
}

inline CheckResult check_ts_exchangeable_chi2(const CheckContext& ctx) {
  const std::size_t n = ctx.budget == Budget::full ? 100000 : 20000;
  const std::size_t arms = 5;
  PosteriorState posterior(arms);
  for (std::size_t i = 0; i < arms; ++i) {
    posterior.successes[i] = 2;
    posterior.failures[i] = 3;
  }
  RngStream rng(derive_stream_seed(ctx.seed, 500));
  std::vector<std::uint64_t> counts(arms, 0);
  for (std::size_t i = 0; i < n; ++i) ++counts[ts_select(posterior, rng)];
  const double expected = static_cast<double>(n) / static_cast<double>(arms);
  double chi2 = 0.0;
  for (std::uint64_t c : counts) {
    const double d = static_cast<double>(c) - expected;
    chi2 += d * d / expected;
  }
  // chi-square upper quantile at significance 1e-3, 4 degrees of freedom
  return detail::bounded("ts_exchangeable_chi2", chi2, 18.4668);
}

inline CheckResult check_ts_degenerate_posterior(const CheckContext& ctx) {
  (void)ctx;
  PosteriorState posterior(2);
  posterior.successes = {1000, 0};
  posterior.failures = {0, 1000};
  RngStream rng(derive_stream_seed(ctx.seed, 600));
  const std::size_t n = 10000;
  std::uint64_t wrong = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (ts_select(posterior, rng) != 0) ++wrong;
  }
  return detail::bounded("ts_degenerate_posterior",
                         static_cast<double>(wrong) / static_cast<double>(n), 0.001);
}

inline CheckResult check_arm_reward_means(const CheckContext& ctx) {
  const std::size_t n = ctx.budget == Budget::full ? 200000 : 20000;
  const BanditInstance instance({
      ArmModel::bernoulli(0.4),
      ArmModel::scaled_beta(2.0, 2.0),
      ArmModel::uniform(0.2, 0.8),
      ArmModel::constant(0.7),
      ArmModel::discrete({0.1, 0.5, 0.9}, {0.3, 0.2, 0.5}),
  });
  RngStream rng(derive_stream_seed(ctx.seed, 700));
  double worst = 0.0;
  for (std::size_t arm = 0; arm < instance.n_arms(); ++arm) {
    std::vector<double> draws(n);
    for (double& d : draws) d = draw_reward(instance, arm, rng);
    const auto stats = detail::mean_stats(draws);
    worst = std::max(worst, detail::z_against(stats, instance.arm(arm).mean()));
  }
  return detail::bounded("arm_reward_means", worst, 3.0);
}

inline CheckResult check_binarize_composition(const CheckContext& ctx) {
  const std::size_t n = ctx.budget == Budget::full ? 200000 : 20000;
  const BanditInstance instance({ArmModel::uniform(0.0, 1.0), ArmModel::scaled_beta(2.0, 2.0)});
  RngStream rng(derive_stream_seed(ctx.seed, 800));
  double worst = 0.0;
  for (std::size_t arm = 0; arm < instance.n_arms(); ++arm) {
    std::vector<double> outcomes(n);
    for (double& o : outcomes) o = static_cast<double>(binarize(draw_reward(instance, arm, rng), rng));
    const auto stats = detail::mean_stats(outcomes);
    worst = std::max(worst, detail::z_against(stats, instance.arm(arm).mean()));
  }
  return detail::bounded("binarize_composition", worst, 3.0);
}

// ---------------------------------------------------------------------------
// lemmas

inline CheckResult check_lemma1_geometric(const CheckContext& ctx) {
  const std::size_t reps = ctx.budget == Budget::full ? 100000 : 10000;
  struct Case {
    std::int64_t j, s;
    double y;
  };
  const std::vector<Case> cases = {{0, 0, 0.5}, {2, 1, 0.5}, {10, 9, 0.3}, {50, 25, 0.6}};
  double worst = 0.0;
  std::uint64_t salt = 0;
  for (const auto& c : cases) {
    const auto expected = numerics::expected_interplay_gap(c.j, c.s, c.y);
    RngStream rng(derive_stream_seed(ctx.seed, 900 + salt++));
    const numerics::BetaParams posterior{c.s + 1, c.j - c.s + 1};
    double sum = 0.0;
    for (std::size_t r = 0; r < reps; ++r) {
      std::uint64_t count = 0;
      while (numerics::sample_beta(posterior, rng) <= c.y && count < 10000000) ++count;
      sum += static_cast<double>(count);
    }
    const double mean = sum / static_cast<double>(reps);
    // SE from the null geometric variance (1-q)/q^2: stays defined even when
    // the escape is so rare that no rep observes one
    const double q = 1.0 / (expected.value + 1.0);
    const double se = std::sqrt((1.0 - q) / (q * q) / static_cast<double>(reps));
    worst = std::max(worst, std::fabs(mean - expected.value) / se);
  }
  return detail::bounded("lemma1_geometric", worst, 3.0);
}

// Per-step frequency of the saturated upward escape event in a two-arm run,
// against its 2/T^2 probability bound. Skipped on the smoke budget.
inline CheckResult check_lemma2_escape_frequency(const CheckContext& ctx) {
  if (ctx.budget != Budget::full) {
    CheckResult r;
    r.name = "lemma2_escape_frequency";
    r.status = CheckStatus::skipped_budget;
    r.note = "runs under --budget full only";
    return r;
  }
  const std::uint64_t horizon = 100;
  const std::uint64_t runs = 100000;
  RunConfig rc;
  rc.horizon = horizon;
  rc.seed = derive_stream_seed(ctx.seed, 1000);
  rc.policy = PolicyKind::thompson;
  rc.diagnostics = true;
  rc.checkpoints = {horizon};
  const BanditInstance instance = detail::two_arm(0.5, 0.4);
  const auto traces = run_ensemble(rc, instance, runs, ctx.workers);
  std::vector<std::uint64_t> counts(horizon + 1, 0);
  for (const Trace& tr : traces) {
    for (std::uint64_t t : tr.diagnostics->violation_steps) ++counts[t];
  }
  const double bound = 2.0 / (static_cast<double>(horizon) * static_cast<double>(horizon));
  const double se = std::sqrt(bound * (1.0 - bound) / static_cast<double>(runs));
  double worst = 0.0;
  for (std::uint64_t t = 1; t <= horizon; ++t) {
    worst = std::max(worst, static_cast<double>(counts[t]) / static_cast<double>(runs));
  }
  return detail::bounded("lemma2_escape_frequency", worst, bound + 3.0 * se);
}

inline CheckResult check_lemma3_envelope_mc(const CheckContext& ctx) {
  const std::size_t reps = ctx.budget == Budget::full ? 40000 : 4000;
  struct Scenario {
    double y, mu1;
    std::int64_t horizon;
  };
  const std::vector<Scenario> scenarios = {
      {0.3, 0.5, 1000}, {0.45, 0.5, 100}, {0.2, 0.8, 10000}, {0.1, 0.3, 50}};
  const std::vector<std::int64_t> js = {0, 1, 3, 10, 30, 100, 300, 1000, 3000};
  double worst = -std::numeric_limits<double>::infinity();
  std::uint64_t salt = 0;
  for (const auto& sc : scenarios) {
    for (std::int64_t j : js) {
      const double env = numerics::lemma3_envelope(j, sc.y, sc.mu1, sc.horizon);
      RngStream rng(derive_stream_seed(ctx.seed, 1100 + salt++));
      std::vector<double> values(reps);
      for (double& v : values) {
        std::int64_t s = 0;
        for (std::int64_t i = 0; i < j; ++i) s += numerics::sample_bernoulli(sc.mu1, rng);
        // E[min(X, T) | s] for the geometric wait with success prob q
        const double q = numerics::binomial_cdf({j + 1, sc.y}, s);
        const double miss = 1.0 - q;
        v = miss * (1.0 - std::pow(miss, static_cast<double>(sc.horizon))) / q;
      }
      const auto stats = detail::mean_stats(values);
      double z;
      if (stats.std_err == 0.0) {
        z = stats.mean <= env ? 0.0 : std::numeric_limits<double>::infinity();
      } else {
        z = (stats.mean - env) / stats.std_err;
      }
      worst = std::max(worst, z);
    }
  }
  return detail::bounded("lemma3_envelope_mc", worst, 3.0);
}

// ---------------------------------------------------------------------------
// regret

inline CheckResult check_uniform_random_regret(const CheckContext& ctx) {
  const std::uint64_t horizon = ctx.budget == Budget::full ? 10000 : 2000;
  const std::uint64_t runs = 300;
  RunConfig rc;
  rc.horizon = horizon;
  rc.seed = derive_stream_seed(ctx.seed, 1200);
  rc.policy = PolicyKind::uniform_random;
  rc.checkpoints = {horizon};
  const BanditInstance instance = detail::two_arm(0.5, 0.3);
  const auto traces = run_ensemble(rc, instance, runs, ctx.workers);
  std::vector<double> regrets(traces.size());
  for (std::size_t i = 0; i < traces.size(); ++i) regrets[i] = traces[i].final_regret;
  const auto stats = detail::mean_stats(regrets);
  const double expected = static_cast<double>(horizon) * 0.2 / 2.0;
  return detail::bounded("uniform_random_regret", detail::z_against(stats, expected), 3.0);
}

struct Thm1DominanceParams {
  std::uint64_t horizon = 10000;
  std::uint64_t runs = 100;
};

inline CheckResult check_thm1_dominance(const CheckContext& ctx,
                                        const Thm1DominanceParams& params) {
  const double gap = 0.1;
  RunConfig rc;
  rc.horizon = params.horizon;
  rc.seed = derive_stream_seed(ctx.seed, 1300);
  rc.policy = PolicyKind::thompson;
  rc.checkpoints = {params.horizon / 100, params.horizon / 10, params.horizon};
  const BanditInstance instance = detail::two_arm(0.5, 0.4);
  const auto summary = run_monte_carlo(rc, instance, params.runs, ctx.workers);
  const RegretPoint& last = summary.points.back();
  const double bound = bounds::thm1_bound(static_cast<double>(params.horizon), gap);
  const double upper = last.mean + 3.0 * last.std_err;
  const double inc1 = summary.points[1].mean - summary.points[0].mean;
  const double inc2 = summary.points[2].mean - summary.points[1].mean;
  const double ratio = inc2 / inc1;
  CheckResult r = detail::bounded("thm1_dominance", upper, bound);
  std::ostringstream note;
  note << "decade increments " << io::format_double(inc1) << " -> " << io::format_double(inc2);
  if (!(ratio >= 1.0 / 2.5 && ratio <= 2.5)) {
    r.status = CheckStatus::fail;
    note << " (ratio " << io::format_double(ratio) << " outside [0.4, 2.5])";
  }
  r.note = note.str();
  return r;
}

inline CheckResult check_thm1_dominance(const CheckContext& ctx) {
  Thm1DominanceParams params;
  if (ctx.budget == Budget::full) {
    params.horizon = 100000;
    params.runs = 1000;
  }
  return check_thm1_dominance(ctx, params);
}

struct Thm2DominanceParams {
  std::uint64_t horizon = 10000;
  std::uint64_t runs = 100;
};

inline CheckResult check_thm2_dominance(const CheckContext& ctx,
                                        const Thm2DominanceParams& params) {
  RunConfig rc;
  rc.horizon = params.horizon;
  rc.seed = derive_stream_seed(ctx.seed, 1400);
  rc.policy = PolicyKind::thompson;
  rc.checkpoints = {params.horizon};
  const BanditInstance instance({ArmModel::bernoulli(0.6), ArmModel::bernoulli(0.5),
                                 ArmModel::bernoulli(0.45), ArmModel::bernoulli(0.4),
                                 ArmModel::bernoulli(0.3)});
  const auto summary = run_monte_carlo(rc, instance, params.runs, ctx.workers);
  const RegretPoint& last = summary.points.back();
  const double bound =
      bounds::thm2_bound(static_cast<double>(params.horizon), instance.suboptimal_gaps());
  return detail::bounded("thm2_dominance", last.mean + 3.0 * last.std_err, bound);
}

inline CheckResult check_thm2_dominance(const CheckContext& ctx) {
  Thm2DominanceParams params;
  if (ctx.budget == Budget::full) {
    params.horizon = 100000;
    params.runs = 500;
  }
  return check_thm2_dominance(ctx, params);
}

struct TwoEnsembleParams {
  std::uint64_t horizon = 2000;
  std::uint64_t runs = 300;
};

// Adding a second optimal arm must not raise expected regret.
inline CheckResult check_appendix_a_monotonicity(const CheckContext& ctx,
                                                 const TwoEnsembleParams& params) {
  RunConfig rc;
  rc.horizon = params.horizon;
  rc.seed = derive_stream_seed(ctx.seed, 1500);
  rc.policy = PolicyKind::thompson;
  rc.checkpoints = {params.horizon};
  const BanditInstance base = detail::two_arm(0.5, 0.4);
  const BanditInstance extended(
      {ArmModel::bernoulli(0.5), ArmModel::bernoulli(0.4), ArmModel::bernoulli(0.5)});
  const auto sum_base = run_monte_carlo(rc, base, params.runs, ctx.workers);
  rc.seed = derive_stream_seed(ctx.seed, 1501);
  const auto sum_ext = run_monte_carlo(rc, extended, params.runs, ctx.workers);
  const RegretPoint& a = sum_base.points.back();
  const RegretPoint& b = sum_ext.points.back();
  const double se = std::sqrt(a.std_err * a.std_err + b.std_err * b.std_err);
  const double z = (b.mean - a.mean) / se;
  return detail::bounded("appendix_a_monotonicity", z, 3.0,
                         "regret " + io::format_double(a.mean) + " vs " +
                             io::format_double(b.mean) + " with extra optimal arm");
}

inline CheckResult check_appendix_a_monotonicity(const CheckContext& ctx) {
  TwoEnsembleParams params;
  if (ctx.budget == Budget::full) {
    params.horizon = 10000;
    params.runs = 2000;
  }
  return check_appendix_a_monotonicity(ctx, params);
}

// A [0,1]-reward arm and a Bernoulli arm with the same mean must induce the
// same play-count distribution through the binarized feedback channel.
inline CheckResult check_reduction_equivalence(const CheckContext& ctx,
                                               const TwoEnsembleParams& params) {
  RunConfig rc;
  rc.horizon = params.horizon;
  rc.seed = derive_stream_seed(ctx.seed, 1600);
  rc.policy = PolicyKind::thompson;
  rc.checkpoints = {params.horizon};
  const BanditInstance bernoulli_pair = detail::two_arm(0.5, 0.4);
  const BanditInstance mixed({ArmModel::scaled_beta(2.0, 2.0), ArmModel::bernoulli(0.4)});
  const auto traces_a = run_ensemble(rc, bernoulli_pair, params.runs, ctx.workers);
  rc.seed = derive_stream_seed(ctx.seed, 1601);
  const auto traces_b = run_ensemble(rc, mixed, params.runs, ctx.workers);
  double worst = 0.0;
  for (std::size_t arm = 0; arm < 2; ++arm) {
    std::vector<double> plays_a(traces_a.size()), plays_b(traces_b.size());
    for (std::size_t i = 0; i < traces_a.size(); ++i) {
      plays_a[i] = static_cast<double>(traces_a[i].final_plays[arm]);
    }
    for (std::size_t i = 0; i < traces_b.size(); ++i) {
      plays_b[i] = static_cast<double>(traces_b[i].final_plays[arm]);
    }
    const auto sa = detail::mean_stats(plays_a);
    const auto sb = detail::mean_stats(plays_b);
    const double se = std::sqrt(sa.std_err * sa.std_err + sb.std_err * sb.std_err);
    worst = std::max(worst, std::fabs(sa.mean - sb.mean) / se);
  }
  return detail::bounded("reduction_equivalence", worst, 3.0);
}

inline CheckResult check_reduction_equivalence(const CheckContext& ctx) {
  TwoEnsembleParams params;
  if (ctx.budget == Budget::full) {
    params.horizon = 10000;
    params.runs = 2000;
  }
  return check_reduction_equivalence(ctx, params);
}

struct DelayParams {
  std::uint64_t horizon = 10000;
  std::uint64_t runs = 100;
};

// Per-step regret must keep falling under delayed feedback: the rate at T
// has to be under half the rate at T/10.
inline CheckResult check_delay_sublinearity(const CheckContext& ctx, const DelayParams& params) {
  const BanditInstance instance = detail::two_arm(0.5, 0.4);
  double worst = 0.0;
  std::string note;
  std::uint64_t salt = 0;
  for (std::uint64_t d : {std::uint64_t{10}, std::uint64_t{100}}) {
    RunConfig rc;
    rc.horizon = params.horizon;
    rc.seed = derive_stream_seed(ctx.seed, 1700 + salt++);
    rc.policy = PolicyKind::thompson;
    rc.delay = DelayModel::fixed(d);
    rc.checkpoints = {params.horizon / 10, params.horizon};
    const auto summary = run_monte_carlo(rc, instance, params.runs, ctx.workers);
    const double early_rate = summary.points[0].mean / static_cast<double>(summary.points[0].t);
    const double late_rate = summary.points[1].mean / static_cast<double>(summary.points[1].t);
    worst = std::max(worst, late_rate / (0.5 * early_rate));
    if (!note.empty()) note += "; ";
    note += "d=" + io::format_u64(d) + " rate " + io::format_double(early_rate) + " -> " +
            io::format_double(late_rate);
  }
  CheckResult r = detail::bounded("delay_sublinearity", worst, 1.0);
  r.note = note;
  return r;
}

inline CheckResult check_delay_sublinearity(const CheckContext& ctx) {
  DelayParams params;
  if (ctx.budget == Budget::full) {
    params.horizon = 100000;
    params.runs = 200;
  }
  return check_delay_sublinearity(ctx, params);
}

inline CheckResult check_ensemble_determinism(const CheckContext& ctx) {
  RunConfig rc;
  rc.horizon = ctx.budget == Budget::full ? 5000 : 1000;
  rc.seed = derive_stream_seed(ctx.seed, 1800);
  rc.policy = PolicyKind::thompson;
  rc.delay = DelayModel::fixed(3);
  rc.checkpoints = {rc.horizon / 2, rc.horizon};
  const BanditInstance instance = detail::two_arm(0.5, 0.4);
  const std::uint64_t runs = 48;
  std::vector<std::string> outputs;
  for (unsigned workers : {1u, 8u, 1u, 8u}) {
    const auto summary = run_monte_carlo(rc, instance, runs, workers);
    std::ostringstream os;
    io::write_regret_rows(os, "determinism", policy_name(rc.policy), summary, rc.seed, true);
    outputs.push_back(os.str());
  }
  double mismatches = 0.0;
  for (std::size_t i = 1; i < outputs.size(); ++i) {
    if (outputs[i] != outputs[0]) mismatches += 1.0;
  }
  return detail::bounded("ensemble_determinism", mismatches, 0.0);
}

// ---------------------------------------------------------------------------
// registry

struct Check {
  std::string name;
  std::string suite;
  std::function<CheckResult(const CheckContext&)> fn;
};

inline const std::vector<Check>& registry() {
  static const std::vector<Check> checks = {
      {"fact1_beta_binomial", "identities", check_fact1_beta_binomial},
      {"beta_cdf_monotone", "identities", check_beta_cdf_monotone},
      {"binomial_cdf_routes", "identities", check_binomial_cdf_routes},
      {"binomial_median_bruteforce", "identities", check_binomial_median_bruteforce},
      {"chernoff_dominance", "identities", check_chernoff_dominance},
      {"pinsker_lower_bound", "identities", check_pinsker},
      {"thm1_eq1_identity", "identities", check_thm1_eq1_identity},
      {"bound_monotonicity", "identities", check_bound_monotonicity},
      {"beta_sampler_ks", "samplers", check_beta_sampler_ks},
      {"beta_orderstat_ks", "samplers", check_beta_orderstat_ks},
      {"bernoulli_mean", "samplers", check_bernoulli_mean},
      {"ts_probability_matching", "samplers", check_ts_probability_matching},
      {"ts_exchangeable_chi2", "samplers", check_ts_exchangeable_chi2},
      {"ts_degenerate_posterior", "samplers", check_ts_degenerate_posterior},
      {"arm_reward_means", "samplers", check_arm_reward_means},
      {"binarize_composition", "samplers", check_binarize_composition},
      {"lemma1_geometric", "lemmas", check_lemma1_geometric},
      {"lemma2_escape_frequency", "lemmas", check_lemma2_escape_frequency},
      {"lemma3_envelope_mc", "lemmas", check_lemma3_envelope_mc},
      {"uniform_random_regret", "regret", check_uniform_random_regret},
      {"thm1_dominance", "regret",
       [](const CheckContext& c) { return check_thm1_dominance(c); }},
      {"thm2_dominance", "regret",
       [](const CheckContext& c) { return check_thm2_dominance(c); }},
      {"appendix_a_monotonicity", "regret",
       [](const CheckContext& c) { return check_appendix_a_monotonicity(c); }},
      {"reduction_equivalence", "regret",
       [](const CheckContext& c) { return check_reduction_equivalence(c); }},
      {"delay_sublinearity", "regret",
       [](const CheckContext& c) { return check_delay_sublinearity(c); }},
      {"ensemble_determinism", "regret", check_ensemble_determinism},
  };
  return checks;
}

inline std::vector<CheckResult> run_suite(const std::string& suite, const CheckContext& ctx) {
  if (suite != "all" && suite != "identities" && suite != "samplers" && suite != "lemmas" &&
      suite != "regret") {
    throw std::invalid_argument("unknown verification suite '" + suite + "'");
  }
  std::vector<CheckResult> results;
  for (const Check& check : registry()) {
    if (suite != "all" && check.suite != suite) continue;
    results.push_back(check.fn(ctx));
  }
  return results;
}

}  // namespace banditlab::verify
