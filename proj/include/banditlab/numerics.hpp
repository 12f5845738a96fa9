#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include "banditlab/rng.hpp"

namespace banditlab::numerics {

struct BinomialParams {
  std::int64_t n = 0;
  double p = 0.0;
};

struct BetaParams {
  std::int64_t alpha = 1;
  std::int64_t beta = 1;
};

enum class TailSide { lower, upper, upper_shifted };

struct TailBoundQuery {
  std::int64_t n = 0;
  double p = 0.0;
  double delta = 0.0;
  TailSide side = TailSide::lower;
};

// A value that may be infinite and still feed later arithmetic; the flag
// spares callers an isinf() on every use.
struct GapValue {
  double value = 0.0;
  bool infinite = false;
};

namespace detail {

inline void require(bool ok, const char* msg) {
  if (!ok) throw std::domain_error(msg);
}

// Direct summation is used up to this n; the continued fraction above it.
inline constexpr std::int64_t kBinomialSumCutoff = 10000;

inline const std::vector<long double>& lgamma_table() {
  static const std::vector<long double> table = [] {
    std::vector<long double> t(static_cast<std::size_t>(kBinomialSumCutoff) + 3);
    t[0] = 0.0L;
    for (std::size_t i = 1; i < t.size(); ++i) t[i] = std::lgamma(static_cast<long double>(i));
    return t;
  }();
  return table;
}

// log C(n,k). Table-backed lgamma for small n; compensated log products for
// large n, where three lgamma evaluations alone would eat the error budget.
inline long double log_binomial_coeff(std::int64_t n, std::int64_t k) {
  if (k < 0 || k > n) return -std::numeric_limits<long double>::infinity();
  if (n <= kBinomialSumCutoff) {
    const auto& lg = lgamma_table();
    return lg[static_cast<std::size_t>(n + 1)] - lg[static_cast<std::size_t>(k + 1)] -
           lg[static_cast<std::size_t>(n - k + 1)];
  }
  const std::int64_t m = std::min(k, n - k);
  long double sum = 0.0L, comp = 0.0L;
  for (std::int64_t i = 1; i <= m; ++i) {
    const long double term = std::log(static_cast<long double>(n - m + i)) -
                             std::log(static_cast<long double>(i));
    const long double y = term - comp;
    const long double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  return sum;
}

inline double binomial_cdf_sum(std::int64_t n, double p, std::int64_t k) {
  const auto& lg = lgamma_table();
  const long double lp = std::log(static_cast<long double>(p));
  const long double l1p = std::log1p(-static_cast<long double>(p));
  const auto logpmf = [&](std::int64_t i) {
    return lg[static_cast<std::size_t>(n + 1)] - lg[static_cast<std::size_t>(i + 1)] -
           lg[static_cast<std::size_t>(n - i + 1)] + static_cast<long double>(i) * lp +
           static_cast<long double>(n - i) * l1p;
  };
  // pmf is unimodal with mode at floor((n+1)p); anchor the sum there.
  std::int64_t mode = static_cast<std::int64_t>(std::floor((static_cast<double>(n) + 1.0) * p));
  mode = std::clamp<std::int64_t>(mode, 0, n);
  const std::int64_t anchor = std::min(k, mode);
  const long double lmax = logpmf(anchor);
  long double sum = 0.0L, comp = 0.0L;
  for (std::int64_t i = 0; i <= k; ++i) {
    const long double term = std::exp(logpmf(i) - lmax);
    const long double y = term - comp;
    const long double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  const long double value = std::exp(lmax) * sum;
  return static_cast<double>(std::min(value, 1.0L));
}

// Lentz's continued fraction for the regularized incomplete beta function.
inline long double beta_cont_fraction(long double a, long double b, long double x) {
  constexpr long double eps = 1e-20L;
  constexpr long double fpmin = 1e-4900L;
  const long double qab = a + b;
  const long double qap = a + 1.0L;
  const long double qam = a - 1.0L;
  long double c = 1.0L;
  long double d = 1.0L - qab * x / qap;
  if (std::fabs(d) < fpmin) d = fpmin;
  d = 1.0L / d;
  long double h = d;
  for (int m = 1; m <= 500; ++m) {
    const long double m2 = 2.0L * m;
    long double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0L + aa * d;
    if (std::fabs(d) < fpmin) d = fpmin;
    c = 1.0L + aa / c;
    if (std::fabs(c) < fpmin) c = fpmin;
    d = 1.0L / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0L + aa * d;
    if (std::fabs(d) < fpmin) d = fpmin;
    c = 1.0L + aa / c;
    if (std::fabs(c) < fpmin) c = fpmin;
    d = 1.0L / d;
    const long double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0L) < eps) break;
  }
  return h;
}

// Regularized incomplete beta I_x(a,b) for positive integer a,b.
inline long double reg_inc_beta(std::int64_t a, std::int64_t b, long double x) {
  if (x <= 0.0L) return 0.0L;
  if (x >= 1.0L) return 1.0L;
  const long double la = static_cast<long double>(a);
  const long double lb = static_cast<long double>(b);
  // 1/B(a,b) = C(a+b-2, a-1) * (a+b-1) for integer shapes.
  const long double log_front = log_binomial_coeff(a + b - 2, a - 1) +
                                std::log(static_cast<long double>(a + b - 1)) +
                                la * std::log(x) + lb * std::log1p(-x);
  const long double bt = std::exp(log_front);
  if (x < (la + 1.0L) / (la + lb + 2.0L)) {
    return bt * beta_cont_fraction(la, lb, x) / la;
  }
  return 1.0L - bt * beta_cont_fraction(lb, la, 1.0L - x) / lb;
}

struct GaussLegendreRule {
  std::vector<double> nodes;    // on (-1, 1)
  std::vector<double> weights;
};

inline GaussLegendreRule make_gauss_legendre(int n) {
  GaussLegendreRule r;
  r.nodes.resize(n);
  r.weights.resize(n);
  const int m = (n + 1) / 2;
  for (int i = 1; i <= m; ++i) {
    double z = std::cos(M_PI * (i - 0.25) / (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 1; j <= n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
      }
      pp = n * (z * p1 - p2) / (z * z - 1.0);
      const double z1 = z;
      z = z1 - p1 / pp;
      if (std::fabs(z - z1) < 1e-15) break;
    }
    r.nodes[i - 1] = -z;
    r.nodes[n - i] = z;
    r.weights[i - 1] = 2.0 / ((1.0 - z * z) * pp * pp);
    r.weights[n - i] = r.weights[i - 1];
  }
  return r;
}

inline const GaussLegendreRule& gl_rule_lo() {
  static const GaussLegendreRule r = make_gauss_legendre(50);
  return r;
}

inline const GaussLegendreRule& gl_rule_hi() {
  static const GaussLegendreRule r = make_gauss_legendre(100);
  return r;
}

template <typename F>
double gl_panel(F&& f, double a, double b, const GaussLegendreRule& rule) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
  }
  return half * sum;
}

template <typename F>
double adaptive_gl(F&& f, double a, double b, double tol, int depth) {
  const double lo = gl_panel(f, a, b, gl_rule_lo());
  const double hi = gl_panel(f, a, b, gl_rule_hi());
  if (std::fabs(hi - lo) <= tol || depth >= 40) return hi;
  const double mid = 0.5 * (a + b);
  return adaptive_gl(f, a, mid, 0.5 * tol, depth + 1) +
         adaptive_gl(f, mid, b, 0.5 * tol, depth + 1);
}

inline void check_binomial(const BinomialParams& params, const char* who) {
  if (params.n < 0) throw std::domain_error(std::string(who) + ": n must be >= 0");
  if (!(params.p >= 0.0 && params.p <= 1.0)) {
    throw std::domain_error(std::string(who) + ": p must lie in [0,1]");
  }
}

inline void check_beta(const BetaParams& params, const char* who) {
  if (params.alpha < 1 || params.beta < 1) {
    throw std::domain_error(std::string(who) + ": shapes must be positive integers");
  }
}

}  // namespace detail

// Pr(X <= k) for X ~ Binomial(n, p). Exact 0/1 outside the support. Direct
// log-space summation up to n = 10^4, continued-fraction incomplete beta
// above; the two routes agree to < 1e-12 on the overlap band.
inline double binomial_cdf(const BinomialParams& params, std::int64_t k) {
  detail::check_binomial(params, "binomial_cdf");
  if (k < 0) return 0.0;
  if (k >= params.n) return 1.0;
  if (params.p == 0.0) return 1.0;
  if (params.p == 1.0) return 0.0;
  if (params.n <= detail::kBinomialSumCutoff) {
    return detail::binomial_cdf_sum(params.n, params.p, k);
  }
  // Pr(X <= k) = I_{1-p}(n-k, k+1)
  const long double v =
      detail::reg_inc_beta(params.n - k, k + 1, 1.0L - static_cast<long double>(params.p));
  return static_cast<double>(std::clamp(v, 0.0L, 1.0L));
}

// Beta(alpha, beta) CDF at y for positive integer shapes, evaluated through
// the order-statistic identity F_beta(y) = 1 - F_binom(alpha+beta-1, y)(alpha-1).
inline double beta_cdf(const BetaParams& params, double y) {
  detail::check_beta(params, "beta_cdf");
  detail::require(y >= 0.0 && y <= 1.0, "beta_cdf: y must lie in [0,1]");
  return 1.0 - binomial_cdf({params.alpha + params.beta - 1, y}, params.alpha - 1);
}

// Independent check value for beta_cdf: adaptive Gauss-Legendre quadrature of
// the density. Shares no code with the binomial route. The base panels are
// exact for polynomial integrands of degree <= 99 / 199, so integer-shape
// densities up to alpha+beta = 200 converge on the first panel.
inline double beta_cdf_oracle(const BetaParams& params, double y) {
  detail::check_beta(params, "beta_cdf_oracle");
  detail::require(y >= 0.0 && y <= 1.0, "beta_cdf_oracle: y must lie in [0,1]");
  if (y == 0.0) return 0.0;
  if (y == 1.0) return 1.0;
  const double a = static_cast<double>(params.alpha);
  const double b = static_cast<double>(params.beta);
  const double log_norm = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b);
  const auto density = [&](double x) {
    double e = log_norm;
    if (params.alpha != 1) e += (a - 1.0) * std::log(x);
    if (params.beta != 1) e += (b - 1.0) * std::log1p(-x);
    return std::exp(e);
  };
  return detail::adaptive_gl(density, 0.0, y, 1e-13, 0);
}

// Gamma(shape, 1) via Marsaglia-Tsang; shape < 1 boosted through
// Gamma(shape+1) * U^(1/shape).
inline double sample_gamma(double shape, RngStream& rng) {
  detail::require(shape > 0.0 && std::isfinite(shape), "sample_gamma: shape must be positive");
  if (shape < 1.0) {
    const double u = 1.0 - rng.next_double();  // (0, 1]
    return sample_gamma(shape + 1.0, rng) * std::pow(u, 1.0 / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x, v;
    do {
      x = rng.next_normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = rng.next_double();
    const double x2 = x * x;
    if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
    if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
  }
}

// Beta(alpha, beta) draw as a gamma ratio, clamped to the open interval.
inline double sample_beta(const BetaParams& params, RngStream& rng) {
  detail::check_beta(params, "sample_beta");
  const double g1 = sample_gamma(static_cast<double>(params.alpha), rng);
  const double g2 = sample_gamma(static_cast<double>(params.beta), rng);
  const double v = g1 / (g1 + g2);
  return std::clamp(v, std::numeric_limits<double>::min(), 1.0 - 0x1.0p-53);
}

// Distribution oracle for sample_beta: the alpha-th order statistic of
// alpha+beta-1 uniforms. Only sensible for small shape sums.
inline double sample_beta_orderstat(const BetaParams& params, RngStream& rng) {
  detail::check_beta(params, "sample_beta_orderstat");
  detail::require(params.alpha + params.beta <= 64,
                  "sample_beta_orderstat: alpha + beta must be <= 64");
  std::array<double, 64> buf;
  const std::size_t n =
      std::min(static_cast<std::size_t>(params.alpha + params.beta - 1), buf.size());
  for (std::size_t i = 0; i < n; ++i) buf[i] = rng.next_double();
  std::nth_element(buf.begin(), buf.begin() + (params.alpha - 1), buf.begin() + n);
  return buf[static_cast<std::size_t>(params.alpha - 1)];
}

// One Bernoulli(p) trial; consumes exactly one uniform variate.
inline int sample_bernoulli(double p, RngStream& rng) {
  detail::require(p >= 0.0 && p <= 1.0, "sample_bernoulli: p must lie in [0,1]");
  return rng.next_double() < p ? 1 : 0;
}

// KL divergence between Bernoulli(y) and Bernoulli(mu), with the usual
// 0 log 0 = 0 conventions; infinite when the support condition fails.
inline double kl_bernoulli(double y, double mu) {
  detail::require(y >= 0.0 && y <= 1.0, "kl_bernoulli: y must lie in [0,1]");
  detail::require(mu >= 0.0 && mu <= 1.0, "kl_bernoulli: mu must lie in [0,1]");
  const double inf = std::numeric_limits<double>::infinity();
  double d = 0.0;
  if (y > 0.0) {
    if (mu == 0.0) return inf;
    d += y * std::log(y / mu);
  }
  if (y < 1.0) {
    if (mu == 1.0) return inf;
    d += (1.0 - y) * std::log((1.0 - y) / (1.0 - mu));
  }
  return std::max(d, 0.0);
}

// Expected number of Beta(s+1, j-s+1) draws strictly before the first draw
// exceeding y: 1 / F_binom(j+1, y)(s) - 1.
inline GapValue expected_interplay_gap(std::int64_t j, std::int64_t s, double y) {
  detail::require(j >= 0, "expected_interplay_gap: j must be >= 0");
  detail::require(s >= 0 && s <= j, "expected_interplay_gap: need 0 <= s <= j");
  detail::require(y >= 0.0 && y <= 1.0, "expected_interplay_gap: y must lie in [0,1]");
  if (y == 1.0) {
    // the posterior never exceeds 1, so the wait is unbounded
    return {std::numeric_limits<double>::infinity(), true};
  }
  const double f = binomial_cdf({j + 1, y}, s);
  return {std::max(0.0, 1.0 / f - 1.0), false};
}

// A median of Binomial(n, p); always lands in {floor(np), ceil(np)}.
inline std::int64_t binomial_median(const BinomialParams& params) {
  detail::check_binomial(params, "binomial_median");
  const double np = static_cast<double>(params.n) * params.p;
  const std::int64_t lo = static_cast<std::int64_t>(std::floor(np));
  const std::int64_t hi = static_cast<std::int64_t>(std::ceil(np));
  // tolerance covers summation rounding when a CDF value is exactly 1/2
  constexpr double tol = 1e-9;
  const auto is_median = [&](std::int64_t m) {
    return binomial_cdf(params, m) >= 0.5 - tol &&
           1.0 - binomial_cdf(params, m - 1) >= 0.5 - tol;
  };
  if (is_median(lo)) return lo;
  return hi;
}

// Chernoff-Hoeffding tail bounds at deviation n*delta. The shifted variant
// bounds the upper tail of Binomial(n+1, p) still measured from np.
inline double chernoff_tail_bound(const TailBoundQuery& q) {
  detail::check_binomial({q.n, q.p}, "chernoff_tail_bound");
  detail::require(q.delta >= 0.0 && std::isfinite(q.delta),
                  "chernoff_tail_bound: delta must be >= 0");
  const double base = std::exp(-2.0 * static_cast<double>(q.n) * q.delta * q.delta);
  if (q.side == TailSide::upper_shifted) return std::exp(4.0 * q.delta) * base;
  return base;
}

// Piecewise envelope for E[min(X(j, s(j), y), T)] where s(j) ~ Binomial(j, mu1)
// and X counts draws before a Beta(s+1, j-s+1) sample exceeds y. The regime
// boundaries are compared as reals. The large-j case only needs
// j >= 4 ln T / (mu1-y)^2, so it is tested first; boundaries can cross for
// small T and the large-j branch stays valid on the overlap.
inline double lemma3_envelope(std::int64_t j, double y, double mu1, std::int64_t T) {
  detail::require(j >= 0, "lemma3_envelope: j must be >= 0");
  detail::require(T >= 1, "lemma3_envelope: T must be >= 1");
  detail::require(y > 0.0 && y < mu1 && mu1 < 1.0, "lemma3_envelope: need 0 < y < mu1 < 1");
  const double dprime = mu1 - y;
  const double ln_t = std::log(static_cast<double>(T));
  const double jd = static_cast<double>(j);
  if (jd >= 4.0 * ln_t / (dprime * dprime)) return 16.0 / static_cast<double>(T);
  const double kl = kl_bernoulli(y, mu1);
  const double ratio = mu1 * (1.0 - y) / (y * (1.0 - mu1));
  const double decay = std::exp(-kl * jd);
  const double tail = mu1 / dprime * decay;
  if (jd < y / kl * std::log(ratio)) return 1.0 + 2.0 / (1.0 - y) + tail;
  return 1.0 + std::pow(ratio, y) * decay / (1.0 - y) + tail;
}

// Two-sided Kolmogorov-Smirnov distance between sorted samples and a
// reference CDF.
template <typename Cdf>
double ks_statistic_sorted(const std::vector<double>& sorted, Cdf&& cdf) {
  detail::require(!sorted.empty(), "ks_statistic_sorted: need samples");
  const double n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = cdf(sorted[i]);
    d = std::max(d, (static_cast<double>(i) + 1.0) / n - f);
    d = std::max(d, f - static_cast<double>(i) / n);
  }
  return d;
}

// Asymptotic KS critical value at significance alpha; adequate for n >= 35.
inline double ks_critical_value(std::size_t n, double alpha) {
  detail::require(n >= 35, "ks_critical_value: asymptotic form needs n >= 35");
  detail::require(alpha > 0.0 && alpha < 1.0, "ks_critical_value: alpha must lie in (0,1)");
  return std::sqrt(-0.5 * std::log(alpha / 2.0) / static_cast<double>(n));
}

}  // namespace banditlab::numerics
