#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "banditlab/numerics.hpp"

namespace banditlab::bounds {

enum class BoundKind {
  thm1,
  eq1_play_count,
  thm2_appendix,
  remark1_shape,
  lai_robbins_lower,
  ucb1_auer,
};

inline const char* bound_name(BoundKind kind) {
  switch (kind) {
    case BoundKind::thm1: return "thm1";
    case BoundKind::eq1_play_count: return "eq1_play_count";
    case BoundKind::thm2_appendix: return "thm2_appendix";
    case BoundKind::remark1_shape: return "remark1_shape";
    case BoundKind::lai_robbins_lower: return "lai_robbins_lower";
    case BoundKind::ucb1_auer: return "ucb1_auer";
  }
  throw std::logic_error("bound_name: bad kind");
}

inline BoundKind bound_from_name(const std::string& name) {
  if (name == "thm1") return BoundKind::thm1;
  if (name == "eq1_play_count") return BoundKind::eq1_play_count;
  if (name == "thm2_appendix") return BoundKind::thm2_appendix;
  if (name == "remark1_shape") return BoundKind::remark1_shape;
  if (name == "lai_robbins_lower") return BoundKind::lai_robbins_lower;
  if (name == "ucb1_auer") return BoundKind::ucb1_auer;
  throw std::invalid_argument("unknown bound kind '" + name + "'");
}

// Bound provenance tag emitted next to every curve row. "explicit" bounds
// hold with the stated constants at every T; "shape_only" fixes growth shape
// with a caller-chosen constant; "asymptotic" drops vanishing terms.
inline const char* bound_label(BoundKind kind) {
  switch (kind) {
    case BoundKind::remark1_shape: return "shape_only";
    case BoundKind::lai_robbins_lower: return "asymptotic";
    default: return "explicit";
  }
}

namespace detail {

inline void check_horizon(double t, double least, const char* who) {
  if (!(t >= least) || !std::isfinite(t)) {
    throw std::domain_error(std::string(who) + ": T must be >= " + std::to_string(least));
  }
}

inline void check_gap(double delta, const char* who) {
  if (!(delta > 0.0 && delta <= 1.0)) {
    throw std::domain_error(std::string(who) + ": gap must lie in (0,1]");
  }
}

inline void check_gaps(const std::vector<double>& gaps, const char* who) {
  if (gaps.empty()) throw std::domain_error(std::string(who) + ": need at least one gap");
  for (double g : gaps) check_gap(g, who);
}

}  // namespace detail

// Two-arm expected regret bound: 40 ln T / d + 48 / d^3 + 18 d.
inline double thm1_bound(double t, double delta) {
  detail::check_horizon(t, 2.0, "thm1_bound");
  detail::check_gap(delta, "thm1_bound");
  return 40.0 * std::log(t) / delta + 48.0 / (delta * delta * delta) + 18.0 * delta;
}

// Two-arm expected suboptimal play count: 40 ln T / d^2 + 48 / d^4 + 18.
// Exactly thm1_bound / delta.
inline double eq1_play_count_bound(double t, double delta) {
  detail::check_horizon(t, 2.0, "eq1_play_count_bound");
  detail::check_gap(delta, "eq1_play_count_bound");
  const double d2 = delta * delta;
  return 40.0 * std::log(t) / d2 + 48.0 / (d2 * d2) + 18.0;
}

// N-arm expected regret bound, saturated plus unsaturated contributions, for
// the gap vector of the suboptimal arms.
inline double thm2_bound(double t, const std::vector<double>& gaps) {
  detail::check_horizon(t, 1.0, "thm2_bound");
  detail::check_gaps(gaps, "thm2_bound");
  const double n = static_cast<double>(gaps.size()) + 1.0;
  const double ln_t = std::log(t);
  double inv_sq = 0.0, inv = 0.0;
  for (double g : gaps) {
    inv_sq += 1.0 / (g * g);
    inv += 1.0 / g;
  }
  const double saturated = 1152.0 * ln_t * inv_sq * inv_sq + 288.0 * ln_t * inv_sq +
                           48.0 * ln_t * inv + 192.0 * n * inv_sq + 96.0 * (n - 1.0) +
                           8.0 * (n - 1.0);
  const double unsaturated = 24.0 * ln_t * inv;
  return saturated + unsaturated;
}

// Growth-shape bound c * (d_max / d_min^3) * sum(1/d^2) * ln T; c is the
// caller's constant, not a proven one.
inline double remark1_bound(double t, const std::vector<double>& gaps, double c) {
  detail::check_horizon(t, 1.0, "remark1_bound");
  detail::check_gaps(gaps, "remark1_bound");
  if (!(c > 0.0) || !std::isfinite(c)) {
    throw std::domain_error("remark1_bound: c must be positive");
  }
  double d_min = gaps[0], d_max = gaps[0], inv_sq = 0.0;
  for (double g : gaps) {
    d_min = std::min(d_min, g);
    d_max = std::max(d_max, g);
    inv_sq += 1.0 / (g * g);
  }
  return c * (d_max / (d_min * d_min * d_min)) * inv_sq * std::log(t);
}

// Lai-Robbins lower-bound main term sum(d_i / KL(mu_i, mu*)) ln T; the o(1)
// correction is dropped, hence the asymptotic label.
inline double lai_robbins_lower(double t, const std::vector<double>& means) {
  detail::check_horizon(t, 1.0, "lai_robbins_lower");
  if (means.size() < 2) throw std::domain_error("lai_robbins_lower: need at least two means");
  double mu_star = means[0];
  for (double m : means) {
    if (!(m > 0.0 && m < 1.0)) {
      throw std::domain_error("lai_robbins_lower: means must lie in (0,1)");
    }
    mu_star = std::max(mu_star, m);
  }
  double sum = 0.0;
  std::size_t optimal = 0;
  for (double m : means) {
    if (m == mu_star) {
      ++optimal;
      continue;
    }
    sum += (mu_star - m) / numerics::kl_bernoulli(m, mu_star);
  }
  if (optimal != 1) {
    throw std::domain_error("lai_robbins_lower: optimal mean must be unique");
  }
  return sum * std::log(t);
}

// UCB1 regret bound of Auer, Cesa-Bianchi and Fischer:
// 8 sum(1/d_i) ln T + (1 + pi^2/3) sum(d_i).
inline double ucb1_auer_bound(double t, const std::vector<double>& gaps) {
  detail::check_horizon(t, 1.0, "ucb1_auer_bound");
  detail::check_gaps(gaps, "ucb1_auer_bound");
  double inv = 0.0, sum = 0.0;
  for (double g : gaps) {
    inv += 1.0 / g;
    sum += g;
  }
  const double pi = std::numbers::pi;
  return 8.0 * inv * std::log(t) + (1.0 + pi * pi / 3.0) * sum;
}

struct BoundSpec {
  BoundKind kind = BoundKind::thm1;
  std::vector<double> gaps;   // suboptimal gaps; all kinds except lai_robbins
  std::vector<double> means;  // all arm means; lai_robbins only
  double c = 1.0;             // remark1 only
};

struct BoundCurve {
  BoundKind kind = BoundKind::thm1;
  std::string label;
  std::vector<std::pair<double, double>> points;  // (T, value)
};

inline double evaluate_bound(const BoundSpec& spec, double t) {
  switch (spec.kind) {
    case BoundKind::thm1:
      if (spec.gaps.size() != 1) {
        throw std::domain_error("thm1 needs exactly one suboptimal gap");
      }
      return thm1_bound(t, spec.gaps[0]);
    case BoundKind::eq1_play_count:
      if (spec.gaps.size() != 1) {
        throw std::domain_error("eq1_play_count needs exactly one suboptimal gap");
      }
      return eq1_play_count_bound(t, spec.gaps[0]);
    case BoundKind::thm2_appendix:
      return thm2_bound(t, spec.gaps);
    case BoundKind::remark1_shape:
      return remark1_bound(t, spec.gaps, spec.c);
    case BoundKind::lai_robbins_lower:
      return lai_robbins_lower(t, spec.means);
    case BoundKind::ucb1_auer:
      return ucb1_auer_bound(t, spec.gaps);
  }
  throw std::logic_error("evaluate_bound: bad kind");
}

inline BoundCurve evaluate_curve(const BoundSpec& spec, const std::vector<double>& horizons) {
  BoundCurve curve;
  curve.kind = spec.kind;
  curve.label = bound_label(spec.kind);
  curve.points.reserve(horizons.size());
  for (double t : horizons) curve.points.emplace_back(t, evaluate_bound(spec, t));
  return curve;
}

}  // namespace banditlab::bounds
