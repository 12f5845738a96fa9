#pragma once

#include <charconv>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

#include "banditlab/simulator.hpp"

namespace banditlab::io {

inline constexpr std::string_view kRegretHeader =
    "experiment_id,policy,T_checkpoint,mean_regret,stderr,runs,seed";
inline constexpr std::string_view kBoundsHeader = "bound_kind,T,value,label";
inline constexpr std::string_view kVerifyHeader = "check_name,status,observed,threshold";
inline constexpr std::string_view kDiagnosticsHeader =
    "experiment_id,run,arm,plays,saturation_time,event_violations,gap_mean,gap_count";

// Shortest representation that parses back to the same double.
inline std::string format_double(double v) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

inline std::string format_u64(std::uint64_t v) {
  char buf[24];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

inline std::string format_i64(std::int64_t v) {
  char buf[24];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

inline void write_regret_rows(std::ostream& os, const std::string& experiment_id,
                              const std::string& policy, const RegretSummary& summary,
                              std::uint64_t seed, bool with_header) {
  if (with_header) os << kRegretHeader << '\n';
  for (const RegretPoint& p : summary.points) {
    os << experiment_id << ',' << policy << ',' << format_u64(p.t) << ','
       << format_double(p.mean) << ',' << format_double(p.std_err) << ','
       << format_u64(p.runs) << ',' << format_u64(seed) << '\n';
  }
}

inline void write_diagnostics_rows(std::ostream& os, const std::string& experiment_id,
                                   const std::vector<Trace>& traces, bool with_header) {
  if (with_header) os << kDiagnosticsHeader << '\n';
  for (std::size_t r = 0; r < traces.size(); ++r) {
    const Trace& tr = traces[r];
    if (!tr.diagnostics) continue;
    const DiagnosticsRecord& d = *tr.diagnostics;
    const double gap_mean =
        d.gap_count == 0 ? 0.0
                         : static_cast<double>(d.gap_sum) / static_cast<double>(d.gap_count);
    for (std::size_t arm = 0; arm < d.saturation_time.size(); ++arm) {
      os << experiment_id << ',' << format_u64(r) << ',' << format_u64(arm) << ','
         << format_u64(tr.final_plays[arm]) << ',' << format_i64(d.saturation_time[arm]) << ','
         << format_u64(d.event_violations) << ',' << format_double(gap_mean) << ','
         << format_u64(d.gap_count) << '\n';
    }
  }
}

}  // namespace banditlab::io
