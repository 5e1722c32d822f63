#pragma once
// Aggregation of per-run metrics into a flat CSV table plus a small summary.

#include <algorithm>
#include <array>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "amoebot/trace.hpp"

namespace amoebot {

inline constexpr const char* kStatsCsvHeader =
    "n,dim,mode,policy,seed,rounds,erosions,leader,steps,rule1,rule2,rule3,wall_ms,rounds_minus_n";

inline std::string metrics_to_csv(std::vector<RunMetrics> rows) {
  std::sort(rows.begin(), rows.end(), [](const RunMetrics& a, const RunMetrics& b) {
    return std::tie(a.n, a.dim, a.mode, a.policy, a.seed) <
           std::tie(b.n, b.dim, b.mode, b.policy, b.seed);
  });
  std::ostringstream out;
  out << kStatsCsvHeader << '\n';
  for (const RunMetrics& m : rows) {
    out << m.n << ',' << to_string(m.dim) << ',' << to_string(m.mode) << ',' << m.policy << ','
        << m.seed << ',' << m.rounds << ',' << m.erosions << ',' << m.leader << ',' << m.steps
        << ',' << m.rule_counts[1] << ',' << m.rule_counts[2] << ',' << m.rule_counts[3] << ','
        << m.wall_ms << ',' << (m.rounds - m.n) << '\n';
  }
  return out.str();
}

struct StatsSummary {
  int runs = 0;
  int sequential_runs = 0;
  std::int64_t max_rounds_minus_n = INT64_MIN;  // over sequential runs
  bool all_sequential_rounds_bounded = true;    // rounds <= n + 1
  bool all_erosions_exact = true;               // erosions == n - 1
  bool one_leader_everywhere = true;            // leader id recorded
  std::array<int, 4> total_rule_counts{};
};

inline StatsSummary summarize(const std::vector<RunMetrics>& rows) {
  StatsSummary s;
  for (const RunMetrics& m : rows) {
    ++s.runs;
    if (m.mode == Concurrency::sequential) {
      ++s.sequential_runs;
      s.max_rounds_minus_n = std::max(s.max_rounds_minus_n, m.rounds - m.n);
      if (m.rounds > m.n + 1) s.all_sequential_rounds_bounded = false;
    }
    if (m.erosions != m.n - 1) s.all_erosions_exact = false;
    if (m.leader < 0) s.one_leader_everywhere = false;
    for (std::size_t r = 1; r < 4; ++r) s.total_rule_counts[r] += m.rule_counts[r];
  }
  return s;
}

inline std::string summary_to_text(const StatsSummary& s) {
  std::ostringstream out;
  out << "runs: " << s.runs << " (" << s.sequential_runs << " sequential)\n";
  if (s.sequential_runs > 0) {
    out << "max rounds - n over sequential runs: " << s.max_rounds_minus_n << '\n';
    out << "rounds <= n+1 on all sequential runs: " << (s.all_sequential_rounds_bounded ? "yes" : "NO")
        << '\n';
  }
  out << "erosions == n-1 on all runs: " << (s.all_erosions_exact ? "yes" : "NO") << '\n';
  out << "leader recorded on all runs: " << (s.one_leader_everywhere ? "yes" : "NO") << '\n';
  out << "rule usage: rule1=" << s.total_rule_counts[1] << " rule2=" << s.total_rule_counts[2]
      << " rule3=" << s.total_rule_counts[3] << '\n';
  return out.str();
}

}  // namespace amoebot
