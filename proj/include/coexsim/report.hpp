#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "coexsim/scenario.hpp"

namespace coexsim {

/// Two-sided Student-t quantile at 97.5% (the 95% CI multiplier) for df >= 1.
double student_t_975(int df);

struct MeanCi {
    double mean = 0;
    double half_width = 0;  ///< 95% CI half width (0 for a single sample)
    int n = 0;
};

MeanCi mean_ci95(std::span<const double> samples);

inline constexpr const char* kResultSchema = "coexsim-results-v1";
inline constexpr const char* kTraceSchema = "coexsim-trace-v1";

/// CSV column set, fixed per schema version.
std::string csv_header();

/// Long-format rows: one per (seed, node), one per (seed, technology),
/// and per-technology summary rows with seed means and 95% CIs.
/// axis/axis_value are empty for plain runs.
void write_csv(std::ostream& out, const ScenarioResult& result, const std::string& axis = "",
               const std::string& axis_value = "");
void write_csv_header(std::ostream& out);

void write_json(std::ostream& out, const ScenarioResult& result, const std::string& axis = "",
                const std::string& axis_value = "");
void write_sweep_csv(std::ostream& out, const std::vector<SweepPointResult>& points,
                     const std::string& axis);
void write_sweep_json(std::ostream& out, const std::vector<SweepPointResult>& points,
                      const std::string& axis);

/// Round-trip view of an emitted JSON document, for consumers and tests.
struct ParsedRun {
    std::string schema;
    std::string scenario;
    std::string axis;
    std::string axis_value;
    std::vector<SeedResult> seeds;  ///< metrics and raw tallies, as emitted
};

ParsedRun parse_results_json(const std::string& text);

void write_trace_header(std::ostream& out);
void write_trace_row(std::ostream& out, const std::string& scenario, std::uint64_t seed,
                     const RoundOutcome& outcome);

}  // namespace coexsim
