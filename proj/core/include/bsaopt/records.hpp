#pragma once

// Result records produced by the experiment harness and consumed by the
// report renderers, plus their CSV / JSON-lines persistence.

#include "bsaopt/competitors.hpp"
#include "bsaopt/stats.hpp"

#include <cstddef>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace bsaopt {

enum class SweepMode { Dimension, Range };
std::string to_string(SweepMode m);  // "dimension" / "range"
SweepMode parse_sweep_mode(const std::string& s);

/// Per-run value fed to descriptives and the paired test. Lower is better.
enum class Metric { FinalBest, EvalsToTarget, TimeToTarget };
std::string to_string(Metric m);  // "best" / "evals" / "time"
Metric parse_metric(const std::string& s);

/// One algorithm x function x configuration x seed execution.
struct RunRecord {
    Algorithm algorithm = Algorithm::BSA;
    int function_id = 0;
    SweepMode mode = SweepMode::Dimension;
    std::string config;  // "D10", "R1", ...
    std::size_t seed_index = 0;
    double best_value = 0.0;
    std::size_t evaluations = 0;
    std::optional<std::size_t> evals_to_target;
    std::optional<double> wall_time_s;
    std::optional<double> time_to_target_s;
    bool success = false;
    /// Range sweep only: the override box is not inside the function's
    /// default domain. Derived from the spec, not persisted in CSV.
    bool domain_override = false;

    bool operator==(const RunRecord&) const = default;
};

/// Shortest decimal string that parses back to the same double
/// ("inf", "-inf", "nan" for non-finite values).
std::string format_double(double v);
double parse_double(const std::string& s);

/// Stable header: algorithm,function,mode,config,seed,best_value,evaluations,
/// evals_to_target,wall_time_s,success,time_to_target_s
std::string records_csv_header();
std::string to_csv_row(const RunRecord& r);
void write_records_csv(std::ostream& out, const std::vector<RunRecord>& records);
/// Throws std::runtime_error on malformed rows.
std::vector<RunRecord> read_records_csv(std::istream& in);

std::string to_json_line(const RunRecord& r);
RunRecord from_json_line(const std::string& line);

/// Metric value of one run; unset when the run never reached the target
/// and `censor` is false. Censored runs take `budget_evals` / wall time.
std::optional<double> metric_value(const RunRecord& r, Metric metric, bool censor = false,
                                   std::size_t budget_evals = 0);

/// Paired-test results for one (mode, config): rows are problems, columns
/// are competitors, each cell BSA vs that competitor.
struct ComparisonRow {
    int function_id = 0;
    std::vector<std::optional<stats::WilcoxonResult>> cells;
};

struct ComparisonTable {
    SweepMode mode = SweepMode::Dimension;
    std::string config;
    Metric metric = Metric::FinalBest;
    std::vector<Algorithm> competitors;
    std::vector<ComparisonRow> rows;

    /// Column-wise verdict tallies.
    std::vector<stats::VerdictSummary> footer() const;
};

struct SuccessCell {
    Algorithm algorithm = Algorithm::BSA;
    SweepMode mode = SweepMode::Dimension;
    std::string config;
    int function_id = 0;
    std::size_t successes = 0;
    std::size_t runs = 0;

    double ratio() const { return runs ? static_cast<double>(successes) / static_cast<double>(runs) : 0.0; }
};

struct SuccessGroup {
    Algorithm algorithm = Algorithm::BSA;
    SweepMode mode = SweepMode::Dimension;
    std::string config;
    std::size_t successes = 0;
    std::size_t total = 0;

    double ratio() const { return total ? static_cast<double>(successes) / static_cast<double>(total) : 0.0; }
};

struct SuccessRatioTable {
    std::vector<SuccessGroup> groups;  // algorithm x configuration
    std::vector<SuccessCell> cells;    // algorithm x configuration x function
};

}  // namespace bsaopt
