#pragma once

// Text renderers for comparison tables, descriptive statistics and success
// ratios, and the output-directory writer used by the CLI.

#include "bsaopt/harness.hpp"
#include "bsaopt/records.hpp"
#include "bsaopt/stats.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace bsaopt {

enum class Format { Markdown, Csv, Json };

/// Four decimals; "<0.0001" below 1e-4 (one-way on reparse).
std::string format_p_value(double p);

/// Markdown: one row per problem with p-value, R+, R-, Win per competitor,
/// and a "+/=/-" footer. CSV: long format, footer rows keyed "+/=/-".
/// Throws std::invalid_argument for Format::Json.
std::string render_comparison(const ComparisonTable& table, Format format);

/// Parses the CSV produced by render_comparison. "<0.0001" reads back as 0.
ComparisonTable parse_comparison_csv(const std::string& text);

/// Long format (algorithm, config, function, success_ratio, failure_ratio).
/// CSV or JSON.
std::string render_success_ratio(const SuccessRatioTable& table, Format format);

struct DescriptiveCell {
    Algorithm algorithm = Algorithm::BSA;
    SweepMode mode = SweepMode::Dimension;
    std::string config;
    int function_id = 0;
    stats::DescriptiveStats stats;
};

/// One cell per (algorithm, function, mode, config), over final best values.
/// avg_time is set only when every run in the cell carries a wall time.
std::vector<DescriptiveCell> descriptives(const std::vector<RunRecord>& records);

/// CSV or Markdown.
std::string render_descriptives(const std::vector<DescriptiveCell>& cells, Format format);

/// Spec hash, seeds, config dialect and tool versions.
std::string render_manifest(const ExperimentSpec& spec);

/// File name for a table: wilcoxon_<mode>_<config>.md
std::string comparison_file_name(const ComparisonTable& table);

/// Writes records.csv, records.jsonl, descriptives.csv, success_ratio.csv,
/// the wilcoxon_*.md tables and manifest.json. Returns the paths written.
/// Throws std::runtime_error on I/O failure.
std::vector<std::filesystem::path> write_reports(const std::filesystem::path& dir,
                                                 const ExperimentSpec& spec,
                                                 const std::vector<RunRecord>& records,
                                                 const PairwiseReport& pairwise);

/// "BSA vs DE 4/0/0"-style lines, one per (table, competitor).
std::string render_summary(const PairwiseReport& pairwise);

}  // namespace bsaopt
