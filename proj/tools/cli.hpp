#pragma once

// Command-line front end. Kept in a library so tests can drive it in-process.

#include "bsaopt/functions.hpp"
#include "bsaopt/harness.hpp"

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace bsaopt::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitValidation = 3;
inline constexpr int kExitIo = 4;
inline constexpr int kExitInterrupted = 130;

enum class Profile { Paper, Smoke };
Profile parse_profile(const std::string& s);

/// paper: 30 runs, 2000 iterations, pop 30. smoke: 10 runs, 500 iterations, pop 30.
ExperimentSpec profile_spec(Profile p);

struct Settings {
    ExperimentSpec spec;
    std::filesystem::path out_dir = "results";
    double alpha = 0.05;
};

/// Values given on the command line; unset fields leave lower layers alone.
struct Overrides {
    std::optional<Profile> profile;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> runs;
    std::optional<std::size_t> iterations;
    std::optional<std::size_t> pop_size;
    std::optional<double> epsilon;
    std::optional<std::size_t> jobs;
    std::optional<std::string> out;
    std::optional<std::string> metric;
    std::optional<bool> timing;
    std::vector<std::string> algorithms;
    std::vector<std::string> functions;
    std::vector<std::string> modes;
};

/// Layers profile defaults, then the JSON config text (if any), then the
/// command-line overrides. Throws ConfigError naming the offending key.
Settings resolve_settings(const std::optional<std::string>& config_text, const Overrides& cli);

int cmd_run(const Settings& settings, std::ostream& out, std::ostream& err);

struct SolveOptions {
    std::string algorithm = "BSA";
    std::string function;
    std::optional<std::size_t> dim;
    std::uint64_t seed = 1;
    std::size_t iterations = 2000;
    std::size_t pop_size = 30;
    double epsilon = 1e-6;
    std::optional<std::filesystem::path> trace;
};

int cmd_solve(const SolveOptions& opts, std::ostream& out, std::ostream& err);

/// Minimum-point and sampling checks over `reg`, Wilcoxon enumeration
/// equivalence for n <= 12 and determinism probes.
int cmd_validate(const std::vector<ObjectiveFunction>& reg, std::ostream& out, std::ostream& err);

int cmd_list_functions(bool json, std::ostream& out);

/// Parses argv and dispatches. Returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace bsaopt::cli
