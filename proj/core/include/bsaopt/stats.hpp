#pragma once

// Descriptive measures over repeated runs and the paired two-sided Wilcoxon
// signed-rank test with the +/=/- verdict used in comparison tables.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace bsaopt::stats {

struct DescriptiveStats {
    double mean = 0.0;
    /// Population standard deviation (divides by n).
    double std_dev = 0.0;
    double best = 0.0;
    double worst = 0.0;
    /// Unset when no timings were supplied.
    std::optional<double> avg_time;
    std::size_t n_success = 0;
    std::size_t n_fail = 0;
};

/// `times` may be empty (timing disabled); otherwise all three inputs must
/// have the same non-zero length. Lower values are better.
DescriptiveStats describe(std::span<const double> samples, std::span<const double> times,
                          std::span<const bool> successes);
DescriptiveStats describe(const std::vector<double>& samples, const std::vector<double>& times,
                          const std::vector<bool>& successes);

enum class Verdict { Plus, Equal, Minus };
enum class WilcoxonMethod { Exact, NormalApprox };

std::string to_string(Verdict v);
/// "+", "=", "-".
std::string symbol(Verdict v);
std::string to_string(WilcoxonMethod m);

struct WilcoxonResult {
    double r_plus = 0.0;
    double r_minus = 0.0;
    std::size_t n_effective = 0;
    double p_value = 1.0;
    WilcoxonMethod method = WilcoxonMethod::Exact;
    Verdict verdict = Verdict::Equal;
};

/// Largest n_effective for which the exact null distribution is used.
inline constexpr std::size_t kExactLimit = 30;

/// Number of subsets of {1..n} for each rank sum 0..n(n+1)/2.
std::vector<std::uint64_t> signed_rank_counts(std::size_t n);

/// Exact two-sided p-value for the statistic min(R+, R-) at n untied ranks.
double exact_two_sided_p(std::size_t n, std::uint64_t statistic);

/// Differences d = a - b; zeros dropped; mid-ranks on ties. Exact null
/// distribution when n_effective <= kExactLimit and |d| are distinct, else
/// the normal approximation with tie and continuity corrections.
/// Verdict: Equal iff p >= alpha, otherwise Plus when R+ > R-.
WilcoxonResult wilcoxon_signed_rank(std::span<const double> a, std::span<const double> b,
                                    double alpha = 0.05);

struct VerdictSummary {
    std::size_t plus = 0;
    std::size_t equal = 0;
    std::size_t minus = 0;

    /// "plus/equal/minus", e.g. "4/0/0".
    std::string str() const;
    bool operator==(const VerdictSummary&) const = default;
};

VerdictSummary verdict_summary(std::span<const WilcoxonResult> results);

}  // namespace bsaopt::stats
