#include "bsaopt/stats.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numeric>
#include <stdexcept>

namespace bsaopt::stats {

DescriptiveStats describe(std::span<const double> samples, std::span<const double> times,
                          std::span<const bool> successes) {
    if (samples.empty()) throw std::invalid_argument("describe: empty sample");
    if (successes.size() != samples.size() || (!times.empty() && times.size() != samples.size())) {
        throw std::invalid_argument("describe: input lengths differ");
    }
    DescriptiveStats s;
    const double n = static_cast<double>(samples.size());
    s.mean = std::accumulate(samples.begin(), samples.end(), 0.0) / n;
    double ss = 0.0;
    for (double v : samples) ss += (v - s.mean) * (v - s.mean);
    s.std_dev = std::sqrt(ss / n);
    const auto [lo, hi] = std::minmax_element(samples.begin(), samples.end());
    s.best = *lo;
    s.worst = *hi;
    // Guard the ordering invariant against summation rounding.
    s.mean = std::clamp(s.mean, s.best, s.worst);
    if (!times.empty()) s.avg_time = std::accumulate(times.begin(), times.end(), 0.0) / n;
    s.n_success = static_cast<std::size_t>(std::count(successes.begin(), successes.end(), true));
    s.n_fail = successes.size() - s.n_success;
    return s;
}

DescriptiveStats describe(const std::vector<double>& samples, const std::vector<double>& times,
                          const std::vector<bool>& successes) {
    // std::vector<bool> is not contiguous; copy into a bool array.
    const auto flags = std::make_unique<bool[]>(successes.size());
    std::copy(successes.begin(), successes.end(), flags.get());
    return describe(std::span<const double>(samples), std::span<const double>(times),
                    std::span<const bool>(flags.get(), successes.size()));
}

std::string to_string(Verdict v) {
    switch (v) {
    case Verdict::Plus: return "plus";
    case Verdict::Equal: return "equal";
    case Verdict::Minus: return "minus";
    }
    return "?";
}

std::string symbol(Verdict v) {
    switch (v) {
    case Verdict::Plus: return "+";
    case Verdict::Equal: return "=";
    case Verdict::Minus: return "-";
    }
    return "?";
}

std::string to_string(WilcoxonMethod m) {
    return m == WilcoxonMethod::Exact ? "exact" : "normal-approx";
}

std::vector<std::uint64_t> signed_rank_counts(std::size_t n) {
    const std::size_t max_sum = n * (n + 1) / 2;
    std::vector<std::uint64_t> counts(max_sum + 1, 0);
    counts[0] = 1;
    std::size_t reach = 0;
    for (std::size_t rank = 1; rank <= n; ++rank) {
        reach += rank;
        for (std::size_t s = reach; s >= rank; --s) counts[s] += counts[s - rank];
    }
    return counts;
}

double exact_two_sided_p(std::size_t n, std::uint64_t statistic) {
    if (n == 0) return 1.0;
    const auto counts = signed_rank_counts(n);
    std::uint64_t tail = 0;
    for (std::uint64_t s = 0; s <= statistic && s < counts.size(); ++s) tail += counts[s];
    const double p = std::ldexp(static_cast<double>(2 * tail), -static_cast<int>(n));
    return std::min(1.0, p);
}

WilcoxonResult wilcoxon_signed_rank(std::span<const double> a, std::span<const double> b,
                                    double alpha) {
    if (a.size() != b.size()) throw std::invalid_argument("wilcoxon: paired samples differ in length");
    if (a.empty()) throw std::invalid_argument("wilcoxon: empty sample");

    std::vector<double> diffs;
    diffs.reserve(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        if (d != 0.0) diffs.push_back(d);
    }
    WilcoxonResult r;
    r.n_effective = diffs.size();
    if (diffs.empty()) return r;

    std::vector<std::size_t> order(diffs.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        return std::abs(diffs[x]) < std::abs(diffs[y]);
    });

    std::vector<double> ranks(diffs.size());
    bool ties = false;
    double tie_term = 0.0;
    for (std::size_t i = 0; i < order.size();) {
        std::size_t j = i + 1;
        while (j < order.size() && std::abs(diffs[order[j]]) == std::abs(diffs[order[i]])) ++j;
        const double mid = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
        for (std::size_t k = i; k < j; ++k) ranks[order[k]] = mid;
        const double t = static_cast<double>(j - i);
        if (j - i > 1) {
            ties = true;
            tie_term += t * t * t - t;
        }
        i = j;
    }
    for (std::size_t i = 0; i < diffs.size(); ++i) {
        (diffs[i] > 0.0 ? r.r_plus : r.r_minus) += ranks[i];
    }

    const std::size_t n = r.n_effective;
    if (!ties && n <= kExactLimit) {
        r.method = WilcoxonMethod::Exact;
        const auto stat = static_cast<std::uint64_t>(std::min(r.r_plus, r.r_minus));
        r.p_value = exact_two_sided_p(n, stat);
    } else {
        r.method = WilcoxonMethod::NormalApprox;
        const double nn = static_cast<double>(n);
        const double mean = nn * (nn + 1.0) / 4.0;
        const double var = nn * (nn + 1.0) * (2.0 * nn + 1.0) / 24.0 - tie_term / 48.0;
        if (var <= 0.0) {
            r.p_value = 1.0;
        } else {
            const double z = std::max(0.0, std::abs(r.r_plus - mean) - 0.5) / std::sqrt(var);
            r.p_value = std::min(1.0, std::erfc(z / std::sqrt(2.0)));
        }
    }

    if (r.p_value >= alpha || r.r_plus == r.r_minus) {
        r.verdict = Verdict::Equal;
    } else {
        r.verdict = r.r_plus > r.r_minus ? Verdict::Plus : Verdict::Minus;
    }
    return r;
}

std::string VerdictSummary::str() const {
    return std::to_string(plus) + "/" + std::to_string(equal) + "/" + std::to_string(minus);
}

VerdictSummary verdict_summary(std::span<const WilcoxonResult> results) {
    VerdictSummary s;
    for (const auto& r : results) {
        switch (r.verdict) {
        case Verdict::Plus: ++s.plus; break;
        case Verdict::Equal: ++s.equal; break;
        case Verdict::Minus: ++s.minus; break;
        }
    }
    return s;
}

}  // namespace bsaopt::stats
