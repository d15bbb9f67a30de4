#include "bsaopt/stats.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

using namespace bsaopt::stats;

namespace {

// Two-sided p by listing every sign assignment of ranks 1..n.
double enumerated_p(std::size_t n, double r_plus) {
    const double total = static_cast<double>(n * (n + 1) / 2);
    const double stat = std::min(r_plus, total - r_plus);
    std::uint64_t tail = 0;
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
        std::uint64_t s = 0;
        for (std::size_t r = 1; r <= n; ++r) {
            if (m >> (r - 1) & 1U) s += r;
        }
        if (static_cast<double>(s) <= stat) ++tail;
    }
    return std::min(1.0, 2.0 * static_cast<double>(tail) / static_cast<double>(std::uint64_t{1} << n));
}

std::vector<double> signed_ranks(std::size_t n, std::uint64_t mask) {
    std::vector<double> d(n);
    for (std::size_t r = 1; r <= n; ++r) d[r - 1] = (mask >> (r - 1) & 1U) ? r : -static_cast<double>(r);
    return d;
}

}  // namespace

TEST(Describe, Examples) {
    const auto c = describe(std::vector<double>{1, 1, 1}, {}, std::vector<bool>{true, true, true});
    EXPECT_EQ(c.mean, 1.0);
    EXPECT_EQ(c.std_dev, 0.0);
    EXPECT_EQ(c.best, 1.0);
    EXPECT_EQ(c.worst, 1.0);
    EXPECT_FALSE(c.avg_time.has_value());

    const auto two = describe(std::vector<double>{1, 3}, std::vector<double>{0.5, 1.5}, std::vector<bool>{true, false});
    EXPECT_EQ(two.mean, 2.0);
    EXPECT_EQ(two.best, 1.0);
    EXPECT_EQ(two.worst, 3.0);
    EXPECT_EQ(two.std_dev, 1.0);
    EXPECT_EQ(*two.avg_time, 1.0);
    EXPECT_EQ(two.n_success, 1u);
    EXPECT_EQ(two.n_fail, 1u);

    const auto one = describe(std::vector<double>{4.5}, {}, std::vector<bool>{false});
    EXPECT_EQ(one.best, 4.5);
    EXPECT_EQ(one.worst, 4.5);
    EXPECT_EQ(one.mean, 4.5);
    EXPECT_EQ(one.std_dev, 0.0);
}

TEST(Describe, Errors) {
    EXPECT_THROW(describe(std::vector<double>{}, {}, std::vector<bool>{}), std::invalid_argument);
    EXPECT_THROW(describe(std::vector<double>{1, 2}, {}, std::vector<bool>{true}), std::invalid_argument);
}

TEST(Describe, OrderingInvariant) {
    std::mt19937_64 g(1);
    std::uniform_real_distribution<double> u(-1e6, 1e6);
    for (int t = 0; t < 200; ++t) {
        std::vector<double> v(1 + t % 30);
        for (auto& x : v) x = u(g);
        std::vector<bool> ok(v.size(), true);
        const auto s = describe(v, {}, ok);
        EXPECT_LE(s.best, s.mean);
        EXPECT_LE(s.mean, s.worst);
        EXPECT_GE(s.std_dev, 0.0);
        EXPECT_EQ(s.n_success + s.n_fail, v.size());
    }
}

TEST(Wilcoxon, IdenticalSamplesAreEqual) {
    const std::vector<double> a{1, 2, 3, 4};
    const auto r = wilcoxon_signed_rank(a, a);
    EXPECT_EQ(r.n_effective, 0u);
    EXPECT_EQ(r.p_value, 1.0);
    EXPECT_EQ(r.verdict, Verdict::Equal);
}

TEST(Wilcoxon, FiveAllPositive) {
    const std::vector<double> a{1, 2, 3, 4, 5}, b(5, 0.0);
    const auto r = wilcoxon_signed_rank(a, b);
    EXPECT_EQ(r.r_plus, 15.0);
    EXPECT_EQ(r.r_minus, 0.0);
    EXPECT_EQ(r.p_value, 2.0 / 32.0);
    EXPECT_EQ(r.method, WilcoxonMethod::Exact);
    EXPECT_EQ(r.verdict, Verdict::Equal);
}

TEST(Wilcoxon, ThirtySameSign) {
    std::vector<double> a(30), b(30, 0.0);
    for (int i = 0; i < 30; ++i) a[i] = 0.1 * (i + 1);
    const auto r = wilcoxon_signed_rank(a, b);
    EXPECT_EQ(r.r_plus, 465.0);
    EXPECT_EQ(r.r_minus, 0.0);
    EXPECT_LT(r.p_value, 1e-4);
    EXPECT_EQ(r.p_value, std::ldexp(2.0, -30));
    EXPECT_EQ(r.verdict, Verdict::Plus);
    EXPECT_EQ(wilcoxon_signed_rank(b, a).verdict, Verdict::Minus);
}

TEST(Wilcoxon, ExactMatchesEnumeration) {
    for (std::size_t n = 1; n <= 10; ++n) {
        for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
            const auto d = signed_ranks(n, m);
            const auto r = wilcoxon_signed_rank(d, std::vector<double>(n, 0.0));
            ASSERT_EQ(r.method, WilcoxonMethod::Exact);
            ASSERT_EQ(r.p_value, enumerated_p(n, r.r_plus)) << "n=" << n << " mask=" << m;
        }
    }
}

TEST(Wilcoxon, CountsTableSumsToPowerOfTwo) {
    for (std::size_t n = 0; n <= 30; ++n) {
        const auto c = signed_rank_counts(n);
        std::uint64_t total = 0;
        for (auto v : c) total += v;
        EXPECT_EQ(total, std::uint64_t{1} << n);
        EXPECT_EQ(c.size(), n * (n + 1) / 2 + 1);
    }
}

TEST(Wilcoxon, NormalApproximationMatchesReference) {
    // Reference p-values from scipy.stats.wilcoxon(method="approx",
    // correction=True, zero_method="wilcox").
    const std::vector<double> tied{1.5, 2, 2, 3, -1, 4, 4, 4, -2, 5, 6, 0, 7, -3, 8};
    const auto r = wilcoxon_signed_rank(tied, std::vector<double>(tied.size(), 0.0));
    EXPECT_EQ(r.method, WilcoxonMethod::NormalApprox);
    EXPECT_EQ(r.n_effective, 14u);
    EXPECT_EQ(std::min(r.r_plus, r.r_minus), 11.5);
    EXPECT_NEAR(r.p_value, 0.010831070412287596, 1e-12);

    std::vector<double> big;
    for (int x = 1; x <= 40; ++x) big.push_back(x % 3 ? x : -x);
    const auto r2 = wilcoxon_signed_rank(big, std::vector<double>(40, 0.0));
    EXPECT_EQ(r2.method, WilcoxonMethod::NormalApprox);
    EXPECT_EQ(r2.r_minus, 273.0);
    EXPECT_NEAR(r2.p_value, 0.06654465496858146, 1e-12);
}

TEST(Wilcoxon, Properties) {
    std::mt19937_64 g(7);
    std::normal_distribution<double> z(0.0, 1.0);
    for (int t = 0; t < 300; ++t) {
        const std::size_t n = 1 + t % 40;
        std::vector<double> a(n), b(n);
        for (std::size_t i = 0; i < n; ++i) {
            a[i] = z(g) + 0.3;
            b[i] = (i % 5 == 0) ? a[i] : z(g);
            if (t % 3 == 0) a[i] = std::round(a[i] * 4.0) / 4.0;  // induce ties
            if (t % 3 == 0) b[i] = std::round(b[i] * 4.0) / 4.0;
        }
        const auto r = wilcoxon_signed_rank(a, b);
        const double ne = static_cast<double>(r.n_effective);
        EXPECT_DOUBLE_EQ(r.r_plus + r.r_minus, ne * (ne + 1.0) / 2.0);
        EXPECT_GE(r.p_value, 0.0);
        EXPECT_LE(r.p_value, 1.0);
        EXPECT_EQ(r.verdict == Verdict::Equal, r.p_value >= 0.05 || r.r_plus == r.r_minus);

        const auto s = wilcoxon_signed_rank(b, a);
        EXPECT_EQ(s.r_plus, r.r_minus);
        EXPECT_EQ(s.r_minus, r.r_plus);
        EXPECT_EQ(s.p_value, r.p_value);

        std::vector<double> a2(a), b2(b);
        for (auto& x : a2) x *= 4.0;
        for (auto& x : b2) x *= 4.0;
        const auto k = wilcoxon_signed_rank(a2, b2);
        EXPECT_EQ(k.r_plus, r.r_plus);
        EXPECT_EQ(k.r_minus, r.r_minus);
        EXPECT_EQ(k.p_value, r.p_value);
        EXPECT_EQ(k.verdict, r.verdict);
    }
}

TEST(Wilcoxon, Errors) {
    EXPECT_THROW(wilcoxon_signed_rank(std::vector<double>{1.0}, std::vector<double>{}), std::invalid_argument);
    EXPECT_THROW(wilcoxon_signed_rank(std::vector<double>{}, std::vector<double>{}), std::invalid_argument);
}

TEST(VerdictSummary, Counts) {
    auto make = [](Verdict v) {
        WilcoxonResult r;
        r.verdict = v;
        return r;
    };
    const std::vector<WilcoxonResult> four(4, make(Verdict::Plus));
    EXPECT_EQ(verdict_summary(four).str(), "4/0/0");
    EXPECT_EQ(verdict_summary(std::vector<WilcoxonResult>{}).str(), "0/0/0");
    const std::vector<WilcoxonResult> mixed{make(Verdict::Plus), make(Verdict::Minus), make(Verdict::Plus),
                                            make(Verdict::Equal)};
    const auto s = verdict_summary(mixed);
    EXPECT_EQ(s.plus, 2u);
    EXPECT_EQ(s.equal, 1u);
    EXPECT_EQ(s.minus, 1u);
}
