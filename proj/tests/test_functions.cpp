#include "bsaopt/functions.hpp"

#include <gtest/gtest.h>
#include <json.hpp>

#include <cmath>
#include <numbers>

using namespace bsaopt;

namespace {

// Minima and minimizers computed offline with 50-digit mpmath root finding
// on the analytic gradients.
constexpr double kBirdMin = -106.76453674926467478;
constexpr double kCrossInTrayMin = -2.0626118708227368778;
constexpr double kCrossInTrayX = 1.3494066171539107918;
constexpr double kHolderTableMin = -19.208502567886731832;
constexpr double kStyblinskiTangX = -2.9035340277711770951;
constexpr double kStyblinskiTangPerDim = -39.166165703771415464;

// Coarse grid followed by shrinking local grids around the incumbent.
std::pair<double, std::vector<double>> grid_refine(ObjectiveFormula f, double lo, double hi) {
    std::vector<double> best{0.0, 0.0};
    double fbest = std::numeric_limits<double>::infinity();
    const int n = 400;
    for (int a = 0; a <= n; ++a) {
        for (int b = 0; b <= n; ++b) {
            const std::vector<double> x{lo + (hi - lo) * a / n, lo + (hi - lo) * b / n};
            const double v = f(x);
            if (v < fbest) {
                fbest = v;
                best = x;
            }
        }
    }
    double h = (hi - lo) / n;
    for (int round = 0; round < 40; ++round) {
        const auto c = best;
        for (int a = -10; a <= 10; ++a) {
            for (int b = -10; b <= 10; ++b) {
                const std::vector<double> x{std::clamp(c[0] + h * a / 10.0, lo, hi),
                                            std::clamp(c[1] + h * b / 10.0, lo, hi)};
                const double v = f(x);
                if (v < fbest) {
                    fbest = v;
                    best = x;
                }
            }
        }
        h /= 4.0;
    }
    return {fbest, best};
}

}  // namespace

TEST(Registry, TableMetadata) {
    const auto reg = registry();
    ASSERT_EQ(reg.size(), 16u);
    const auto& sphere = reg[13];
    EXPECT_EQ(sphere.name, "Sphere");
    EXPECT_EQ(sphere.low, -1.0);
    EXPECT_EQ(sphere.up, 1.0);
    EXPECT_EQ(sphere.global_min, 0.0);
    EXPECT_EQ(sphere.hardness_pct, 82.75);
    const auto hardest = std::min_element(reg.begin(), reg.end(), [](const auto& a, const auto& b) {
        return a.hardness_pct < b.hardness_pct;
    });
    EXPECT_EQ(hardest->name, "Whitley");
    EXPECT_EQ(hardest->hardness_pct, 4.92);
    int scalable = 0;
    for (const auto& f : reg) scalable += f.scalable;
    EXPECT_EQ(scalable, 5);
    EXPECT_NEAR(reg[2].low, -2.0 * std::numbers::pi, 1e-15);
    EXPECT_EQ(reg[6].up, 10.24);
}

TEST(Registry, PublishedValuesWithinRounding) {
    for (const auto& f : registry()) {
        EXPECT_NEAR(f.global_min, f.published_min, 1e-3) << f.code();
    }
}

TEST(Registry, LookupAndErrors) {
    const auto reg = registry();
    EXPECT_EQ(find_function(reg, "F14").id, 14);
    EXPECT_EQ(find_function(reg, "sphere").id, 14);
    EXPECT_EQ(find_function(reg, "7").id, 7);
    try {
        find_function(reg, "F99");
        FAIL();
    } catch (const ConfigError& e) {
        EXPECT_NE(std::string(e.what()).find("F16"), std::string::npos);
    }
    EXPECT_THROW(reg[13].check_dims(3), ConfigError);
    EXPECT_NO_THROW(reg[10].check_dims(60));
    EXPECT_THROW(evaluate_function(14, std::vector<double>{0.0, 0.0, 0.0}), ConfigError);
}

TEST(Registry, JsonExport) {
    const auto j = nlohmann::json::parse(registry_json(registry()));
    ASSERT_EQ(j.size(), 16u);
    EXPECT_EQ(j[13]["id"], "F14");
    EXPECT_EQ(j[0]["dim"], "n");
}

TEST(Functions, KnownValues) {
    EXPECT_EQ(evaluate_function(14, std::vector<double>{0.0, 0.0}), 0.0);
    EXPECT_EQ(evaluate_function(14, std::vector<double>{1.0, 1.0}), 2.0);
    for (std::size_t d : {1u, 2u, 10u, 30u, 60u}) {
        EXPECT_EQ(evaluate_function(11, std::vector<double>(d, 0.0)), 0.0);
    }
}

TEST(Functions, OracleMinima) {
    EXPECT_NEAR(formulas::bird(std::vector<double>{4.7010431302495530234, 3.1529385037249300727}), kBirdMin, 1e-9);
    EXPECT_NEAR(formulas::bird(std::vector<double>{-1.5821421769300334535, -3.1302468034546564042}), kBirdMin, 1e-9);
    for (double sx : {-1.0, 1.0}) {
        for (double sy : {-1.0, 1.0}) {
            EXPECT_NEAR(formulas::cross_in_tray(std::vector<double>{sx * kCrossInTrayX, sy * kCrossInTrayX}),
                        kCrossInTrayMin, 1e-12);
        }
    }
    for (std::size_t d : {2u, 10u, 30u, 60u}) {
        EXPECT_NEAR(formulas::styblinski_tang(std::vector<double>(d, kStyblinskiTangX)),
                    kStyblinskiTangPerDim * static_cast<double>(d), 1e-9 * static_cast<double>(d));
    }
}

TEST(Functions, HolderTableByGridRefinement) {
    const auto [fbest, x] = grid_refine(formulas::holder_table, -10.0, 10.0);
    EXPECT_NEAR(fbest, kHolderTableMin, 1e-9);
    EXPECT_NEAR(std::abs(x[0]), 8.05502, 1e-4);
    EXPECT_NEAR(std::abs(x[1]), 9.66459, 1e-4);
    EXPECT_NEAR(evaluate_function(10, std::vector<double>{8.05502, 9.66459}), -19.2085, 1e-4);
}

TEST(Functions, MinimumPointsAtEveryDimension) {
    for (const auto& f : registry()) {
        std::vector<std::size_t> dims{2};
        if (f.scalable) dims = {2, 10, 30, 60};
        for (std::size_t d : dims) {
            const auto pts = f.global_min_points(d);
            ASSERT_FALSE(pts.empty()) << f.code();
            for (const auto& x : pts) {
                EXPECT_NEAR(f(x), f.global_min_value(d), f.min_tolerance * std::max<double>(1.0, d)) << f.code();
            }
        }
    }
}

TEST(Functions, RandomSamplesNeverUndercut) {
    RandomSource rng(31);
    for (const auto& f : registry()) {
        const std::size_t d = f.scalable ? 5 : 2;
        const double fmin = f.global_min_value(d);
        std::vector<double> x(d);
        for (int k = 0; k < 20000; ++k) {
            for (auto& v : x) v = rng.uniform(f.low, f.up);
            ASSERT_GE(f(x), fmin - f.min_tolerance) << f.code();
        }
    }
}

TEST(Functions, EvenSymmetry) {
    RandomSource rng(32);
    for (int id : {14, 1, 11, 9}) {
        const auto f = registry()[static_cast<std::size_t>(id - 1)];
        const std::size_t d = f.scalable ? 6 : 2;
        std::vector<double> x(d), neg(d);
        for (int k = 0; k < 500; ++k) {
            for (std::size_t j = 0; j < d; ++j) {
                x[j] = rng.uniform(f.low, f.up);
                neg[j] = -x[j];
            }
            EXPECT_NEAR(f(x), f(neg), 1e-12) << f.code();
        }
    }
}
