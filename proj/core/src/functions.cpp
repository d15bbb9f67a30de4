#include "bsaopt/functions.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>

namespace bsaopt {

namespace formulas {

using std::numbers::pi;

double ackley(std::span<const double> x) {
    const double n = static_cast<double>(x.size());
    double sq = 0.0;
    double cs = 0.0;
    for (double v : x) {
        sq += v * v;
        cs += std::cos(2.0 * pi * v);
    }
    return -20.0 * std::exp(-0.2 * std::sqrt(sq / n)) - std::exp(cs / n) + 20.0 + std::numbers::e;
}

double alpine01(std::span<const double> x) {
    double s = 0.0;
    for (double v : x) s += std::abs(v * std::sin(v) + 0.1 * v);
    return s;
}

double bird(std::span<const double> x) {
    const double a = x[0];
    const double b = x[1];
    const double t1 = 1.0 - std::cos(b);
    const double t2 = 1.0 - std::sin(a);
    return std::sin(a) * std::exp(t1 * t1) + std::cos(b) * std::exp(t2 * t2) + (a - b) * (a - b);
}

double leon(std::span<const double> x) {
    const double t = x[1] - x[0] * x[0] * x[0];
    return 100.0 * t * t + (1.0 - x[0]) * (1.0 - x[0]);
}

double cross_in_tray(std::span<const double> x) {
    const double r = std::sqrt(x[0] * x[0] + x[1] * x[1]);
    const double inner = std::abs(std::sin(x[0]) * std::sin(x[1]) * std::exp(std::abs(100.0 - r / pi)));
    return -0.0001 * std::pow(inner + 1.0, 0.1);
}

double easom(std::span<const double> x) {
    const double a = x[0] - pi;
    const double b = x[1] - pi;
    return -std::cos(x[0]) * std::cos(x[1]) * std::exp(-(a * a) - (b * b));
}

double whitley(std::span<const double> x) {
    double s = 0.0;
    for (double xi : x) {
        for (double xj : x) {
            const double a = xi * xi - xj;
            const double y = 100.0 * a * a + (1.0 - xj) * (1.0 - xj);
            s += y * y / 4000.0 - std::cos(y) + 1.0;
        }
    }
    return s;
}

double egg_crate(std::span<const double> x) {
    const double s0 = std::sin(x[0]);
    const double s1 = std::sin(x[1]);
    return x[0] * x[0] + x[1] * x[1] + 25.0 * (s0 * s0 + s1 * s1);
}

double griewank(std::span<const double> x) {
    double sum = 0.0;
    double prod = 1.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sum += x[i] * x[i];
        prod *= std::cos(x[i] / std::sqrt(static_cast<double>(i + 1)));
    }
    return 1.0 + sum / 4000.0 - prod;
}

double holder_table(std::span<const double> x) {
    const double r = std::sqrt(x[0] * x[0] + x[1] * x[1]);
    return -std::abs(std::sin(x[0]) * std::cos(x[1]) * std::exp(std::abs(1.0 - r / pi)));
}

double rastrigin(std::span<const double> x) {
    double s = 10.0 * static_cast<double>(x.size());
    for (double v : x) s += v * v - 10.0 * std::cos(2.0 * pi * v);
    return s;
}

double rosenbrock(std::span<const double> x) {
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < x.size(); ++i) {
        const double a = x[i + 1] - x[i] * x[i];
        s += 100.0 * a * a + (x[i] - 1.0) * (x[i] - 1.0);
    }
    return s;
}

double salomon(std::span<const double> x) {
    double sq = 0.0;
    for (double v : x) sq += v * v;
    const double r = std::sqrt(sq);
    return 1.0 - std::cos(2.0 * pi * r) + 0.1 * r;
}

double sphere(std::span<const double> x) {
    double s = 0.0;
    for (double v : x) s += v * v;
    return s;
}

double styblinski_tang(std::span<const double> x) {
    double s = 0.0;
    for (double v : x) {
        const double v2 = v * v;
        s += v2 * v2 - 16.0 * v2 + 5.0 * v;
    }
    return 0.5 * s;
}

// x* sin(sqrt(x*)) at the stationary point x* = 420.968746..., so the
// minimum is zero to rounding.
constexpr double kSchwefelOffset = 418.98288727243370628;

double schwefel26(std::span<const double> x) {
    double s = kSchwefelOffset * static_cast<double>(x.size());
    for (double v : x) s -= v * std::sin(std::sqrt(std::abs(v)));
    return s;
}

}  // namespace formulas

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

ObjectiveFunction fixed(int id, std::string name, ObjectiveFormula formula, double low, double up,
                        double global_min, double published_min,
                        std::vector<std::vector<double>> points, double hardness,
                        double tolerance = 1e-9) {
    ObjectiveFunction f;
    f.id = id;
    f.name = std::move(name);
    f.formula = formula;
    f.low = low;
    f.up = up;
    f.global_min = global_min;
    f.published_min = published_min;
    f.min_points_2d = std::move(points);
    f.scalable = false;
    f.hardness_pct = hardness;
    f.min_tolerance = tolerance;
    return f;
}

ObjectiveFunction scalable(int id, std::string name, ObjectiveFormula formula, double low,
                           double up, double global_min, double published_min,
                           double min_coordinate, double hardness, bool scales = false) {
    ObjectiveFunction f;
    f.id = id;
    f.name = std::move(name);
    f.formula = formula;
    f.low = low;
    f.up = up;
    f.global_min = global_min;
    f.published_min = published_min;
    f.min_scales_with_dim = scales;
    f.min_coordinate = min_coordinate;
    f.scalable = true;
    f.hardness_pct = hardness;
    return f;
}

std::vector<ObjectiveFunction> build_registry() {
    using namespace formulas;
    constexpr double pi = std::numbers::pi;
    constexpr double cit = 1.3494066171539107918;
    constexpr double ht_a = 8.0550234757365634198;
    constexpr double ht_b = 9.66459001924127289;
    std::vector<ObjectiveFunction> r;
    r.push_back(scalable(1, "Ackley", ackley, -32.0, 32.0, 0.0, 0.0, 0.0, 48.25));
    r.push_back(fixed(2, "Alpine01", alpine01, 0.0, 10.0, 0.0, 0.0, {{0.0, 0.0}}, 65.17));
    r.push_back(fixed(3, "Bird", bird, -kTwoPi, kTwoPi, -106.76453674926467478, -106.76453,
                      {{4.7010431302495530234, 3.1529385037249300727},
                       {-1.5821421769300334535, -3.1302468034546564042}},
                      59.00, 1e-6));
    r.push_back(fixed(4, "Leon", leon, 0.0, 10.0, 0.0, 0.0, {{1.0, 1.0}}, 41.17));
    r.push_back(fixed(5, "CrossInTray", cross_in_tray, -10.0, 10.0, -2.0626118708227368778,
                      -2.062611,
                      {{cit, cit}, {-cit, cit}, {cit, -cit}, {-cit, -cit}}, 74.08, 1e-6));
    r.push_back(fixed(6, "Easom", easom, -100.0, 100.0, -1.0, -1.0, {{pi, pi}}, 26.08));
    r.push_back(fixed(7, "Whitley", whitley, -10.24, 10.24, 0.0, 0.0, {{1.0, 1.0}}, 4.92));
    r.push_back(fixed(8, "EggCrate", egg_crate, -5.0, 5.0, 0.0, 0.0, {{0.0, 0.0}}, 64.92));
    r.push_back(scalable(9, "Griewank", griewank, -600.0, 600.0, 0.0, 0.0, 0.0, 6.08));
    r.push_back(fixed(10, "HolderTable", holder_table, -10.0, 10.0, -19.208502567886731832,
                      -19.2085,
                      {{ht_a, ht_b}, {-ht_a, ht_b}, {ht_a, -ht_b}, {-ht_a, -ht_b}}, 80.08,
                      1e-6));
    r.push_back(scalable(11, "Rastrigin", rastrigin, -5.12, 5.12, 0.0, 0.0, 0.0, 39.50));
    r.push_back(scalable(12, "Rosenbrock", rosenbrock, -5.0, 10.0, 0.0, 0.0, 1.0, 44.17));
    r.push_back(fixed(13, "Salomon", salomon, -100.0, 100.0, 0.0, 0.0, {{0.0, 0.0}}, 10.33));
    r.push_back(fixed(14, "Sphere", sphere, -1.0, 1.0, 0.0, 0.0, {{0.0, 0.0}}, 82.75));
    r.push_back(scalable(15, "StyblinskiTang", styblinski_tang, -5.0, 5.0,
                         -39.166165703771415464, -39.1661, -2.9035340277711770951, 70.50,
                         /*scales=*/true));
    r.push_back(fixed(16, "Schwefel26", schwefel26, -500.0, 500.0, 0.0, 0.0,
                      {{420.96874635998202731, 420.96874635998202731}}, 62.67));
    return r;
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

}  // namespace

double ObjectiveFunction::global_min_value(std::size_t dims) const {
    return min_scales_with_dim ? global_min * static_cast<double>(dims) : global_min;
}

std::vector<std::vector<double>> ObjectiveFunction::global_min_points(std::size_t dims) const {
    if (min_coordinate) return {std::vector<double>(dims, *min_coordinate)};
    if (dims == 2) return min_points_2d;
    return {};
}

SearchSpace ObjectiveFunction::default_space(std::size_t dims) const {
    check_dims(dims);
    return SearchSpace::box(dims, low, up);
}

void ObjectiveFunction::check_dims(std::size_t dims) const {
    if (dims == 0) throw ConfigError(code() + " (" + name + ") needs at least one dimension");
    if (!scalable && dims != 2) {
        throw ConfigError(code() + " (" + name + ") is fixed 2-D; got D=" + std::to_string(dims));
    }
}

double ObjectiveFunction::operator()(std::span<const double> x) const {
    check_dims(x.size());
    return formula(x);
}

std::vector<ObjectiveFunction> registry() {
    static const std::vector<ObjectiveFunction> table = build_registry();
    return table;
}

const ObjectiveFunction& find_function(const std::vector<ObjectiveFunction>& reg,
                                       const std::string& key) {
    const std::string k = lower(key);
    for (const auto& f : reg) {
        if (k == lower(f.code()) || k == std::to_string(f.id) || k == lower(f.name)) return f;
    }
    std::string valid;
    for (const auto& f : reg) {
        if (!valid.empty()) valid += ", ";
        valid += f.code() + " (" + f.name + ")";
    }
    throw ConfigError("unknown function '" + key + "'; valid ids: " + valid);
}

double evaluate_function(int id, std::span<const double> x) {
    static const std::vector<ObjectiveFunction> reg = registry();
    if (id < 1 || id > static_cast<int>(reg.size())) {
        throw ConfigError("function id out of range: " + std::to_string(id));
    }
    return reg[static_cast<std::size_t>(id - 1)](x);
}

std::string registry_json(const std::vector<ObjectiveFunction>& reg) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& f : reg) {
        arr.push_back({{"id", f.code()},
                       {"name", f.name},
                       {"low", f.low},
                       {"up", f.up},
                       {"global_min", f.global_min},
                       {"global_min_per_dimension", f.min_scales_with_dim},
                       {"published_min", f.published_min},
                       {"dim", f.scalable ? nlohmann::json("n") : nlohmann::json(2)},
                       {"scalable", f.scalable},
                       {"hardness_pct", f.hardness_pct}});
    }
    return arr.dump(2);
}

}  // namespace bsaopt
