#pragma once

// The sixteen benchmark objectives (F1..F16) with their default boxes, known
// minima and the opaque "overall success" hardness score.

#include "bsaopt/core.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace bsaopt {

using ObjectiveFormula = double (*)(std::span<const double>);

struct ObjectiveFunction {
    int id = 0;  // 1..16
    std::string name;
    ObjectiveFormula formula = nullptr;
    double low = 0.0;  // default box, same on every axis
    double up = 0.0;
    /// Analytic minimum at the registered dimension. For functions whose
    /// minimum grows with D this is the per-dimension value.
    double global_min = 0.0;
    bool min_scales_with_dim = false;
    /// The rounded value printed in the published benchmark table.
    double published_min = 0.0;
    /// Known minimizers of the 2-D form (fixed functions).
    std::vector<std::vector<double>> min_points_2d;
    /// Scalable functions: the minimizer is this value on every axis.
    std::optional<double> min_coordinate;
    bool scalable = false;
    double hardness_pct = 0.0;
    /// Tolerance for the minimum-point check (published minima are rounded
    /// for some functions).
    double min_tolerance = 1e-9;

    std::string code() const { return "F" + std::to_string(id); }

    /// Dimension used when the caller has no preference: 2 for fixed
    /// functions, `preferred` otherwise.
    std::size_t dimension_for(std::size_t preferred) const { return scalable ? preferred : 2; }

    double global_min_value(std::size_t dims) const;
    std::vector<std::vector<double>> global_min_points(std::size_t dims) const;
    SearchSpace default_space(std::size_t dims) const;

    /// Throws ConfigError on a dimension this function cannot take.
    void check_dims(std::size_t dims) const;

    /// Evaluates with a dimension check.
    double operator()(std::span<const double> x) const;
};

/// Registry in id order. Returns a fresh copy each call.
std::vector<ObjectiveFunction> registry();

/// Lookup by "F14", "f14", "14" or the function name (case-insensitive).
/// Throws ConfigError listing the valid ids on failure.
const ObjectiveFunction& find_function(const std::vector<ObjectiveFunction>& reg,
                                       const std::string& key);

double evaluate_function(int id, std::span<const double> x);

/// JSON array of {id, name, low, up, global_min, dim, scalable, hardness_pct}.
std::string registry_json(const std::vector<ObjectiveFunction>& reg);

namespace formulas {
double ackley(std::span<const double> x);
double alpine01(std::span<const double> x);
double bird(std::span<const double> x);
double leon(std::span<const double> x);
double cross_in_tray(std::span<const double> x);
double easom(std::span<const double> x);
double whitley(std::span<const double> x);
double egg_crate(std::span<const double> x);
double griewank(std::span<const double> x);
double holder_table(std::span<const double> x);
double rastrigin(std::span<const double> x);
double rosenbrock(std::span<const double> x);
double salomon(std::span<const double> x);
double sphere(std::span<const double> x);
double styblinski_tang(std::span<const double> x);
double schwefel26(std::span<const double> x);
}  // namespace formulas

}  // namespace bsaopt
