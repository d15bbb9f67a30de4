#pragma once

// Shared domain types for every optimizer: the feasible box, the population
// matrix, the seeded random source, and the amplitude strategy.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace bsaopt {

/// Raised when a configuration value violates its documented domain.
class ConfigError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when an operation is called outside its precondition
/// (e.g. greedy selection on unevaluated members).
class ContractViolation : public std::logic_error {
  public:
    using std::logic_error::logic_error;
};

/// Axis-aligned feasible box. Equal bounds on an axis are accepted but make
/// the space degenerate; they only appear in fixtures.
class SearchSpace {
  public:
    SearchSpace() = default;
    SearchSpace(std::vector<double> low, std::vector<double> up);

    /// Same [low, up] interval on each of `dims` axes.
    static SearchSpace box(std::size_t dims, double low, double up);

    std::size_t dims() const noexcept { return low_.size(); }
    const std::vector<double>& low() const noexcept { return low_; }
    const std::vector<double>& up() const noexcept { return up_; }
    double low(std::size_t j) const { return low_[j]; }
    double up(std::size_t j) const { return up_[j]; }

    bool degenerate() const noexcept;
    bool contains(std::span<const double> x) const noexcept;

    /// Throws ConfigError when dims is zero, the bound vectors differ in
    /// length, a bound is not finite, or low > up on some axis.
    void validate() const;

    bool operator==(const SearchSpace&) const = default;

  private:
    std::vector<double> low_;
    std::vector<double> up_;
};

/// One candidate solution as a value. Population stores members as rows of
/// a flat matrix; Individual is what goes in and out of it.
struct Individual {
    std::vector<double> coords;
    std::optional<double> fitness;

    bool evaluated() const noexcept { return fitness.has_value(); }
    bool operator==(const Individual&) const = default;
};

/// N x D matrix of coordinates plus a per-row fitness slot. An empty fitness
/// slot is the dirty flag: the row must be evaluated before use.
class Population {
  public:
    Population() = default;
    Population(std::size_t size, std::size_t dims);

    std::size_t size() const noexcept { return fitness_.size(); }
    std::size_t dims() const noexcept { return dims_; }

    std::span<double> row(std::size_t i) { return {coords_.data() + i * dims_, dims_}; }
    std::span<const double> row(std::size_t i) const {
        return {coords_.data() + i * dims_, dims_};
    }
    double& at(std::size_t i, std::size_t j) { return coords_[i * dims_ + j]; }
    double at(std::size_t i, std::size_t j) const { return coords_[i * dims_ + j]; }

    const std::optional<double>& fitness(std::size_t i) const { return fitness_[i]; }
    void set_fitness(std::size_t i, double value) { fitness_[i] = value; }
    void invalidate(std::size_t i) { fitness_[i].reset(); }
    bool all_evaluated() const noexcept;

    Individual member(std::size_t i) const;
    void set_member(std::size_t i, const Individual& ind);
    void push_back(const Individual& ind);

    /// Copies row `src` of `other` (coords and fitness) into row `dst`.
    void copy_row_from(std::size_t dst, const Population& other, std::size_t src);

    std::uint64_t generation = 0;

    /// Index of the lowest evaluated fitness; nullopt when nothing is evaluated.
    std::optional<std::size_t> best_index() const;

    std::span<const double> coords() const noexcept { return coords_; }
    bool operator==(const Population&) const = default;

  private:
    std::size_t dims_ = 0;
    std::vector<double> coords_;
    std::vector<std::optional<double>> fitness_;
};

/// Seeded pseudo-random stream. Each run owns one stream identified by
/// (seed, stream); identical pairs replay bit-identical draw sequences.
///
/// Draw order is part of the contract: shuffle() is Fisher-Yates from the
/// last element down, drawing uniform_index(i + 1) for i = n-1 .. 1.
class RandomSource {
  public:
    explicit RandomSource(std::uint64_t seed, std::uint64_t stream = 0);

    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t stream() const noexcept { return stream_; }

    /// Uniform on [0, 1).
    double uniform();
    /// Uniform on [a, b]; returns a exactly when a == b.
    double uniform(double a, double b);
    /// Standard normal N(0, 1).
    double normal();
    /// Uniform integer in [0, n). Requires n >= 1.
    std::size_t uniform_index(std::size_t n);

    template <typename T>
    void shuffle(std::span<T> items) {
        for (std::size_t i = items.size(); i > 1; --i) {
            const std::size_t j = uniform_index(i);
            using std::swap;
            swap(items[i - 1], items[j]);
        }
    }

  private:
    std::uint64_t seed_;
    std::uint64_t stream_;
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
};

/// How the mutation amplitude F is chosen each generation.
struct AmplitudeStrategy {
    enum class Kind { ScaledNormal, Constant, LinearSchedule };

    Kind kind = Kind::ScaledNormal;
    double scale = 3.0;  // ScaledNormal
    double value = 0.0;  // Constant
    double f_min = 0.0;  // LinearSchedule
    double f_max = 0.0;  // LinearSchedule

    static AmplitudeStrategy scaled_normal(double scale);
    static AmplitudeStrategy constant(double value);
    static AmplitudeStrategy linear_schedule(double f_min, double f_max);

    void validate() const;
};

std::string to_string(AmplitudeStrategy::Kind kind);

/// Objective signature shared by every optimizer.
using Objective = std::function<double(std::span<const double>)>;

/// How out-of-box coordinates are repaired.
enum class BoundaryMode { Regenerate, Clip };

/// Uniform sampling of every coordinate inside the box; fitness left unset.
Population initialize_population(std::size_t n, const SearchSpace& space, RandomSource& rng);

/// Repairs every coordinate outside [low_j, up_j] and clears the fitness of
/// the rows it touches. In-bounds coordinates are never changed and consume
/// no draws. Regenerate draws a fresh uniform value in row-major order.
/// Returns the number of repaired coordinates.
std::size_t boundary_control(Population& pop, const SearchSpace& space, RandomSource& rng,
                             BoundaryMode mode = BoundaryMode::Regenerate);

struct EvaluationStats {
    std::size_t evaluations = 0;
    std::size_t non_finite = 0;
};

/// Called once per fresh evaluation with the row index and stored fitness.
using EvaluationObserver = std::function<void(std::size_t, double)>;

/// Evaluates every dirty row in index order. Non-finite objective values are
/// stored as +infinity and counted in `non_finite`.
EvaluationStats evaluate(Population& pop, const Objective& f,
                         const EvaluationObserver& observer = {});

}  // namespace bsaopt
