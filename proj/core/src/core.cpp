#include "bsaopt/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace bsaopt {

SearchSpace::SearchSpace(std::vector<double> low, std::vector<double> up)
    : low_(std::move(low)), up_(std::move(up)) {
    validate();
}

SearchSpace SearchSpace::box(std::size_t dims, double low, double up) {
    return SearchSpace(std::vector<double>(dims, low), std::vector<double>(dims, up));
}

bool SearchSpace::degenerate() const noexcept {
    for (std::size_t j = 0; j < low_.size(); ++j) {
        if (low_[j] == up_[j]) return true;
    }
    return false;
}

bool SearchSpace::contains(std::span<const double> x) const noexcept {
    if (x.size() != low_.size()) return false;
    for (std::size_t j = 0; j < x.size(); ++j) {
        if (!(x[j] >= low_[j] && x[j] <= up_[j])) return false;
    }
    return true;
}

void SearchSpace::validate() const {
    if (low_.empty()) throw ConfigError("search space must have at least one dimension");
    if (low_.size() != up_.size()) {
        throw ConfigError("search space bound vectors differ in length (" +
                          std::to_string(low_.size()) + " vs " + std::to_string(up_.size()) + ")");
    }
    for (std::size_t j = 0; j < low_.size(); ++j) {
        if (!std::isfinite(low_[j]) || !std::isfinite(up_[j])) {
            throw ConfigError("search space bound on axis " + std::to_string(j) +
                              " is not finite");
        }
        if (low_[j] > up_[j]) {
            throw ConfigError("search space axis " + std::to_string(j) + " has low > up");
        }
    }
}

Population::Population(std::size_t size, std::size_t dims)
    : dims_(dims), coords_(size * dims, 0.0), fitness_(size) {}

bool Population::all_evaluated() const noexcept {
    return std::all_of(fitness_.begin(), fitness_.end(),
                       [](const std::optional<double>& f) { return f.has_value(); });
}

Individual Population::member(std::size_t i) const {
    const auto r = row(i);
    return Individual{{r.begin(), r.end()}, fitness_[i]};
}

void Population::set_member(std::size_t i, const Individual& ind) {
    if (ind.coords.size() != dims_) {
        throw ContractViolation("individual dimensionality does not match population");
    }
    std::copy(ind.coords.begin(), ind.coords.end(), row(i).begin());
    fitness_[i] = ind.fitness;
}

void Population::push_back(const Individual& ind) {
    if (fitness_.empty() && coords_.empty()) dims_ = ind.coords.size();
    if (ind.coords.size() != dims_) {
        throw ContractViolation("individual dimensionality does not match population");
    }
    coords_.insert(coords_.end(), ind.coords.begin(), ind.coords.end());
    fitness_.push_back(ind.fitness);
}

void Population::copy_row_from(std::size_t dst, const Population& other, std::size_t src) {
    const auto from = other.row(src);
    std::copy(from.begin(), from.end(), row(dst).begin());
    fitness_[dst] = other.fitness_[src];
}

std::optional<std::size_t> Population::best_index() const {
    std::optional<std::size_t> best;
    for (std::size_t i = 0; i < fitness_.size(); ++i) {
        if (!fitness_[i]) continue;
        if (!best || *fitness_[i] < *fitness_[*best]) best = i;
    }
    return best;
}

namespace {

std::seed_seq make_seed_seq(std::uint64_t seed, std::uint64_t stream) {
    return std::seed_seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                         static_cast<std::uint32_t>(stream),
                         static_cast<std::uint32_t>(stream >> 32)};
}

}  // namespace

RandomSource::RandomSource(std::uint64_t seed, std::uint64_t stream)
    : seed_(seed), stream_(stream) {
    auto seq = make_seed_seq(seed, stream);
    engine_.seed(seq);
}

double RandomSource::uniform() {
    // 53 random mantissa bits; never returns 1.0.
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double RandomSource::uniform(double a, double b) {
    if (a == b) return a;
    return std::min(b, a + (b - a) * uniform());
}

double RandomSource::normal() { return normal_(engine_); }

std::size_t RandomSource::uniform_index(std::size_t n) {
    if (n == 0) throw ContractViolation("uniform_index requires n >= 1");
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(engine_);
}

AmplitudeStrategy AmplitudeStrategy::scaled_normal(double scale) {
    AmplitudeStrategy s;
    s.kind = Kind::ScaledNormal;
    s.scale = scale;
    return s;
}

AmplitudeStrategy AmplitudeStrategy::constant(double value) {
    AmplitudeStrategy s;
    s.kind = Kind::Constant;
    s.value = value;
    return s;
}

AmplitudeStrategy AmplitudeStrategy::linear_schedule(double f_min, double f_max) {
    AmplitudeStrategy s;
    s.kind = Kind::LinearSchedule;
    s.f_min = f_min;
    s.f_max = f_max;
    return s;
}

void AmplitudeStrategy::validate() const {
    switch (kind) {
    case Kind::ScaledNormal:
        if (!(scale > 0.0) || !std::isfinite(scale)) {
            throw ConfigError("scaled-normal amplitude requires scale > 0");
        }
        break;
    case Kind::Constant:
        if (!std::isfinite(value)) throw ConfigError("constant amplitude must be finite");
        break;
    case Kind::LinearSchedule:
        if (!std::isfinite(f_min) || !std::isfinite(f_max) || f_min > f_max) {
            throw ConfigError("linear-schedule amplitude requires finite f_min <= f_max");
        }
        break;
    }
}

std::string to_string(AmplitudeStrategy::Kind kind) {
    switch (kind) {
    case AmplitudeStrategy::Kind::ScaledNormal: return "scaled-normal";
    case AmplitudeStrategy::Kind::Constant: return "constant";
    case AmplitudeStrategy::Kind::LinearSchedule: return "linear-schedule";
    }
    return "unknown";
}

Population initialize_population(std::size_t n, const SearchSpace& space, RandomSource& rng) {
    if (n == 0) throw ConfigError("population size must be at least 1");
    space.validate();
    Population pop(n, space.dims());
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < space.dims(); ++j) {
            pop.at(i, j) = rng.uniform(space.low(j), space.up(j));
        }
    }
    return pop;
}

std::size_t boundary_control(Population& pop, const SearchSpace& space, RandomSource& rng,
                             BoundaryMode mode) {
    if (pop.dims() != space.dims()) {
        throw ContractViolation("population dimensionality does not match search space");
    }
    std::size_t repaired = 0;
    for (std::size_t i = 0; i < pop.size(); ++i) {
        bool touched = false;
        for (std::size_t j = 0; j < pop.dims(); ++j) {
            double& x = pop.at(i, j);
            // NaN fails both comparisons and is treated as out of bounds.
            if (x >= space.low(j) && x <= space.up(j)) continue;
            if (mode == BoundaryMode::Regenerate) {
                x = rng.uniform(space.low(j), space.up(j));
            } else {
                x = std::isnan(x) ? space.low(j) : std::clamp(x, space.low(j), space.up(j));
            }
            touched = true;
            ++repaired;
        }
        if (touched) pop.invalidate(i);
    }
    return repaired;
}

EvaluationStats evaluate(Population& pop, const Objective& f, const EvaluationObserver& observer) {
    EvaluationStats stats;
    for (std::size_t i = 0; i < pop.size(); ++i) {
        if (pop.fitness(i)) continue;
        double value = f(pop.row(i));
        if (!std::isfinite(value)) {
            value = std::numeric_limits<double>::infinity();
            ++stats.non_finite;
        }
        pop.set_fitness(i, value);
        ++stats.evaluations;
        if (observer) observer(i, value);
    }
    return stats;
}

}  // namespace bsaopt
