#include "bsaopt/harness.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <map>
#include <mutex>
#include <optional>
#include <thread>
#include <tuple>
#include <unordered_map>

namespace bsaopt {

namespace {

constexpr int kSpecFormatVersion = 1;

std::string job_key(Algorithm a, int function_id, SweepMode mode, const std::string& config,
                    std::size_t seed) {
    return to_string(a) + "|" + std::to_string(function_id) + "|" + to_string(mode) + "|" + config +
           "|" + std::to_string(seed);
}

nlohmann::json amplitude_json(const AmplitudeStrategy& s) {
    return {{"kind", to_string(s.kind)},
            {"scale", s.scale},
            {"value", s.value},
            {"f_min", s.f_min},
            {"f_max", s.f_max}};
}

}  // namespace

void ExperimentSpec::validate() const {
    if (algorithms.empty()) throw ConfigError("algorithms: at least one algorithm is required");
    if (functions.empty()) throw ConfigError("functions: at least one function is required");
    for (int id : functions) {
        if (id < 1 || id > 16) throw ConfigError("functions: id out of range F1..F16: " + std::to_string(id));
    }
    if (modes.empty()) throw ConfigError("modes: at least one sweep mode is required");
    if (runs < 1) throw ConfigError("runs must be at least 1");
    if (runs >= (std::size_t{1} << 40)) throw ConfigError("runs is too large");
    if (pop_size < 1) throw ConfigError("pop_size must be at least 1");
    if (!(success_epsilon >= 0.0)) throw ConfigError("epsilon must be >= 0");
    if (parallelism < 1) throw ConfigError("jobs must be at least 1");
    if (dims.empty() && std::count(modes.begin(), modes.end(), SweepMode::Dimension)) {
        throw ConfigError("dims: the dimension sweep needs at least one dimension");
    }
    for (std::size_t d : dims) {
        if (d < 1) throw ConfigError("dims: dimensions must be >= 1");
    }
    if (ranges.empty() && std::count(modes.begin(), modes.end(), SweepMode::Range)) {
        throw ConfigError("ranges: the range sweep needs at least one box");
    }
    for (const auto& [lo, hi] : ranges) {
        if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi)) {
            throw ConfigError("ranges: each box needs finite low < up");
        }
    }
    if (dims.size() >= (std::size_t{1} << 14) || ranges.size() >= (std::size_t{1} << 14)) {
        throw ConfigError("too many sweep configurations");
    }
    BsaConfig b;
    b.amplitude = bsa.amplitude;
    b.mix_rate = bsa.mix_rate;
    b.validate();
    for (Algorithm a : algorithms) {
        if (a == Algorithm::BSA) continue;
        CompetitorConfig c;
        c.algorithm = a;
        c.pop_size = pop_size;
        c.de = de;
        c.pso = pso;
        c.abc = abc;
        c.ff = ff;
        c.validate();
    }
}

std::string ExperimentSpec::canonical_json() const {
    nlohmann::json j;
    j["format_version"] = kSpecFormatVersion;
    auto& algs = j["algorithms"] = nlohmann::json::array();
    for (Algorithm a : algorithms) algs.push_back(to_string(a));
    j["functions"] = functions;
    auto& ms = j["modes"] = nlohmann::json::array();
    for (SweepMode m : modes) ms.push_back(to_string(m));
    j["dims"] = dims;
    auto& rs = j["ranges"] = nlohmann::json::array();
    for (const auto& [lo, hi] : ranges) rs.push_back({lo, hi});
    j["runs"] = runs;
    j["iterations"] = iterations;
    j["pop_size"] = pop_size;
    j["epsilon"] = success_epsilon;
    j["master_seed"] = master_seed;
    j["stop_at_target"] = stop_at_target;
    j["record_timing"] = record_timing;
    j["boundary"] = boundary == BoundaryMode::Regenerate ? "regenerate" : "clip";
    j["bsa"] = {{"amplitude", amplitude_json(bsa.amplitude)},
                {"mix_rate", bsa.mix_rate},
                {"crossover_mode", to_string(bsa.crossover_mode)}};
    j["de"] = {{"f_weight", de.f_weight}, {"crossover_rate", de.crossover_rate}};
    j["pso"] = {{"inertia", pso.inertia},
                {"cognitive", pso.cognitive},
                {"social", pso.social},
                {"velocity_clamp_fraction", pso.velocity_clamp_fraction}};
    j["abc"] = {{"trial_limit", abc.trial_limit ? nlohmann::json(format_double(*abc.trial_limit))
                                                : nlohmann::json()}};
    j["ff"] = {{"beta0", ff.beta0},
               {"gamma", format_double(ff.gamma)},
               {"alpha", ff.alpha},
               {"alpha_decay", ff.alpha_decay}};
    return j.dump();
}

std::string ExperimentSpec::hash() const {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : canonical_json()) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::uint64_t stream_id(const RunJob& job) {
    const auto alg = static_cast<std::uint64_t>(job.algorithm);
    const auto mode = static_cast<std::uint64_t>(job.mode);
    const auto fn = static_cast<std::uint64_t>(job.function_id);
    return (alg << 61) | (mode << 60) | (fn << 54) |
           ((static_cast<std::uint64_t>(job.config_index) & 0x3FFF) << 40) |
           (static_cast<std::uint64_t>(job.seed_index) & 0xFFFFFFFFFFULL);
}

std::string config_label(SweepMode mode, const ExperimentSpec& spec, std::size_t index) {
    if (mode == SweepMode::Dimension) return "D" + std::to_string(spec.dims.at(index));
    return "R" + std::to_string(index + 1);
}

std::vector<RunJob> plan_jobs(const ExperimentSpec& spec, SweepMode mode) {
    spec.validate();
    const auto reg = registry();
    const std::size_t n_configs = mode == SweepMode::Dimension ? spec.dims.size() : spec.ranges.size();
    std::vector<RunJob> jobs;
    jobs.reserve(spec.algorithms.size() * spec.functions.size() * n_configs * spec.runs);
    for (Algorithm a : spec.algorithms) {
        for (int id : spec.functions) {
            const auto& f = reg.at(static_cast<std::size_t>(id - 1));
            for (std::size_t c = 0; c < n_configs; ++c) {
                RunJob base;
                base.mode = mode;
                base.config_index = c;
                base.config = config_label(mode, spec, c);
                base.function_id = id;
                base.algorithm = a;
                if (mode == SweepMode::Dimension) {
                    base.dims = f.dimension_for(spec.dims[c]);
                    base.space = f.default_space(base.dims);
                } else {
                    const auto [lo, hi] = spec.ranges[c];
                    base.dims = 2;
                    base.space = SearchSpace::box(2, lo, hi);
                    base.domain_override = !(f.low <= lo && hi <= f.up);
                }
                for (std::size_t k = 0; k < spec.runs; ++k) {
                    RunJob job = base;
                    job.seed_index = k;
                    jobs.push_back(std::move(job));
                }
            }
        }
    }
    return jobs;
}

RunRecord execute_job(const ExperimentSpec& spec, const RunJob& job) {
    const auto reg = registry();
    const auto& fn = reg.at(static_cast<std::size_t>(job.function_id - 1));
    const ObjectiveFormula formula = fn.formula;
    const Objective objective = [formula](std::span<const double> x) { return formula(x); };
    const double f_star = fn.global_min_value(job.dims);
    const Target target{f_star, spec.success_epsilon, spec.stop_at_target};

    RandomSource rng(spec.master_seed, stream_id(job));
    RunResult result;
    if (job.algorithm == Algorithm::BSA) {
        BsaConfig cfg;
        cfg.pop_size = spec.pop_size;
        cfg.max_iterations = spec.iterations;
        cfg.amplitude = spec.bsa.amplitude;
        cfg.mix_rate = spec.bsa.mix_rate;
        cfg.crossover_mode = spec.bsa.crossover_mode;
        cfg.boundary = spec.boundary;
        cfg.target = target;
        result = bsa_minimize(objective, job.space, cfg, rng);
    } else {
        CompetitorConfig cfg;
        cfg.algorithm = job.algorithm;
        cfg.pop_size = spec.pop_size;
        cfg.max_iterations = spec.iterations;
        cfg.boundary = spec.boundary;
        cfg.target = target;
        cfg.de = spec.de;
        cfg.pso = spec.pso;
        cfg.abc = spec.abc;
        cfg.ff = spec.ff;
        result = competitor_minimize(objective, job.space, cfg, rng);
    }

    RunRecord r;
    r.algorithm = job.algorithm;
    r.function_id = job.function_id;
    r.mode = job.mode;
    r.config = job.config;
    r.seed_index = job.seed_index;
    r.best_value = result.best_value;
    r.evaluations = result.evaluations;
    r.evals_to_target = result.evals_to_target;
    if (spec.record_timing) {
        r.wall_time_s = result.wall_time_s;
        r.time_to_target_s = result.time_to_target_s;
    }
    r.success = target.reached(result.best_value);
    r.domain_override = job.domain_override;
    return r;
}

std::vector<RunRecord> run_jobs(const ExperimentSpec& spec, const std::vector<RunJob>& jobs,
                                const SweepOptions& options) {
    std::vector<std::optional<RunRecord>> slots(jobs.size());

    std::vector<std::size_t> pending;
    {
        std::unordered_map<std::string, const RunRecord*> done;
        if (options.resume) {
            for (const auto& r : *options.resume) {
                done.emplace(job_key(r.algorithm, r.function_id, r.mode, r.config, r.seed_index), &r);
            }
        }
        for (std::size_t i = 0; i < jobs.size(); ++i) {
            const auto& j = jobs[i];
            const auto it = done.find(job_key(j.algorithm, j.function_id, j.mode, j.config, j.seed_index));
            if (it != done.end()) {
                slots[i] = *it->second;
                slots[i]->domain_override = j.domain_override;
            } else {
                pending.push_back(i);
            }
        }
    }

    std::atomic<std::size_t> next{0};
    std::mutex sink;
    std::exception_ptr failure;
    auto worker = [&] {
        for (;;) {
            if (options.cancel && options.cancel->load()) return;
            const std::size_t k = next.fetch_add(1);
            if (k >= pending.size()) return;
            const std::size_t idx = pending[k];
            try {
                RunRecord rec = execute_job(spec, jobs[idx]);
                std::lock_guard lock(sink);
                if (options.on_record) options.on_record(rec);
                slots[idx] = std::move(rec);
            } catch (...) {
                std::lock_guard lock(sink);
                if (!failure) failure = std::current_exception();
                next.store(pending.size());
                return;
            }
        }
    };

    const std::size_t workers = std::max<std::size_t>(1, std::min(spec.parallelism, pending.size()));
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
    }
    if (failure) std::rethrow_exception(failure);

    std::vector<RunRecord> out;
    out.reserve(slots.size());
    for (auto& s : slots) {
        if (s) out.push_back(std::move(*s));
    }
    return out;
}

std::vector<RunRecord> run_dimension_sweep(const ExperimentSpec& spec, const SweepOptions& options) {
    return run_jobs(spec, plan_jobs(spec, SweepMode::Dimension), options);
}

std::vector<RunRecord> run_range_sweep(const ExperimentSpec& spec, const SweepOptions& options) {
    return run_jobs(spec, plan_jobs(spec, SweepMode::Range), options);
}

SuccessRatioTable success_ratio(const std::vector<RunRecord>& records) {
    SuccessRatioTable table;
    std::map<std::tuple<SweepMode, std::string, Algorithm>, std::size_t> group_index;
    std::map<std::tuple<SweepMode, std::string, Algorithm, int>, std::size_t> cell_index;
    for (const auto& r : records) {
        const auto gk = std::make_tuple(r.mode, r.config, r.algorithm);
        auto g = group_index.find(gk);
        if (g == group_index.end()) {
            g = group_index.emplace(gk, table.groups.size()).first;
            table.groups.push_back(SuccessGroup{r.algorithm, r.mode, r.config, 0, 0});
        }
        auto& group = table.groups[g->second];
        ++group.total;
        if (r.success) ++group.successes;

        const auto ck = std::make_tuple(r.mode, r.config, r.algorithm, r.function_id);
        auto c = cell_index.find(ck);
        if (c == cell_index.end()) {
            c = cell_index.emplace(ck, table.cells.size()).first;
            table.cells.push_back(SuccessCell{r.algorithm, r.mode, r.config, r.function_id, 0, 0});
        }
        auto& cell = table.cells[c->second];
        ++cell.runs;
        if (r.success) ++cell.successes;
    }
    return table;
}

PairwiseReport pairwise_bsa_comparison(const std::vector<RunRecord>& records,
                                       const PairwiseOptions& options) {
    PairwiseReport report;

    // (mode, config) in first-appearance order; within it, functions and
    // algorithms likewise.
    struct Cell {
        std::map<Algorithm, std::vector<const RunRecord*>> runs;
    };
    struct Config {
        SweepMode mode;
        std::string config;
        std::vector<int> function_order;
        std::map<int, Cell> cells;
    };
    std::vector<Config> configs;
    std::vector<Algorithm> competitor_order;
    for (const auto& r : records) {
        auto it = std::find_if(configs.begin(), configs.end(), [&](const Config& c) {
            return c.mode == r.mode && c.config == r.config;
        });
        if (it == configs.end()) {
            configs.push_back(Config{r.mode, r.config, {}, {}});
            it = std::prev(configs.end());
        }
        if (!it->cells.count(r.function_id)) it->function_order.push_back(r.function_id);
        it->cells[r.function_id].runs[r.algorithm].push_back(&r);
        if (r.algorithm != Algorithm::BSA &&
            std::find(competitor_order.begin(), competitor_order.end(), r.algorithm) ==
                competitor_order.end()) {
            competitor_order.push_back(r.algorithm);
        }
    }
    std::sort(competitor_order.begin(), competitor_order.end());

    for (auto& cfg : configs) {
        ComparisonTable table;
        table.mode = cfg.mode;
        table.config = cfg.config;
        table.metric = options.metric;
        table.competitors = competitor_order;
        for (int fid : cfg.function_order) {
            auto& cell = cfg.cells[fid];
            const std::string where = to_string(cfg.mode) + "/" + cfg.config + "/F" + std::to_string(fid);
            if (!cell.runs.count(Algorithm::BSA)) {
                report.warnings.push_back(where + ": no BSA records; problem skipped");
                continue;
            }
            // Seed-align every algorithm's runs.
            std::map<Algorithm, std::vector<std::optional<double>>> values;
            bool eligible = true;
            for (auto& [alg, runs] : cell.runs) {
                std::sort(runs.begin(), runs.end(), [](const RunRecord* x, const RunRecord* y) {
                    return x->seed_index < y->seed_index;
                });
                const bool solved = std::any_of(runs.begin(), runs.end(),
                                                [](const RunRecord* x) { return x->success; });
                auto& v = values[alg];
                for (const RunRecord* x : runs) v.push_back(metric_value(*x, options.metric, options.censor));
                const bool defined = std::all_of(v.begin(), v.end(), [](const auto& o) { return o.has_value(); });
                if (!solved || !defined) eligible = false;
            }
            if (!eligible) continue;

            ComparisonRow row;
            row.function_id = fid;
            const auto& bsa_runs = cell.runs[Algorithm::BSA];
            for (Algorithm comp : competitor_order) {
                auto found = cell.runs.find(comp);
                if (found == cell.runs.end()) {
                    report.warnings.push_back(where + ": missing " + to_string(comp) + " records; cell skipped");
                    row.cells.emplace_back();
                    continue;
                }
                const auto& comp_runs = found->second;
                bool aligned = comp_runs.size() == bsa_runs.size();
                for (std::size_t k = 0; aligned && k < bsa_runs.size(); ++k) {
                    aligned = comp_runs[k]->seed_index == bsa_runs[k]->seed_index;
                }
                if (!aligned) {
                    report.warnings.push_back(where + ": " + to_string(comp) +
                                              " runs are not seed-aligned with BSA; cell skipped");
                    row.cells.emplace_back();
                    continue;
                }
                std::vector<double> a, b;
                for (std::size_t k = 0; k < bsa_runs.size(); ++k) {
                    a.push_back(*values[comp][k]);
                    b.push_back(*values[Algorithm::BSA][k]);
                }
                row.cells.push_back(stats::wilcoxon_signed_rank(a, b, options.alpha));
            }
            table.rows.push_back(std::move(row));
        }
        report.tables.push_back(std::move(table));
    }
    return report;
}

}  // namespace bsaopt
