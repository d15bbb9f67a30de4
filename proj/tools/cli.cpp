#include "cli.hpp"

#include "bsaopt/bsa.hpp"
#include "bsaopt/competitors.hpp"
#include "bsaopt/report.hpp"
#include "bsaopt/stats.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <csignal>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <mutex>
#include <set>
#include <sstream>

namespace bsaopt::cli {

namespace {

using nlohmann::json;

std::atomic<bool> g_interrupted{false};

extern "C" void on_sigint(int) { g_interrupted.store(true); }

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    return s;
}

[[noreturn]] void bad_key(const std::string& key, const std::string& what) {
    throw ConfigError("config key '" + key + "': " + what);
}

void check_keys(const json& obj, const std::string& where, const std::set<std::string>& allowed) {
    if (!obj.is_object()) bad_key(where, "expected an object");
    for (const auto& [k, v] : obj.items()) {
        if (!allowed.count(k)) {
            const std::string full = where.empty() ? k : where + "." + k;
            throw ConfigError("unknown config key '" + full + "'");
        }
    }
}

double get_real(const json& j, const std::string& key) {
    if (!j.is_number()) bad_key(key, "expected a number");
    return j.get<double>();
}

std::size_t get_count(const json& j, const std::string& key) {
    if (!j.is_number_integer() || j.get<long long>() < 0) bad_key(key, "expected a non-negative integer");
    return j.get<std::size_t>();
}

bool get_bool(const json& j, const std::string& key) {
    if (!j.is_boolean()) bad_key(key, "expected true or false");
    return j.get<bool>();
}

std::string get_string(const json& j, const std::string& key) {
    if (!j.is_string()) bad_key(key, "expected a string");
    return j.get<std::string>();
}

std::vector<int> function_ids(const std::vector<std::string>& keys) {
    const auto reg = registry();
    std::vector<int> ids;
    for (const auto& k : keys) ids.push_back(find_function(reg, k).id);
    return ids;
}

AmplitudeStrategy parse_amplitude(const json& j) {
    check_keys(j, "bsa.amplitude", {"kind", "scale", "value", "f_min", "f_max"});
    const std::string kind = j.contains("kind") ? get_string(j["kind"], "bsa.amplitude.kind") : "scaled_normal";
    if (kind == "scaled_normal") {
        return AmplitudeStrategy::scaled_normal(j.contains("scale") ? get_real(j["scale"], "bsa.amplitude.scale") : 3.0);
    }
    if (kind == "constant") {
        if (!j.contains("value")) bad_key("bsa.amplitude.value", "required for kind 'constant'");
        return AmplitudeStrategy::constant(get_real(j["value"], "bsa.amplitude.value"));
    }
    if (kind == "linear_schedule") {
        if (!j.contains("f_min") || !j.contains("f_max")) {
            bad_key("bsa.amplitude", "kind 'linear_schedule' needs f_min and f_max");
        }
        return AmplitudeStrategy::linear_schedule(get_real(j["f_min"], "bsa.amplitude.f_min"),
                                                  get_real(j["f_max"], "bsa.amplitude.f_max"));
    }
    bad_key("bsa.amplitude.kind", "unknown kind '" + kind + "'; valid: scaled_normal, constant, linear_schedule");
}

void apply_config(Settings& s, const json& cfg) {
    check_keys(cfg, "",
               {"version", "profile", "algorithms", "functions", "modes", "dims", "ranges", "runs", "iterations",
                "pop_size", "epsilon", "seed", "jobs", "out", "metric", "censor", "alpha", "stop_at_target",
                "timing", "boundary", "bsa", "de", "pso", "abc", "ff"});
    auto& spec = s.spec;
    if (cfg.contains("version") && get_count(cfg["version"], "version") != 1) {
        bad_key("version", "only version 1 is supported");
    }
    if (cfg.contains("algorithms")) {
        const auto& a = cfg["algorithms"];
        if (!a.is_array()) bad_key("algorithms", "expected a list of names");
        spec.algorithms.clear();
        for (const auto& x : a) spec.algorithms.push_back(parse_algorithm(get_string(x, "algorithms")));
    }
    if (cfg.contains("functions")) {
        const auto& f = cfg["functions"];
        if (!f.is_array()) bad_key("functions", "expected a list of ids");
        std::vector<std::string> keys;
        for (const auto& x : f) keys.push_back(x.is_number_integer() ? std::to_string(x.get<int>()) : get_string(x, "functions"));
        spec.functions = function_ids(keys);
    }
    if (cfg.contains("modes")) {
        const auto& m = cfg["modes"];
        if (!m.is_array()) bad_key("modes", "expected a list");
        spec.modes.clear();
        for (const auto& x : m) spec.modes.push_back(parse_sweep_mode(get_string(x, "modes")));
    }
    if (cfg.contains("dims")) {
        const auto& d = cfg["dims"];
        if (!d.is_array()) bad_key("dims", "expected a list of integers");
        spec.dims.clear();
        for (const auto& x : d) spec.dims.push_back(get_count(x, "dims"));
    }
    if (cfg.contains("ranges")) {
        const auto& r = cfg["ranges"];
        if (!r.is_array()) bad_key("ranges", "expected a list of [low, up] pairs");
        spec.ranges.clear();
        for (const auto& x : r) {
            if (!x.is_array() || x.size() != 2) bad_key("ranges", "each entry must be [low, up]");
            spec.ranges.emplace_back(get_real(x[0], "ranges"), get_real(x[1], "ranges"));
        }
    }
    if (cfg.contains("runs")) spec.runs = get_count(cfg["runs"], "runs");
    if (cfg.contains("iterations")) spec.iterations = get_count(cfg["iterations"], "iterations");
    if (cfg.contains("pop_size")) spec.pop_size = get_count(cfg["pop_size"], "pop_size");
    if (cfg.contains("epsilon")) spec.success_epsilon = get_real(cfg["epsilon"], "epsilon");
    if (cfg.contains("seed")) spec.master_seed = get_count(cfg["seed"], "seed");
    if (cfg.contains("jobs")) spec.parallelism = get_count(cfg["jobs"], "jobs");
    if (cfg.contains("out")) s.out_dir = get_string(cfg["out"], "out");
    if (cfg.contains("metric")) spec.metric = parse_metric(get_string(cfg["metric"], "metric"));
    if (cfg.contains("censor")) spec.censor = get_bool(cfg["censor"], "censor");
    if (cfg.contains("alpha")) s.alpha = get_real(cfg["alpha"], "alpha");
    if (cfg.contains("stop_at_target")) spec.stop_at_target = get_bool(cfg["stop_at_target"], "stop_at_target");
    if (cfg.contains("timing")) spec.record_timing = get_bool(cfg["timing"], "timing");
    if (cfg.contains("boundary")) {
        const auto b = get_string(cfg["boundary"], "boundary");
        if (b == "regenerate") {
            spec.boundary = BoundaryMode::Regenerate;
        } else if (b == "clip") {
            spec.boundary = BoundaryMode::Clip;
        } else {
            bad_key("boundary", "expected 'regenerate' or 'clip'");
        }
    }
    if (cfg.contains("bsa")) {
        const auto& b = cfg["bsa"];
        check_keys(b, "bsa", {"amplitude", "mix_rate", "crossover"});
        if (b.contains("amplitude")) spec.bsa.amplitude = parse_amplitude(b["amplitude"]);
        if (b.contains("mix_rate")) spec.bsa.mix_rate = get_real(b["mix_rate"], "bsa.mix_rate");
        if (b.contains("crossover")) {
            const auto c = get_string(b["crossover"], "bsa.crossover");
            if (c == "dual") {
                spec.bsa.crossover_mode = CrossoverMode::DualStrategy;
            } else if (c == "mixrate") {
                spec.bsa.crossover_mode = CrossoverMode::MixrateOnly;
            } else {
                bad_key("bsa.crossover", "expected 'dual' or 'mixrate'");
            }
        }
    }
    if (cfg.contains("de")) {
        const auto& d = cfg["de"];
        check_keys(d, "de", {"f_weight", "crossover_rate"});
        if (d.contains("f_weight")) spec.de.f_weight = get_real(d["f_weight"], "de.f_weight");
        if (d.contains("crossover_rate")) spec.de.crossover_rate = get_real(d["crossover_rate"], "de.crossover_rate");
    }
    if (cfg.contains("pso")) {
        const auto& p = cfg["pso"];
        check_keys(p, "pso", {"inertia", "cognitive", "social", "velocity_clamp_fraction"});
        if (p.contains("inertia")) spec.pso.inertia = get_real(p["inertia"], "pso.inertia");
        if (p.contains("cognitive")) spec.pso.cognitive = get_real(p["cognitive"], "pso.cognitive");
        if (p.contains("social")) spec.pso.social = get_real(p["social"], "pso.social");
        if (p.contains("velocity_clamp_fraction")) {
            spec.pso.velocity_clamp_fraction = get_real(p["velocity_clamp_fraction"], "pso.velocity_clamp_fraction");
        }
    }
    if (cfg.contains("abc")) {
        const auto& a = cfg["abc"];
        check_keys(a, "abc", {"trial_limit"});
        if (a.contains("trial_limit")) spec.abc.trial_limit = get_real(a["trial_limit"], "abc.trial_limit");
    }
    if (cfg.contains("ff")) {
        const auto& f = cfg["ff"];
        check_keys(f, "ff", {"beta0", "gamma", "alpha", "alpha_decay"});
        if (f.contains("beta0")) spec.ff.beta0 = get_real(f["beta0"], "ff.beta0");
        if (f.contains("gamma")) spec.ff.gamma = get_real(f["gamma"], "ff.gamma");
        if (f.contains("alpha")) spec.ff.alpha = get_real(f["alpha"], "ff.alpha");
        if (f.contains("alpha_decay")) spec.ff.alpha_decay = get_real(f["alpha_decay"], "ff.alpha_decay");
    }
}

std::optional<std::string> read_manifest_hash(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) return std::nullopt;
    try {
        const auto j = json::parse(in);
        if (j.contains("spec_hash") && j["spec_hash"].is_string()) return j["spec_hash"].get<std::string>();
    } catch (const json::exception&) {
    }
    return std::nullopt;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << text;
    if (!out.flush()) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace

Profile parse_profile(const std::string& s) {
    const auto p = lower(s);
    if (p == "paper") return Profile::Paper;
    if (p == "smoke") return Profile::Smoke;
    throw ConfigError("unknown profile '" + s + "'; valid: paper, smoke");
}

ExperimentSpec profile_spec(Profile p) {
    ExperimentSpec spec;
    spec.pop_size = 30;
    if (p == Profile::Paper) {
        spec.runs = 30;
        spec.iterations = 2000;
    } else {
        spec.runs = 10;
        spec.iterations = 500;
    }
    return spec;
}

Settings resolve_settings(const std::optional<std::string>& config_text, const Overrides& cli) {
    json cfg = json::object();
    if (config_text) {
        try {
            cfg = json::parse(*config_text);
        } catch (const json::parse_error& e) {
            throw ConfigError(std::string("config is not valid JSON: ") + e.what());
        }
        if (!cfg.is_object()) throw ConfigError("config must be a JSON object");
    }

    Profile profile = Profile::Paper;
    if (cli.profile) {
        profile = *cli.profile;
    } else if (cfg.contains("profile")) {
        profile = parse_profile(get_string(cfg["profile"], "profile"));
    }
    Settings s;
    s.spec = profile_spec(profile);
    apply_config(s, cfg);

    auto& spec = s.spec;
    if (cli.seed) spec.master_seed = *cli.seed;
    if (cli.runs) spec.runs = *cli.runs;
    if (cli.iterations) spec.iterations = *cli.iterations;
    if (cli.pop_size) spec.pop_size = *cli.pop_size;
    if (cli.epsilon) spec.success_epsilon = *cli.epsilon;
    if (cli.jobs) spec.parallelism = *cli.jobs;
    if (cli.out) s.out_dir = *cli.out;
    if (cli.metric) spec.metric = parse_metric(*cli.metric);
    if (cli.timing) spec.record_timing = *cli.timing;
    if (!cli.algorithms.empty()) {
        spec.algorithms.clear();
        for (const auto& a : cli.algorithms) spec.algorithms.push_back(parse_algorithm(a));
    }
    if (!cli.functions.empty()) spec.functions = function_ids(cli.functions);
    if (!cli.modes.empty()) {
        spec.modes.clear();
        for (const auto& m : cli.modes) spec.modes.push_back(parse_sweep_mode(m));
    }

    if (spec.metric == Metric::TimeToTarget) spec.record_timing = true;
    if (!(s.alpha > 0.0 && s.alpha < 1.0)) throw ConfigError("alpha must lie in (0, 1)");
    spec.validate();
    return s;
}

int cmd_run(const Settings& settings, std::ostream& out, std::ostream& err) {
    const auto& spec = settings.spec;
    const auto& dir = settings.out_dir;
    const auto records_path = dir / "records.csv";
    const auto manifest_path = dir / "manifest.json";

    std::vector<RunRecord> previous;
    try {
        std::filesystem::create_directories(dir);
        const auto old_hash = read_manifest_hash(manifest_path);
        if (old_hash && *old_hash == spec.hash() && std::filesystem::exists(records_path)) {
            std::ifstream in(records_path);
            try {
                previous = read_records_csv(in);
                out << "resuming: " << previous.size() << " completed runs found in " << records_path.string()
                    << "\n";
            } catch (const std::runtime_error& e) {
                err << "warning: ignoring unreadable " << records_path.string() << ": " << e.what() << "\n";
                previous.clear();
            }
        } else if (old_hash) {
            err << "warning: " << manifest_path.string() << " belongs to a different spec; starting afresh\n";
        }
        write_text(manifest_path, render_manifest(spec));
        if (previous.empty()) {
            write_text(records_path, records_csv_header() + "\n");
        } else {
            std::ostringstream csv;
            write_records_csv(csv, previous);
            write_text(records_path, csv.str());
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitIo;
    }

    std::ofstream sink(records_path, std::ios::binary | std::ios::app);
    if (!sink) {
        err << "error: cannot append to " << records_path.string() << "\n";
        return kExitIo;
    }
    bool sink_failed = false;
    SweepOptions opts;
    opts.resume = &previous;
    opts.cancel = &g_interrupted;
    opts.on_record = [&](const RunRecord& r) {
        sink << to_csv_row(r) << '\n';
        sink.flush();
        if (!sink) sink_failed = true;
    };

    g_interrupted.store(false);
    const auto old_handler = std::signal(SIGINT, on_sigint);
    std::vector<RunRecord> records;
    try {
        for (SweepMode m : spec.modes) {
            out << "running " << to_string(m) << " sweep (" << plan_jobs(spec, m).size() << " runs, "
                << spec.parallelism << " workers)\n";
            auto part = m == SweepMode::Dimension ? run_dimension_sweep(spec, opts) : run_range_sweep(spec, opts);
            records.insert(records.end(), part.begin(), part.end());
            if (g_interrupted.load()) break;
        }
    } catch (...) {
        std::signal(SIGINT, old_handler);
        throw;
    }
    std::signal(SIGINT, old_handler);
    sink.close();
    if (sink_failed) {
        err << "error: failed writing " << records_path.string() << "\n";
        return kExitIo;
    }
    if (g_interrupted.load()) {
        err << "interrupted: completed runs are saved in " << records_path.string()
            << "; rerun the same command to resume\n";
        return kExitInterrupted;
    }

    PairwiseOptions po;
    po.alpha = settings.alpha;
    po.metric = spec.metric;
    po.censor = spec.censor;
    const auto pairwise = pairwise_bsa_comparison(records, po);
    try {
        write_reports(dir, spec, records, pairwise);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitIo;
    }
    for (const auto& w : pairwise.warnings) err << "warning: " << w << "\n";
    out << render_summary(pairwise);
    out << "wrote " << records.size() << " records to " << dir.string() << "\n";
    return kExitOk;
}

int cmd_solve(const SolveOptions& opts, std::ostream& out, std::ostream& err) {
    const auto reg = registry();
    const Algorithm alg = parse_algorithm(opts.algorithm);
    const auto& fn = find_function(reg, opts.function);
    const std::size_t dims = opts.dim ? *opts.dim : fn.dimension_for(2);
    fn.check_dims(dims);
    const auto space = fn.default_space(dims);
    const ObjectiveFormula formula = fn.formula;
    const Objective objective = [formula](std::span<const double> x) { return formula(x); };
    const Target target{fn.global_min_value(dims), opts.epsilon, false};

    RandomSource rng(opts.seed);
    RunResult r;
    if (alg == Algorithm::BSA) {
        BsaConfig cfg;
        cfg.pop_size = opts.pop_size;
        cfg.max_iterations = opts.iterations;
        cfg.target = target;
        cfg.record_trace = true;
        r = bsa_minimize(objective, space, cfg, rng);
    } else {
        CompetitorConfig cfg;
        cfg.algorithm = alg;
        cfg.pop_size = opts.pop_size;
        cfg.max_iterations = opts.iterations;
        cfg.target = target;
        cfg.record_trace = true;
        r = competitor_minimize(objective, space, cfg, rng);
    }

    const auto g = [](double v) { return format_double(v); };
    out << "algorithm:       " << to_string(alg) << "\n";
    out << "function:        " << fn.code() << " " << fn.name << " (D=" << dims << ")\n";
    out << "seed:            " << opts.seed << "\n";
    if (!r.trace.empty()) out << "initial best:    " << g(r.trace.front().best_fitness) << "\n";
    out << "best value:      " << g(r.best_value) << "\n";
    out << "global minimum:  " << g(target.value) << "\n";
    out << "success:         " << (target.reached(r.best_value) ? "yes" : "no") << "\n";
    out << "evaluations:     " << r.evaluations << "\n";
    out << "evals to target: " << (r.evals_to_target ? std::to_string(*r.evals_to_target) : "-") << "\n";
    out << "wall time (s):   " << g(r.wall_time_s) << "\n";
    out << "best point:     ";
    for (double x : r.best_coords) out << ' ' << g(x);
    out << "\n";

    if (opts.trace) {
        std::ostringstream t;
        t << "iteration,best_fitness,amplitude\n";
        for (const auto& row : r.trace) {
            t << row.iteration << ',' << g(row.best_fitness) << ',' << g(row.amplitude) << '\n';
        }
        try {
            write_text(*opts.trace, t.str());
        } catch (const std::exception& e) {
            err << "error: " << e.what() << "\n";
            return kExitIo;
        }
        out << "trace:           " << opts.trace->string() << " (" << r.trace.size() << " rows)\n";
    }
    return kExitOk;
}

int cmd_validate(const std::vector<ObjectiveFunction>& reg, std::ostream& out, std::ostream& err) {
    std::size_t failures = 0;
    std::size_t passed = 0;
    RandomSource rng(20240601);

    for (const auto& f : reg) {
        std::vector<std::string> problems;
        std::vector<std::size_t> dims{2};
        if (f.scalable) dims.push_back(10);
        for (std::size_t d : dims) {
            const double fstar = f.global_min_value(d);
            for (const auto& x : f.global_min_points(d)) {
                const double v = f.formula(x);
                if (!(std::abs(v - fstar) <= f.min_tolerance)) {
                    problems.push_back("f(x*) = " + format_double(v) + " but registered minimum is " +
                                       format_double(fstar) + " at D=" + std::to_string(d));
                }
            }
            const auto space = f.default_space(d);
            std::vector<double> x(d);
            for (int k = 0; k < 20000; ++k) {
                for (std::size_t j = 0; j < d; ++j) x[j] = rng.uniform(space.low(j), space.up(j));
                const double v = f.formula(x);
                if (v < fstar - f.min_tolerance) {
                    problems.push_back("sample undercuts the minimum at D=" + std::to_string(d) + ": " +
                                       format_double(v));
                    break;
                }
            }
        }
        if (std::abs(f.global_min_value(2) - f.published_min) > 1e-3 * std::max(1.0, std::abs(f.published_min)) &&
            !f.min_scales_with_dim) {
            problems.push_back("registered minimum differs from the published value " + format_double(f.published_min));
        }
        if (problems.empty()) {
            ++passed;
            out << "ok    " << f.code() << " " << f.name << "\n";
        } else {
            ++failures;
            for (const auto& p : problems) err << "FAIL  " << f.code() << " " << f.name << ": " << p << "\n";
        }
    }
    out << passed << "/" << reg.size() << " functions validated\n";

    // Exact p-values against full sign enumeration.
    bool wilcoxon_ok = true;
    for (std::size_t n = 1; n <= 12 && wilcoxon_ok; ++n) {
        const std::size_t patterns = std::size_t{1} << n;
        std::vector<std::uint64_t> sum_count(n * (n + 1) / 2 + 1, 0);
        for (std::size_t m = 0; m < patterns; ++m) {
            std::size_t s = 0;
            for (std::size_t r = 1; r <= n; ++r) {
                if (m >> (r - 1) & 1U) s += r;
            }
            ++sum_count[s];
        }
        for (std::size_t m = 0; m < patterns && wilcoxon_ok; ++m) {
            std::vector<double> a(n), b(n, 0.0);
            std::size_t rp = 0;
            for (std::size_t r = 1; r <= n; ++r) {
                const bool pos = m >> (r - 1) & 1U;
                a[r - 1] = pos ? static_cast<double>(r) : -static_cast<double>(r);
                if (pos) rp += r;
            }
            const std::size_t stat = std::min(rp, n * (n + 1) / 2 - rp);
            std::uint64_t tail = 0;
            for (std::size_t s = 0; s <= stat; ++s) tail += sum_count[s];
            const double brute = std::min(1.0, static_cast<double>(2 * tail) / static_cast<double>(patterns));
            const auto w = stats::wilcoxon_signed_rank(a, b);
            if (w.p_value != brute || w.method != stats::WilcoxonMethod::Exact) {
                err << "FAIL  wilcoxon n=" << n << " pattern " << m << ": p " << format_double(w.p_value)
                    << " vs enumeration " << format_double(brute) << "\n";
                wilcoxon_ok = false;
            }
        }
    }
    if (wilcoxon_ok) {
        out << "ok    wilcoxon exact p matches enumeration for n = 1..12\n";
    } else {
        ++failures;
    }

    // Same seed, same result; worker count does not matter.
    ExperimentSpec probe;
    probe.algorithms = {Algorithm::BSA, Algorithm::DE, Algorithm::PSO};
    probe.functions = {1, 14};
    probe.modes = {SweepMode::Dimension};
    probe.dims = {5};
    probe.runs = 3;
    probe.iterations = 40;
    probe.master_seed = 7;
    const auto serial = run_dimension_sweep(probe);
    const auto serial_again = run_dimension_sweep(probe);
    probe.parallelism = 4;
    const auto parallel = run_dimension_sweep(probe);
    if (serial == serial_again && serial == parallel) {
        out << "ok    determinism: repeated and 4-worker sweeps are identical\n";
    } else {
        err << "FAIL  determinism: sweeps differ between repetitions or worker counts\n";
        ++failures;
    }

    if (failures) {
        err << failures << " validation check(s) failed\n";
        return kExitValidation;
    }
    out << "all validation checks passed\n";
    return kExitOk;
}

int cmd_list_functions(bool as_json, std::ostream& out) {
    const auto reg = registry();
    if (as_json) {
        out << registry_json(reg) << "\n";
        return kExitOk;
    }
    out << std::left << std::setw(5) << "id" << std::setw(16) << "name" << std::setw(22) << "default box"
        << std::setw(10) << "dims" << std::setw(28) << "global min" << "success %\n";
    for (const auto& f : reg) {
        std::ostringstream box;
        box << "[" << std::setprecision(6) << f.low << ", " << f.up << "]";
        out << std::setw(5) << f.code() << std::setw(16) << f.name << std::setw(22) << box.str() << std::setw(10)
            << (f.scalable ? "any" : "2")
            << std::setw(28) << (format_double(f.global_min) + (f.min_scales_with_dim ? " x D" : ""))
            << format_double(f.hardness_pct) << "\n";
    }
    return kExitOk;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"bsaopt: backtracking search optimisation and benchmark harness"};
    app.require_subcommand(1);

    std::optional<std::string> config_path;
    std::string profile, metric, out_dir;
    std::uint64_t seed = 0;
    std::size_t runs = 0, iterations = 0, pop_size = 0, jobs = 0;
    double epsilon = 0.0;
    bool timing = false;
    Overrides ov;

    auto* run_cmd = app.add_subcommand("run", "Run the configured sweeps and write reports");
    std::string config_file;
    auto* o_config = run_cmd->add_option("--config", config_file, "JSON experiment config");
    auto* o_profile = run_cmd->add_option("--profile", profile, "paper | smoke");
    auto* o_seed = run_cmd->add_option("--seed", seed, "Master seed");
    auto* o_runs = run_cmd->add_option("--runs", runs, "Runs per cell");
    auto* o_iters = run_cmd->add_option("--iterations", iterations, "Iterations per run");
    auto* o_pop = run_cmd->add_option("--pop-size", pop_size, "Population size");
    auto* o_eps = run_cmd->add_option("--epsilon", epsilon, "Success tolerance");
    auto* o_jobs = run_cmd->add_option("--jobs", jobs, "Worker threads");
    auto* o_out = run_cmd->add_option("--out", out_dir, "Output directory");
    auto* o_metric = run_cmd->add_option("--metric", metric, "best | evals | time");
    auto* o_timing = run_cmd->add_flag("--timing", timing, "Record wall-clock times");
    run_cmd->add_option("--algorithms", ov.algorithms, "Subset of BSA,DE,PSO,ABC,FF")->delimiter(',');
    run_cmd->add_option("--functions", ov.functions, "Subset of F1..F16")->delimiter(',');
    run_cmd->add_option("--modes", ov.modes, "dimension,range")->delimiter(',');

    SolveOptions so;
    auto* solve_cmd = app.add_subcommand("solve", "Single run of one algorithm on one function");
    solve_cmd->add_option("algorithm", so.algorithm, "BSA, DE, PSO, ABC or FF")->required();
    solve_cmd->add_option("function", so.function, "F1..F16 or name")->required();
    std::size_t dim = 0;
    auto* o_dim = solve_cmd->add_option("--dim", dim, "Dimension (2 for fixed functions)");
    solve_cmd->add_option("--seed", so.seed, "Seed");
    solve_cmd->add_option("--iterations", so.iterations, "Iterations");
    solve_cmd->add_option("--pop-size", so.pop_size, "Population size");
    solve_cmd->add_option("--epsilon", so.epsilon, "Success tolerance");
    std::string trace_path;
    auto* o_trace = solve_cmd->add_option("--trace", trace_path, "Write the per-iteration trace as CSV");

    auto* validate_cmd = app.add_subcommand("validate", "Self-checks: minima, Wilcoxon, determinism");

    bool as_json = false;
    auto* list_cmd = app.add_subcommand("list-functions", "Print the benchmark registry");
    list_cmd->add_flag("--json", as_json, "JSON output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (*run_cmd) {
            if (*o_config) config_path = config_file;
            if (*o_profile) ov.profile = parse_profile(profile);
            if (*o_seed) ov.seed = seed;
            if (*o_runs) ov.runs = runs;
            if (*o_iters) ov.iterations = iterations;
            if (*o_pop) ov.pop_size = pop_size;
            if (*o_eps) ov.epsilon = epsilon;
            if (*o_jobs) ov.jobs = jobs;
            if (*o_out) ov.out = out_dir;
            if (*o_metric) ov.metric = metric;
            if (*o_timing) ov.timing = timing;
            std::optional<std::string> text;
            if (config_path) {
                std::ifstream in(*config_path);
                if (!in) {
                    err << "error: cannot read config " << *config_path << "\n";
                    return kExitIo;
                }
                std::ostringstream buf;
                buf << in.rdbuf();
                text = buf.str();
            }
            return cmd_run(resolve_settings(text, ov), out, err);
        }
        if (*solve_cmd) {
            if (*o_dim) so.dim = dim;
            if (*o_trace) so.trace = trace_path;
            return cmd_solve(so, out, err);
        }
        if (*validate_cmd) return cmd_validate(registry(), out, err);
        if (*list_cmd) return cmd_list_functions(as_json, out);
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitIo;
    }
    return kExitConfig;
}

}  // namespace bsaopt::cli
