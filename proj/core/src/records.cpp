#include "bsaopt/records.hpp"

#include <json.hpp>

#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace bsaopt {

std::string to_string(SweepMode m) { return m == SweepMode::Dimension ? "dimension" : "range"; }

SweepMode parse_sweep_mode(const std::string& s) {
    if (s == "dimension" || s == "dimension-sweep") return SweepMode::Dimension;
    if (s == "range" || s == "range-sweep") return SweepMode::Range;
    throw ConfigError("unknown sweep mode '" + s + "'; valid: dimension, range");
}

std::string to_string(Metric m) {
    switch (m) {
    case Metric::FinalBest: return "best";
    case Metric::EvalsToTarget: return "evals";
    case Metric::TimeToTarget: return "time";
    }
    return "?";
}

Metric parse_metric(const std::string& s) {
    if (s == "best" || s == "final_best_value") return Metric::FinalBest;
    if (s == "evals" || s == "evals_to_target") return Metric::EvalsToTarget;
    if (s == "time" || s == "time_to_target") return Metric::TimeToTarget;
    throw ConfigError("unknown metric '" + s + "'; valid: best, evals, time");
}

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

double parse_double(const std::string& s) {
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
        throw std::runtime_error("not a number: '" + s + "'");
    }
    return v;
}

namespace {

std::size_t parse_size(const std::string& s) {
    std::size_t v = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
        throw std::runtime_error("not an integer: '" + s + "'");
    }
    return v;
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

int parse_function_code(const std::string& s) {
    if (s.size() < 2 || s[0] != 'F') throw std::runtime_error("bad function id '" + s + "'");
    return static_cast<int>(parse_size(s.substr(1)));
}

}  // namespace

std::string records_csv_header() {
    return "algorithm,function,mode,config,seed,best_value,evaluations,evals_to_target,"
           "wall_time_s,success,time_to_target_s";
}

std::string to_csv_row(const RunRecord& r) {
    std::string s;
    s += to_string(r.algorithm) + ',';
    s += "F" + std::to_string(r.function_id) + ',';
    s += to_string(r.mode) + ',';
    s += r.config + ',';
    s += std::to_string(r.seed_index) + ',';
    s += format_double(r.best_value) + ',';
    s += std::to_string(r.evaluations) + ',';
    s += (r.evals_to_target ? std::to_string(*r.evals_to_target) : std::string()) + ',';
    s += (r.wall_time_s ? format_double(*r.wall_time_s) : std::string()) + ',';
    s += (r.success ? "1" : "0");
    s += ',';
    s += r.time_to_target_s ? format_double(*r.time_to_target_s) : std::string();
    return s;
}

void write_records_csv(std::ostream& out, const std::vector<RunRecord>& records) {
    out << records_csv_header() << '\n';
    for (const auto& r : records) out << to_csv_row(r) << '\n';
}

std::vector<RunRecord> read_records_csv(std::istream& in) {
    std::vector<RunRecord> out;
    std::string line;
    if (!std::getline(in, line)) return out;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != records_csv_header()) throw std::runtime_error("unexpected records.csv header");
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const auto f = split(line, ',');
        if (f.size() != 11) {
            throw std::runtime_error("records.csv line " + std::to_string(lineno) + ": expected 11 fields");
        }
        try {
            RunRecord r;
            r.algorithm = parse_algorithm(f[0]);
            r.function_id = parse_function_code(f[1]);
            r.mode = parse_sweep_mode(f[2]);
            r.config = f[3];
            r.seed_index = parse_size(f[4]);
            r.best_value = parse_double(f[5]);
            r.evaluations = parse_size(f[6]);
            if (!f[7].empty()) r.evals_to_target = parse_size(f[7]);
            if (!f[8].empty()) r.wall_time_s = parse_double(f[8]);
            r.success = f[9] == "1";
            if (!f[10].empty()) r.time_to_target_s = parse_double(f[10]);
            out.push_back(std::move(r));
        } catch (const std::exception& e) {
            throw std::runtime_error("records.csv line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    return out;
}

std::string to_json_line(const RunRecord& r) {
    nlohmann::json j;
    j["algorithm"] = to_string(r.algorithm);
    j["function"] = "F" + std::to_string(r.function_id);
    j["mode"] = to_string(r.mode);
    j["config"] = r.config;
    j["seed"] = r.seed_index;
    // Non-finite values are not valid JSON numbers; store them as strings.
    j["best_value"] = std::isfinite(r.best_value) ? nlohmann::json(r.best_value)
                                                  : nlohmann::json(format_double(r.best_value));
    j["evaluations"] = r.evaluations;
    j["evals_to_target"] = r.evals_to_target ? nlohmann::json(*r.evals_to_target) : nlohmann::json();
    j["wall_time_s"] = r.wall_time_s ? nlohmann::json(*r.wall_time_s) : nlohmann::json();
    j["success"] = r.success;
    j["time_to_target_s"] = r.time_to_target_s ? nlohmann::json(*r.time_to_target_s) : nlohmann::json();
    j["domain_override"] = r.domain_override;
    return j.dump();
}

RunRecord from_json_line(const std::string& line) {
    const auto j = nlohmann::json::parse(line);
    RunRecord r;
    r.algorithm = parse_algorithm(j.at("algorithm").get<std::string>());
    r.function_id = parse_function_code(j.at("function").get<std::string>());
    r.mode = parse_sweep_mode(j.at("mode").get<std::string>());
    r.config = j.at("config").get<std::string>();
    r.seed_index = j.at("seed").get<std::size_t>();
    const auto& bv = j.at("best_value");
    r.best_value = bv.is_string() ? parse_double(bv.get<std::string>()) : bv.get<double>();
    r.evaluations = j.at("evaluations").get<std::size_t>();
    if (!j.at("evals_to_target").is_null()) r.evals_to_target = j["evals_to_target"].get<std::size_t>();
    if (!j.at("wall_time_s").is_null()) r.wall_time_s = j["wall_time_s"].get<double>();
    r.success = j.at("success").get<bool>();
    if (!j.at("time_to_target_s").is_null()) r.time_to_target_s = j["time_to_target_s"].get<double>();
    r.domain_override = j.value("domain_override", false);
    return r;
}

std::optional<double> metric_value(const RunRecord& r, Metric metric, bool censor,
                                   std::size_t budget_evals) {
    switch (metric) {
    case Metric::FinalBest:
        return r.best_value;
    case Metric::EvalsToTarget:
        if (r.evals_to_target) return static_cast<double>(*r.evals_to_target);
        if (censor) return static_cast<double>(budget_evals ? budget_evals : r.evaluations);
        return std::nullopt;
    case Metric::TimeToTarget:
        if (r.time_to_target_s) return *r.time_to_target_s;
        if (censor && r.wall_time_s) return *r.wall_time_s;
        return std::nullopt;
    }
    return std::nullopt;
}

std::vector<stats::VerdictSummary> ComparisonTable::footer() const {
    std::vector<stats::VerdictSummary> out(competitors.size());
    for (const auto& row : rows) {
        for (std::size_t c = 0; c < competitors.size() && c < row.cells.size(); ++c) {
            if (!row.cells[c]) continue;
            switch (row.cells[c]->verdict) {
            case stats::Verdict::Plus: ++out[c].plus; break;
            case stats::Verdict::Equal: ++out[c].equal; break;
            case stats::Verdict::Minus: ++out[c].minus; break;
            }
        }
    }
    return out;
}

}  // namespace bsaopt
