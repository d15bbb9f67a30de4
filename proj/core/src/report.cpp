#include "bsaopt/report.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <tuple>

#ifndef BSAOPT_VERSION
#define BSAOPT_VERSION "unknown"
#endif

namespace bsaopt {

namespace {

std::string fn_code(int id) { return "F" + std::to_string(id); }

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

void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << text;
    out.flush();
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

std::string opt_double(const std::optional<double>& v) { return v ? format_double(*v) : std::string(); }

}  // namespace

std::string format_p_value(double p) {
    if (p < 1e-4) return "<0.0001";
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4f", p);
    return buf;
}

std::string render_comparison(const ComparisonTable& table, Format format) {
    const auto footer = table.footer();
    std::ostringstream os;
    if (format == Format::Markdown) {
        os << "### BSA vs competitors: " << to_string(table.mode) << " sweep, " << table.config
           << " (metric: " << to_string(table.metric) << ")\n\n";
        os << "| Function |";
        for (Algorithm a : table.competitors) {
            const auto n = to_string(a);
            os << ' ' << n << " p-value | " << n << " R+ | " << n << " R- | " << n << " Win |";
        }
        os << "\n|---|";
        for (std::size_t c = 0; c < table.competitors.size(); ++c) os << "---:|---:|---:|:---:|";
        os << '\n';
        for (const auto& row : table.rows) {
            os << "| " << fn_code(row.function_id) << " |";
            for (std::size_t c = 0; c < table.competitors.size(); ++c) {
                if (c < row.cells.size() && row.cells[c]) {
                    const auto& w = *row.cells[c];
                    os << ' ' << format_p_value(w.p_value) << " | " << format_double(w.r_plus) << " | "
                       << format_double(w.r_minus) << " | " << stats::symbol(w.verdict) << " |";
                } else {
                    os << " n/a | | | |";
                }
            }
            os << '\n';
        }
        os << "| +/=/- |";
        if (table.competitors.empty()) {
            os << " 0/0/0 |";
        } else {
            for (const auto& s : footer) os << ' ' << s.str() << " | | | |";
        }
        os << '\n';
        return os.str();
    }
    if (format == Format::Csv) {
        os << "mode,config,metric,function,competitor,p_value,r_plus,r_minus,win,n_effective,method\n";
        const std::string prefix = to_string(table.mode) + ',' + table.config + ',' + to_string(table.metric) + ',';
        for (const auto& row : table.rows) {
            for (std::size_t c = 0; c < table.competitors.size(); ++c) {
                if (c >= row.cells.size() || !row.cells[c]) continue;
                const auto& w = *row.cells[c];
                os << prefix << fn_code(row.function_id) << ',' << to_string(table.competitors[c]) << ','
                   << (w.p_value < 1e-4 ? format_p_value(w.p_value) : format_double(w.p_value)) << ','
                   << format_double(w.r_plus) << ',' << format_double(w.r_minus) << ','
                   << stats::symbol(w.verdict) << ',' << w.n_effective << ',' << stats::to_string(w.method)
                   << '\n';
            }
        }
        if (table.competitors.empty()) {
            os << prefix << "+/=/-,,,,,0/0/0,,\n";
        } else {
            for (std::size_t c = 0; c < table.competitors.size(); ++c) {
                os << prefix << "+/=/-," << to_string(table.competitors[c]) << ",,,," << footer[c].str() << ",,\n";
            }
        }
        return os.str();
    }
    throw std::invalid_argument("render_comparison: markdown or csv only");
}

ComparisonTable parse_comparison_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("comparison csv: empty input");
    ComparisonTable t;
    std::map<int, std::size_t> row_of;
    bool first = true;
    auto column_of = [&](Algorithm a) {
        const auto it = std::find(t.competitors.begin(), t.competitors.end(), a);
        if (it != t.competitors.end()) return static_cast<std::size_t>(it - t.competitors.begin());
        t.competitors.push_back(a);
        for (auto& r : t.rows) r.cells.resize(t.competitors.size());
        return t.competitors.size() - 1;
    };
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto f = split(line, ',');
        if (f.size() != 11) throw std::runtime_error("comparison csv: expected 11 fields");
        if (first) {
            t.mode = parse_sweep_mode(f[0]);
            t.config = f[1];
            t.metric = parse_metric(f[2]);
            first = false;
        }
        if (f[3] == "+/=/-") {
            if (!f[4].empty()) column_of(parse_algorithm(f[4]));
            continue;
        }
        const int id = std::stoi(f[3].substr(1));
        const std::size_t col = column_of(parse_algorithm(f[4]));
        auto it = row_of.find(id);
        if (it == row_of.end()) {
            it = row_of.emplace(id, t.rows.size()).first;
            t.rows.push_back(ComparisonRow{id, {}});
        }
        auto& row = t.rows[it->second];
        row.cells.resize(t.competitors.size());
        stats::WilcoxonResult w;
        w.p_value = f[5] == "<0.0001" ? 0.0 : parse_double(f[5]);
        w.r_plus = parse_double(f[6]);
        w.r_minus = parse_double(f[7]);
        w.verdict = f[8] == "+" ? stats::Verdict::Plus : f[8] == "-" ? stats::Verdict::Minus : stats::Verdict::Equal;
        w.n_effective = static_cast<std::size_t>(std::stoul(f[9]));
        w.method = f[10] == "exact" ? stats::WilcoxonMethod::Exact : stats::WilcoxonMethod::NormalApprox;
        row.cells[col] = w;
    }
    return t;
}

std::string render_success_ratio(const SuccessRatioTable& table, Format format) {
    if (format == Format::Csv) {
        std::ostringstream os;
        os << "algorithm,config,function,success_ratio,failure_ratio\n";
        for (const auto& c : table.cells) {
            const double s = c.ratio();
            os << to_string(c.algorithm) << ',' << c.config << ',' << fn_code(c.function_id) << ','
               << format_double(s) << ',' << format_double(1.0 - s) << '\n';
        }
        return os.str();
    }
    if (format == Format::Json) {
        nlohmann::json j;
        auto& rows = j["rows"] = nlohmann::json::array();
        for (const auto& c : table.cells) {
            const double s = c.ratio();
            rows.push_back({{"algorithm", to_string(c.algorithm)},
                            {"mode", to_string(c.mode)},
                            {"config", c.config},
                            {"function", fn_code(c.function_id)},
                            {"successes", c.successes},
                            {"runs", c.runs},
                            {"success_ratio", s},
                            {"failure_ratio", 1.0 - s}});
        }
        auto& groups = j["groups"] = nlohmann::json::array();
        for (const auto& g : table.groups) {
            const double s = g.ratio();
            groups.push_back({{"algorithm", to_string(g.algorithm)},
                              {"mode", to_string(g.mode)},
                              {"config", g.config},
                              {"successes", g.successes},
                              {"total", g.total},
                              {"success_ratio", s},
                              {"failure_ratio", 1.0 - s}});
        }
        return j.dump(2) + "\n";
    }
    throw std::invalid_argument("render_success_ratio: csv or json only");
}

std::vector<DescriptiveCell> descriptives(const std::vector<RunRecord>& records) {
    using Key = std::tuple<Algorithm, int, SweepMode, std::string>;
    std::map<Key, std::vector<const RunRecord*>> groups;
    std::vector<Key> order;
    for (const auto& r : records) {
        Key k{r.algorithm, r.function_id, r.mode, r.config};
        auto& g = groups[k];
        if (g.empty()) order.push_back(k);
        g.push_back(&r);
    }
    std::vector<DescriptiveCell> out;
    out.reserve(order.size());
    for (const auto& k : order) {
        const auto& runs = groups[k];
        std::vector<double> values, times;
        std::vector<bool> ok;
        bool timed = true;
        for (const RunRecord* r : runs) {
            values.push_back(r->best_value);
            ok.push_back(r->success);
            if (r->wall_time_s) {
                times.push_back(*r->wall_time_s);
            } else {
                timed = false;
            }
        }
        if (!timed) times.clear();
        DescriptiveCell cell;
        std::tie(cell.algorithm, cell.function_id, cell.mode, cell.config) = k;
        cell.stats = stats::describe(values, times, ok);
        out.push_back(std::move(cell));
    }
    return out;
}

std::string render_descriptives(const std::vector<DescriptiveCell>& cells, Format format) {
    std::ostringstream os;
    if (format == Format::Csv) {
        os << "algorithm,function,mode,config,mean,std,best,worst,avg_time_s,n_success,n_fail\n";
        for (const auto& c : cells) {
            const auto& s = c.stats;
            os << to_string(c.algorithm) << ',' << fn_code(c.function_id) << ',' << to_string(c.mode) << ','
               << c.config << ',' << format_double(s.mean) << ',' << format_double(s.std_dev) << ','
               << format_double(s.best) << ',' << format_double(s.worst) << ',' << opt_double(s.avg_time) << ','
               << s.n_success << ',' << s.n_fail << '\n';
        }
        return os.str();
    }
    if (format == Format::Markdown) {
        os << "| Algorithm | Function | Config | Mean | Std | Best | Worst | Avg time (s) | Success | Fail |\n";
        os << "|---|---|---|---:|---:|---:|---:|---:|---:|---:|\n";
        char buf[32];
        auto sci = [&](double v) {
            std::snprintf(buf, sizeof(buf), "%.4e", v);
            return std::string(buf);
        };
        for (const auto& c : cells) {
            const auto& s = c.stats;
            os << "| " << to_string(c.algorithm) << " | " << fn_code(c.function_id) << " | " << c.config << " | "
               << sci(s.mean) << " | " << sci(s.std_dev) << " | " << sci(s.best) << " | " << sci(s.worst) << " | "
               << (s.avg_time ? sci(*s.avg_time) : std::string("-")) << " | " << s.n_success << " | " << s.n_fail
               << " |\n";
        }
        return os.str();
    }
    throw std::invalid_argument("render_descriptives: csv or markdown only");
}

std::string render_manifest(const ExperimentSpec& spec) {
    nlohmann::json j;
    j["tool"] = "bsaopt";
    j["version"] = BSAOPT_VERSION;
    j["compiler"] = __VERSION__;
    j["config_format"] = {{"dialect", "json"}, {"version", 1}};
    j["spec_hash"] = spec.hash();
    j["master_seed"] = spec.master_seed;
    j["rng"] = "mt19937_64 seeded by seed_seq(master_seed, stream_id)";
    j["stream_id"] = "algorithm<<61 | mode<<60 | function<<54 | config<<40 | seed";
    j["parallelism"] = spec.parallelism;
    j["spec"] = nlohmann::json::parse(spec.canonical_json());
    return j.dump(2) + "\n";
}

std::string comparison_file_name(const ComparisonTable& table) {
    return "wilcoxon_" + to_string(table.mode) + "_" + table.config + ".md";
}

std::vector<std::filesystem::path> write_reports(const std::filesystem::path& dir,
                                                 const ExperimentSpec& spec,
                                                 const std::vector<RunRecord>& records,
                                                 const PairwiseReport& pairwise) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw std::runtime_error("cannot create " + dir.string() + ": " + ec.message());

    std::vector<std::filesystem::path> written;
    auto emit = [&](const std::string& name, const std::string& text) {
        const auto path = dir / name;
        write_file(path, text);
        written.push_back(path);
    };

    std::ostringstream csv;
    write_records_csv(csv, records);
    emit("records.csv", csv.str());

    std::string jsonl;
    for (const auto& r : records) jsonl += to_json_line(r) + "\n";
    emit("records.jsonl", jsonl);

    emit("descriptives.csv", render_descriptives(descriptives(records), Format::Csv));
    emit("success_ratio.csv", render_success_ratio(success_ratio(records), Format::Csv));
    for (const auto& t : pairwise.tables) emit(comparison_file_name(t), render_comparison(t, Format::Markdown));
    emit("manifest.json", render_manifest(spec));
    return written;
}

std::string render_summary(const PairwiseReport& pairwise) {
    std::ostringstream os;
    for (const auto& t : pairwise.tables) {
        const auto footer = t.footer();
        os << to_string(t.mode) << ' ' << t.config << ':';
        for (std::size_t c = 0; c < t.competitors.size(); ++c) {
            os << "  BSA vs " << to_string(t.competitors[c]) << ' ' << footer[c].str();
        }
        os << "  (" << t.rows.size() << " jointly solved)\n";
    }
    return os.str();
}

}  // namespace bsaopt
