#include "cli.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace bsaopt;
namespace fs = std::filesystem;

namespace {

struct Invocation {
    int code = 0;
    std::string out;
    std::string err;
};

Invocation invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "bsaopt");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    Invocation r;
    r.code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

fs::path scratch(const std::string& name) {
    const auto p = fs::temp_directory_path() / ("bsaopt_cli_" + name);
    fs::remove_all(p);
    return p;
}

}  // namespace

TEST(Settings, Profiles) {
    const auto paper = cli::profile_spec(cli::Profile::Paper);
    EXPECT_EQ(paper.runs, 30u);
    EXPECT_EQ(paper.iterations, 2000u);
    EXPECT_EQ(paper.pop_size, 30u);
    const auto smoke = cli::profile_spec(cli::Profile::Smoke);
    EXPECT_EQ(smoke.runs, 10u);
    EXPECT_EQ(smoke.iterations, 500u);
    EXPECT_EQ(smoke.pop_size, 30u);
}

TEST(Settings, ThreeLayerPrecedence) {
    cli::Overrides ov;
    ov.runs = 5;
    const auto s = cli::resolve_settings(
        std::string(R"({"profile": "smoke", "runs": 20, "iterations": 100, "seed": 3})"), ov);
    EXPECT_EQ(s.spec.runs, 5u);          // command line
    EXPECT_EQ(s.spec.iterations, 100u);  // config file
    EXPECT_EQ(s.spec.pop_size, 30u);     // profile
    EXPECT_EQ(s.spec.master_seed, 3u);

    ov.profile = cli::Profile::Paper;
    const auto p = cli::resolve_settings(std::string(R"({"profile": "smoke"})"), ov);
    EXPECT_EQ(p.spec.iterations, 2000u);
}

TEST(Settings, ConfigErrorsNameTheKey) {
    const cli::Overrides ov;
    try {
        cli::resolve_settings(std::string(R"({"runz": 3})"), ov);
        FAIL();
    } catch (const ConfigError& e) {
        EXPECT_NE(std::string(e.what()).find("runz"), std::string::npos);
    }
    try {
        cli::resolve_settings(std::string(R"({"pso": {"inertia": "high"}})"), ov);
        FAIL();
    } catch (const ConfigError& e) {
        EXPECT_NE(std::string(e.what()).find("pso.inertia"), std::string::npos);
    }
    EXPECT_THROW(cli::resolve_settings(std::string(R"({"runs": -1})"), ov), ConfigError);
    EXPECT_THROW(cli::resolve_settings(std::string("{not json"), ov), ConfigError);
    EXPECT_THROW(cli::resolve_settings(std::string(R"({"functions": ["F40"]})"), ov), ConfigError);
}

TEST(Settings, NestedParameters) {
    const auto s = cli::resolve_settings(
        std::string(R"({"bsa": {"amplitude": {"kind": "linear_schedule", "f_min": 0.5, "f_max": 2},
                               "mix_rate": 0.5, "crossover": "mixrate"},
                       "de": {"f_weight": 0.7}, "abc": {"trial_limit": 50}, "modes": ["range"],
                       "ranges": [[-1, 1]], "functions": [14, "Ackley"], "algorithms": ["bsa", "de"]})"),
        {});
    EXPECT_EQ(s.spec.bsa.amplitude.kind, AmplitudeStrategy::Kind::LinearSchedule);
    EXPECT_EQ(s.spec.bsa.mix_rate, 0.5);
    EXPECT_EQ(s.spec.bsa.crossover_mode, CrossoverMode::MixrateOnly);
    EXPECT_EQ(s.spec.de.f_weight, 0.7);
    EXPECT_EQ(*s.spec.abc.trial_limit, 50.0);
    EXPECT_EQ(s.spec.functions, (std::vector<int>{14, 1}));
    EXPECT_EQ(s.spec.ranges.size(), 1u);
}

TEST(Run, SmokeSphereEndToEndAndResume) {
    const auto dir = scratch("smoke");
    const auto r = invoke({"run", "--profile", "smoke", "--functions", "F14", "--algorithms", "BSA,DE", "--out",
                           dir.string()});
    ASSERT_EQ(r.code, 0) << r.err;
    for (const char* f : {"records.csv", "descriptives.csv", "success_ratio.csv", "manifest.json",
                          "wilcoxon_dimension_D10.md"}) {
        EXPECT_TRUE(fs::exists(dir / f)) << f;
    }
    EXPECT_NE(r.out.find("BSA vs DE"), std::string::npos);
    const auto first = slurp(dir / "records.csv");
    const auto tables = slurp(dir / "wilcoxon_range_R2.md");

    const auto again = invoke({"run", "--profile", "smoke", "--functions", "F14", "--algorithms", "BSA,DE",
                               "--out", dir.string()});
    ASSERT_EQ(again.code, 0);
    EXPECT_NE(again.out.find("resuming: 120 completed runs"), std::string::npos);
    EXPECT_EQ(slurp(dir / "records.csv"), first);
    EXPECT_EQ(slurp(dir / "wilcoxon_range_R2.md"), tables);
    fs::remove_all(dir);
}

TEST(Run, PartialRecordsAreResumed) {
    const auto dir = scratch("partial");
    const std::vector<std::string> args{"run", "--profile", "smoke", "--functions", "F14", "--algorithms", "BSA,PSO",
                                        "--modes", "dimension", "--out", dir.string()};
    ASSERT_EQ(invoke(args).code, 0);
    const auto full = slurp(dir / "records.csv");
    // Keep the header plus the first 7 rows, as an interrupted run would.
    std::istringstream in(full);
    std::string line, partial;
    for (int k = 0; k < 8 && std::getline(in, line); ++k) partial += line + "\n";
    std::ofstream(dir / "records.csv", std::ios::binary | std::ios::trunc) << partial;
    const auto r = invoke(args);
    ASSERT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("resuming: 7 completed runs"), std::string::npos);
    EXPECT_EQ(slurp(dir / "records.csv"), full);
    fs::remove_all(dir);
}

TEST(Run, SameSeedSameBytes) {
    const auto a = scratch("seed_a");
    const auto b = scratch("seed_b");
    for (const auto& d : {a, b}) {
        ASSERT_EQ(invoke({"run", "--profile", "smoke", "--seed", "42", "--functions", "F3,F14", "--algorithms",
                          "BSA,ABC", "--runs", "3", "--out", d.string()})
                      .code,
                  0);
    }
    EXPECT_EQ(slurp(a / "records.csv"), slurp(b / "records.csv"));
    fs::remove_all(a);
    fs::remove_all(b);
}

TEST(Run, ConfigFileAndErrors) {
    const auto dir = scratch("cfg");
    fs::create_directories(dir);
    std::ofstream(dir / "good.json") << R"({"profile": "smoke", "functions": ["F14"], "algorithms": ["BSA", "FF"],
        "runs": 2, "iterations": 50, "modes": ["dimension"], "dims": [2]})";
    std::ofstream(dir / "bad.json") << R"({"itterations": 5})";
    EXPECT_EQ(invoke({"run", "--config", (dir / "good.json").string(), "--out", (dir / "o").string()}).code, 0);
    const auto bad = invoke({"run", "--config", (dir / "bad.json").string(), "--out", (dir / "o2").string()});
    EXPECT_EQ(bad.code, cli::kExitConfig);
    EXPECT_NE(bad.err.find("itterations"), std::string::npos);
    EXPECT_EQ(invoke({"run", "--config", (dir / "missing.json").string()}).code, cli::kExitIo);
    EXPECT_EQ(invoke({"run", "--profile", "huge"}).code, cli::kExitConfig);
    EXPECT_EQ(invoke({"run", "--metric", "speed"}).code, cli::kExitConfig);
    EXPECT_EQ(invoke({"frobnicate"}).code, cli::kExitConfig);
    fs::remove_all(dir);
}

TEST(Solve, PrintsMonotoneBestAndTrace) {
    const auto dir = scratch("solve");
    fs::create_directories(dir);
    const auto trace = dir / "trace.csv";
    const auto r = invoke({"solve", "bsa", "F14", "--dim", "2", "--seed", "1", "--iterations", "300", "--trace",
                           trace.string()});
    ASSERT_EQ(r.code, 0) << r.err;
    auto field = [&](const std::string& key) {
        const auto p = r.out.find(key);
        const auto eol = r.out.find('\n', p);
        std::string v = r.out.substr(p + key.size(), eol - p - key.size());
        return parse_double(v.substr(v.find_first_not_of(' ')));
    };
    EXPECT_LE(field("best value:"), field("initial best:"));
    const auto text = slurp(trace);
    const auto rows = static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n')) - 1;
    EXPECT_LE(rows, 301u);
    fs::remove_all(dir);
}

TEST(Solve, UnknownFunctionListsIds) {
    const auto r = invoke({"solve", "bsa", "F77"});
    EXPECT_EQ(r.code, cli::kExitConfig);
    EXPECT_NE(r.err.find("F1 (Ackley)"), std::string::npos);
    EXPECT_NE(r.err.find("F16"), std::string::npos);
}

TEST(Validate, PristineRegistryPasses) {
    std::ostringstream out, err;
    EXPECT_EQ(cli::cmd_validate(registry(), out, err), 0) << err.str();
    EXPECT_NE(out.str().find("16/16 functions validated"), std::string::npos);
}

TEST(Validate, TamperedSphereFails) {
    auto reg = registry();
    reg[13].global_min = 1.0;
    std::ostringstream out, err;
    EXPECT_EQ(cli::cmd_validate(reg, out, err), cli::kExitValidation);
    EXPECT_NE(err.str().find("F14"), std::string::npos);
    EXPECT_NE(out.str().find("15/16 functions validated"), std::string::npos);
}

TEST(ListFunctions, SixteenRows) {
    const auto r = invoke({"list-functions"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 17);
    EXPECT_NE(invoke({"list-functions", "--json"}).out.find("\"F14\""), std::string::npos);
}
