#include "support/oracles.hpp"

#include "cli/app.hpp"
#include "cli/commands.hpp"
#include "cli/table.hpp"

#include <qcovert/covert.hpp>
#include <qcovert/errors.hpp>

#include <doctest.h>
#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using namespace qcovert;
using namespace qcovert::cli;

namespace {

namespace fs = std::filesystem;

double num(const Cell& c) { return std::get<double>(c); }

std::vector<double> column(const Table& t, std::string_view name) {
    std::vector<double> out;
    const std::size_t i = t.column(name);
    for (const auto& row : t.rows()) out.push_back(num(row[i]));
    return out;
}

RunConfig config(Command c) {
    RunConfig cfg;
    cfg.command = c;
    return cfg;
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

int run(std::vector<std::string> args) {
    args.insert(args.begin(), "qcovert");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    return run_cli(static_cast<int>(argv.size()), argv.data());
}

fs::path scratch(const std::string& name) {
    const auto dir = fs::temp_directory_path() / "qcovert_cli_tests";
    fs::create_directories(dir);
    return dir / name;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("grid parsing") {
    const auto g = parse_real_grid("0.1:0.9:0.1");
    REQUIRE(g.size() == 9);
    CHECK(g[2] == 0.3);
    CHECK(g[8] == 0.9);
    CHECK(parse_real_grid("0.5,0.25").size() == 2);
    CHECK(parse_real_grid("0.99") == std::vector<double>{0.99});
    CHECK_THROWS_AS(parse_real_grid(""), ValidationError);
    CHECK_THROWS_AS(parse_real_grid("0.1:0.9"), ValidationError);
    CHECK_THROWS_AS(parse_real_grid("0.9:0.1:0.1"), ValidationError);
    CHECK_THROWS_AS(parse_real_grid("0.1,,0.2"), ValidationError);
    CHECK_THROWS_AS(parse_real_grid("abc"), ValidationError);
    CHECK(parse_integer_grid("1e4,1e5") == std::vector<std::int64_t>{10'000, 100'000});
    CHECK(parse_integer_grid("1:8:1").size() == 8);
    CHECK_THROWS_AS(parse_integer_grid("2.5"), ValidationError);
    CHECK_THROWS_AS(parse_integer_grid("0"), ValidationError);
}

TEST_CASE("number formatting") {
    CHECK(format_number(0.1) == "0.1");
    CHECK(format_number(1.0 / 3.0) == "0.333333333333");
    CHECK(format_number(1e-20) == "1e-20");
    CHECK(format_number(1e7) == "10000000");
    CHECK(format_number(std::numeric_limits<double>::infinity()) == "inf");
    CHECK(round_significant(1.0 / 3.0) == 0.333333333333);
}

TEST_CASE("csv quoting and typing") {
    Table t({"name", "value", "flag", "note"});
    t.add_row({std::string("a,b"), 1.5, true, std::monostate{}});
    t.add_row({std::string("say \"hi\""), -2e-30, false, std::string("12")});
    t.add_row({std::string(""), std::numeric_limits<double>::infinity(), false, std::string("true")});
    const std::string text = to_csv(t);
    CHECK(text ==
          "name,value,flag,note\n"
          "\"a,b\",1.5,true,\n"
          "\"say \"\"hi\"\"\",-2e-30,false,\"12\"\n"
          "\"\",inf,false,\"true\"\n");
    const Table back = parse_csv(text);
    CHECK(back == t);
    CHECK(to_csv(back) == text);
    CHECK(parse_csv("a,b\r\n1,2\r\n") == parse_csv("a,b\n1,2\n"));
    CHECK_THROWS(parse_csv("a,b\n\"open,1\n"));
    CHECK_THROWS(parse_csv("a,b\n1\n"));
    CHECK_THROWS_AS(t.add_row({1.0}), std::invalid_argument);
}

TEST_CASE("bound-curve command") {
    auto cfg = config(Command::BoundCurve);
    cfg.q_grid = parse_real_grid("0.1:0.9:0.1");
    const auto t = cmd_bound_curve(with_defaults(cfg));
    CHECK(t.header() == std::vector<std::string>{"q", "eta", "capacity_lb"});
    const auto cap = column(t, "capacity_lb");
    REQUIRE(cap.size() == 9);
    for (std::size_t i = 1; i < cap.size(); ++i) CHECK(cap[i] < cap[i - 1]);

    cfg.q_grid = {0.99};
    const auto single = cmd_bound_curve(cfg);
    REQUIRE(single.rows().size() == 1);
    CHECK(num(single.rows()[0][2]) < capacity_lower_bound(0.5).value);

    cfg.q_grid = {1.0};
    CHECK_THROWS_AS(cmd_bound_curve(cfg), ValidationError);
    CHECK(with_defaults(config(Command::BoundCurve)).q_grid.size() == 19);
}

TEST_CASE("approx-check command") {
    auto cfg = config(Command::ApproxCheck);
    cfg.q_grid = {0.5};
    cfg.alpha_grid = {1e-4, 1e-5, 1e-6};
    const auto t = cmd_approx_check(cfg);
    CHECK(t.header() == std::vector<std::string>{"alpha", "q", "D_exact", "D_lead", "V_exact", "V_lead", "Q_exact",
                                                 "ratio_D", "ratio_V"});
    const auto ratio = column(t, "ratio_D");
    for (std::size_t i = 1; i < ratio.size(); ++i) CHECK(std::abs(ratio[i] - 1.0) < std::abs(ratio[i - 1] - 1.0));

    cfg.q_grid = {0.0};
    cfg.alpha_grid = {0.01, 0.0};
    const auto noiseless = cmd_approx_check(cfg);
    const auto& row = noiseless.rows()[0];
    CHECK(num(row[t.column("D_exact")]) == doctest::Approx(2.0 * oracle::binary_entropy(0.01)).epsilon(1e-11));
    CHECK(num(row[t.column("D_lead")]) == doctest::Approx(-0.01 * std::log2(0.01)).epsilon(1e-11));
    const auto& zero = noiseless.rows()[1];
    for (const char* c : {"alpha", "D_exact", "D_lead", "V_exact", "V_lead", "Q_exact"}) CHECK(num(zero[t.column(c)]) == 0.0);
    CHECK(std::holds_alternative<std::monostate>(zero[t.column("ratio_D")]));

    cfg.alpha_grid = {1.0};
    CHECK_THROWS_AS(cmd_approx_check(cfg), ValidationError);
}

TEST_CASE("rate-table command") {
    auto cfg = config(Command::RateTable);
    cfg.q_grid = {0.5};
    cfg.n_grid = {10'000, 100'000, 1'000'000};
    const auto t = cmd_rate_table(cfg);
    const auto ln = column(t, "L_n");
    const auto limit = column(t, "L_limit");
    for (std::size_t i = 1; i < ln.size(); ++i) CHECK(std::abs(limit[i] - ln[i]) < std::abs(limit[i - 1] - ln[i - 1]));

    cfg.nu = 1.0 / 6.0;
    CHECK_THROWS_AS(cmd_rate_table(cfg), ValidationError);

    cfg.nu = 0.05;
    cfg.eps = 0.5;
    cfg.n_grid = {100'000};
    const auto half = cmd_rate_table(cfg);
    const auto r = rate_report(ScheduleParams(100'000, 0.05), 0.5, 0.5);
    const double no_spread = 100'000.0 * r.dvq.d - lemma1_correction(100'000, 0.5, r.dvq);
    CHECK(num(half.rows()[0][half.column("logM_lemma1")]) == doctest::Approx(no_spread).epsilon(1e-11));
}

TEST_CASE("scenario command") {
    auto cfg = config(Command::Scenario);
    cfg.q_grid = {0.5};
    const auto t = cmd_scenario(cfg);
    REQUIRE(t.rows().size() == 3);
    const std::size_t verdict = t.column("verdict");
    CHECK(std::get<std::string>(t.rows()[0][verdict]) == "impossible");
    CHECK(std::get<std::string>(t.rows()[1][verdict]) == "trivial");
    CHECK(std::get<std::string>(t.rows()[2][verdict]) == "nontrivial");
    CHECK(num(t.rows()[2][t.column("det_omega0")]) == doctest::Approx(0.09375));

    cfg.scenario = Scenario::E2Only;
    CHECK(cmd_scenario(cfg).rows().size() == 1);

    cfg.format = Format::Json;
    const auto doc = nlohmann::json::parse(render(cmd_scenario(cfg), cfg));
    CHECK(doc["config"]["command"] == "scenario");
    CHECK(doc["rows"][0]["verdict"] == "trivial");
    CHECK(doc["rows"][0]["support_contained"] == true);
}

TEST_CASE("detect-sim command") {
    auto cfg = with_defaults(config(Command::DetectSim));
    cfg.q_grid = {0.5};
    CHECK(cfg.n_grid.size() == 8);
    const auto t = cmd_detect_sim(cfg);
    const auto e = column(t, "E_n");
    const auto floor = column(t, "pinsker_floor");
    for (std::size_t i = 0; i < e.size(); ++i) CHECK(e[i] >= floor[i]);

    cfg.alpha_grid = {0.0};
    cfg.n_grid = {1, 2, 3};
    for (double v : column(cmd_detect_sim(cfg), "E_n")) CHECK(v == 0.5);

    cfg.alpha_grid.clear();
    cfg.scenario = Scenario::E2Only;
    for (double v : column(cmd_detect_sim(cfg), "E_n")) CHECK(v == 0.5);

    cfg.scenario = Scenario::AllEnv;
    cfg.n_grid = {6};
    CHECK_THROWS_AS(cmd_detect_sim(cfg), DimensionError);
}

TEST_CASE("property: every command output round-trips through csv") {
    for (Command c : {Command::BoundCurve, Command::ApproxCheck, Command::RateTable, Command::Scenario,
                      Command::DetectSim}) {
        auto cfg = with_defaults(config(c));
        if (c == Command::DetectSim) cfg.n_grid = {1, 2, 3};
        const Table t = run_command(cfg);
        const std::string text = to_csv(t);
        CHECK(parse_csv(text) == t);
        CHECK(to_csv(parse_csv(text)) == text);
    }
}

TEST_CASE("property: commands are deterministic") {
    for (Command c : {Command::BoundCurve, Command::ApproxCheck, Command::RateTable, Command::Scenario,
                      Command::DetectSim}) {
        for (Format f : {Format::Csv, Format::Json}) {
            auto cfg = with_defaults(config(c));
            cfg.format = f;
            if (c == Command::DetectSim) cfg.n_grid = {1, 2, 3, 4};
            CHECK(render(run_command(cfg), cfg) == render(run_command(cfg), cfg));
        }
    }
}

TEST_CASE("json layout") {
    auto cfg = with_defaults(config(Command::BoundCurve));
    cfg.q_grid = {0.5};
    cfg.format = Format::Json;
    const auto doc = nlohmann::json::parse(render(run_command(cfg), cfg));
    CHECK(doc.is_object());
    CHECK(doc["config"]["q_grid"] == "0.5");
    REQUIRE(doc["rows"].is_array());
    CHECK(doc["rows"][0]["capacity_lb"].get<double>() == doctest::Approx(0.14593897796).epsilon(1e-11));
}

TEST_CASE("exit codes") {
    const auto out = scratch("bound.csv");
    CHECK(run({"bound-curve", "--q-grid", "0.1:0.9:0.1", "--out", out.string()}) == kExitOk);
    CHECK(slurp(out).rfind("q,eta,capacity_lb\n", 0) == 0);
    CHECK(run({"bound-curve", "--q-grid", "", "--out", out.string()}) == kExitUsage);
    CHECK(run({"bound-curve", "--q-grid", "0.1:0.5", "--out", out.string()}) == kExitUsage);
    CHECK(run({"rate-table", "--nu", "0.2", "--out", out.string()}) == kExitUsage);
    CHECK(run({"rate-table", "--eps", "1.5", "--out", out.string()}) == kExitUsage);
    CHECK(run({"scenario", "--scenario", "7", "--out", out.string()}) == kExitUsage);
    CHECK(run({"detect-sim", "--n-grid", "11", "--out", out.string()}) == kExitUsage);
    CHECK(run({"bound-curve", "--format", "xml"}) == kExitUsage);
    CHECK(run({"bound-curve", "--bogus"}) == kExitUsage);
    CHECK(run({}) == kExitUsage);
    CHECK(run({"bound-curve", "--out", "/nonexistent-dir/x.csv"}) == kExitUsage);
}

TEST_CASE("exit code mapping") {
    const auto code = [](auto e) { return exit_code_for(std::make_exception_ptr(e)); };
    CHECK(code(ValidationError("v")) == kExitUsage);
    CHECK(code(DimensionError("d")) == kExitUsage);
    CHECK(code(NumericalError("n")) == kExitNumerical);
    CHECK(code(SupportError("s")) == kExitNumerical);
    CHECK(code(DomainError("d")) == kExitNumerical);
    CHECK(code(std::runtime_error("r")) == kExitNumerical);
}

TEST_CASE("file output is byte-identical across runs") {
    const auto a = scratch("det_a.json");
    const auto b = scratch("det_b.json");
    for (const auto& p : {a, b}) {
        REQUIRE(run({"detect-sim", "--q", "0.5", "--n-grid", "1:4:1", "--format", "json", "--out", p.string()}) ==
                kExitOk);
    }
    CHECK(slurp(a) == slurp(b));
    CHECK_FALSE(slurp(a).empty());
}

}  // TEST_SUITE
