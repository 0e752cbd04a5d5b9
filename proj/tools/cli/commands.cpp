#include "cli/commands.hpp"

#include <qcovert/covert.hpp>
#include <qcovert/detection.hpp>
#include <qcovert/errors.hpp>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>

namespace qcovert::cli {

namespace {

double parse_real(std::string_view token) {
    const std::string s(token);
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size() || !std::isfinite(v)) {
        throw ValidationError("not a number: '" + s + "'");
    }
    return v;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    for (;;) {
        const std::size_t pos = text.find(sep, start);
        parts.push_back(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) return parts;
        start = pos + 1;
    }
}

std::vector<double> default_q_curve() { return parse_real_grid("0.05:0.95:0.05"); }

void require_open_noise(double q, const char* what) {
    if (!(q > 0.0 && q < 1.0)) throw ValidationError(std::string(what) + ": q must lie in (0,1)");
}

Cell ratio_or_empty(double num, double den) {
    if (den == 0.0) return std::monostate{};
    return num / den;
}

}  // namespace

std::string_view to_string(Command c) {
    switch (c) {
        case Command::BoundCurve: return "bound-curve";
        case Command::ApproxCheck: return "approx-check";
        case Command::RateTable: return "rate-table";
        case Command::Scenario: return "scenario";
        case Command::DetectSim: return "detect-sim";
    }
    return "unknown";
}

std::vector<double> parse_real_grid(std::string_view text) {
    if (text.empty()) throw ValidationError("empty grid");
    std::vector<double> out;
    if (text.find(':') != std::string_view::npos) {
        const auto parts = split(text, ':');
        if (parts.size() != 3) throw ValidationError("range grid must be a:b:step");
        const double a = parse_real(parts[0]);
        const double b = parse_real(parts[1]);
        const double step = parse_real(parts[2]);
        if (!(step > 0.0) || b < a) throw ValidationError("range grid needs step > 0 and a <= b");
        const double span = (b - a) / step;
        if (span > 1e7) throw ValidationError("range grid has too many points");
        const auto count = static_cast<std::int64_t>(std::floor(span + 1e-9)) + 1;
        for (std::int64_t i = 0; i < count; ++i) out.push_back(round_significant(a + static_cast<double>(i) * step));
    } else {
        for (std::string_view tok : split(text, ',')) out.push_back(parse_real(tok));
    }
    return out;
}

std::vector<std::int64_t> parse_integer_grid(std::string_view text) {
    std::vector<std::int64_t> out;
    for (double v : parse_real_grid(text)) {
        if (!(v >= 1.0) || v != std::floor(v) || v > 9e15) {
            throw ValidationError("blocklength grid entries must be positive integers");
        }
        out.push_back(static_cast<std::int64_t>(v));
    }
    return out;
}

RunConfig with_defaults(RunConfig cfg) {
    if (cfg.q_grid.empty()) cfg.q_grid = cfg.command == Command::BoundCurve ? default_q_curve() : std::vector{0.5};
    if (cfg.n_grid.empty()) {
        if (cfg.command == Command::RateTable) cfg.n_grid = {10'000, 100'000, 1'000'000, 10'000'000};
        if (cfg.command == Command::DetectSim) cfg.n_grid = {1, 2, 3, 4, 5, 6, 7, 8};
    }
    if (cfg.alpha_grid.empty() && cfg.command == Command::ApproxCheck) cfg.alpha_grid = {1e-3, 1e-4, 1e-5, 1e-6};
    return cfg;
}

Table cmd_bound_curve(const RunConfig& cfg) {
    Table t({"q", "eta", "capacity_lb"});
    for (double q : cfg.q_grid) {
        require_open_noise(q, "bound-curve");
        const auto cap = capacity_lower_bound(q);
        t.add_row({q, cap.eta, cap.value});
    }
    return t;
}

Table cmd_approx_check(const RunConfig& cfg) {
    Table t({"alpha", "q", "D_exact", "D_lead", "V_exact", "V_lead", "Q_exact", "ratio_D", "ratio_V"});
    for (double q : cfg.q_grid) {
        validate_noise(q);
        for (double alpha : cfg.alpha_grid) {
            if (!(alpha >= 0.0 && alpha < 1.0)) throw ValidationError("approx-check: alpha must lie in [0,1)");
            const auto exact = dvq_exact(alpha, q);
            const auto lead = dvq_asymptotic(alpha, q);
            t.add_row({alpha, q, exact.d, lead.d, exact.v, lead.v, exact.q4, ratio_or_empty(exact.d, lead.d),
                       ratio_or_empty(exact.v, lead.v)});
        }
    }
    return t;
}

Table cmd_rate_table(const RunConfig& cfg) {
    Table t({"n", "nu", "q", "alpha_n", "logM_lemma1", "logM_lemma2", "div_total", "L_n", "L_limit"});
    for (double q : cfg.q_grid) {
        require_open_noise(q, "rate-table");
        for (std::int64_t n : cfg.n_grid) {
            const auto r = rate_report(ScheduleParams(n, cfg.nu), q, cfg.eps);
            t.add_row({static_cast<double>(r.n), r.nu, r.q, r.alpha_n, r.logM_lemma1, r.logM_lemma2,
                       r.willie_div_total, r.covert_rate_L, r.rate_limit_L});
        }
    }
    return t;
}

Table cmd_scenario(const RunConfig& cfg) {
    Table t({"scenario", "q", "support_contained", "kernel_leakage", "null_vector_overlap", "trace_distance",
             "det_omega0", "det_omega1", "verdict", "annotation"});
    std::vector<Scenario> scenarios{Scenario::AllEnv, Scenario::E2Only, Scenario::E1Only};
    if (cfg.scenario) scenarios = {*cfg.scenario};
    for (Scenario s : scenarios) {
        for (double q : cfg.q_grid) {
            const auto rep = scenario_support_report(ChannelSpec(q, s));
            Cell overlap = std::monostate{};
            if (rep.null_vector_overlap) overlap = *rep.null_vector_overlap;
            t.add_row({std::string(to_string(s)), q, rep.support_contained, rep.kernel_leakage, overlap,
                       rep.trace_distance, rep.det_omega0, rep.det_omega1, std::string(to_string(rep.verdict)),
                       rep.annotation});
        }
    }
    return t;
}

Table cmd_detect_sim(const RunConfig& cfg) {
    Table t({"n", "alpha", "trace_dist", "E_n", "pinsker_floor", "div_total"});
    const Scenario scenario = cfg.scenario.value_or(Scenario::E1Only);
    for (double q : cfg.q_grid) {
        const ChannelSpec spec(q, scenario);
        auto emit = [&](std::int64_t n, double alpha) {
            const auto r = warden_error(n, alpha, spec);
            t.add_row({static_cast<double>(r.n), r.alpha, r.trace_dist, r.error_prob, r.pinsker_floor, r.div_total});
        };
        if (cfg.alpha_grid.empty()) {
            for (std::int64_t n : cfg.n_grid) emit(n, ScheduleParams(n, cfg.nu).alpha());
        } else {
            for (double alpha : cfg.alpha_grid)
                for (std::int64_t n : cfg.n_grid) emit(n, alpha);
        }
    }
    return t;
}

Table run_command(const RunConfig& cfg) {
    switch (cfg.command) {
        case Command::BoundCurve: return cmd_bound_curve(cfg);
        case Command::ApproxCheck: return cmd_approx_check(cfg);
        case Command::RateTable: return cmd_rate_table(cfg);
        case Command::Scenario: return cmd_scenario(cfg);
        case Command::DetectSim: return cmd_detect_sim(cfg);
    }
    throw ValidationError("unknown command");
}

ConfigEntries config_entries(const RunConfig& cfg) {
    auto join_reals = [](const std::vector<double>& v) {
        std::string s;
        for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + format_number(v[i]);
        return s;
    };
    std::vector<double> ns(cfg.n_grid.begin(), cfg.n_grid.end());
    ConfigEntries e;
    e.emplace_back("command", std::string(to_string(cfg.command)));
    e.emplace_back("q_grid", join_reals(cfg.q_grid));
    e.emplace_back("nu", round_significant(cfg.nu));
    e.emplace_back("eps", round_significant(cfg.eps));
    e.emplace_back("n_grid", join_reals(ns));
    e.emplace_back("scenario", cfg.scenario ? Cell{std::string(to_string(*cfg.scenario))} : Cell{});
    e.emplace_back("alpha_grid", join_reals(cfg.alpha_grid));
    return e;
}

std::string render(const Table& t, const RunConfig& cfg) {
    return cfg.format == Format::Json ? to_json(t, config_entries(cfg)) : to_csv(t);
}

void write_output(const std::string& text, const RunConfig& cfg) {
    if (cfg.out == "-") {
        std::cout << text << std::flush;
        return;
    }
    std::ofstream f(cfg.out, std::ios::binary | std::ios::trunc);
    if (!f) throw ValidationError("cannot open output file '" + cfg.out + "'");
    f << text;
    f.flush();
    if (!f) throw ValidationError("failed writing output file '" + cfg.out + "'");
}

}  // namespace qcovert::cli
