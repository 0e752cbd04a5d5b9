#pragma once

#include "cli/table.hpp"

#include <qcovert/channels.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qcovert::cli {

enum class Command { BoundCurve, ApproxCheck, RateTable, Scenario, DetectSim };
enum class Format { Csv, Json };

std::string_view to_string(Command c);

struct RunConfig {
    Command command = Command::BoundCurve;
    std::vector<double> q_grid;
    double nu = 0.05;
    double eps = 0.05;
    std::vector<std::int64_t> n_grid;
    /// Empty means every scenario (scenario command) or E1Only (detect-sim).
    std::optional<Scenario> scenario;
    /// Empty means the scheduled alpha_n (detect-sim) or the default decade grid.
    std::vector<double> alpha_grid;
    /// "-" writes to standard output.
    std::string out = "-";
    Format format = Format::Csv;
};

/// "a:b:step" (inclusive) or a comma-separated list. Throws ValidationError on
/// malformed or empty grids.
std::vector<double> parse_real_grid(std::string_view text);
/// As parse_real_grid; every value must be a positive integer (1e4 is accepted).
std::vector<std::int64_t> parse_integer_grid(std::string_view text);

/// Fills command-specific defaults for any grid left empty.
RunConfig with_defaults(RunConfig cfg);

/// Columns q,eta,capacity_lb.
Table cmd_bound_curve(const RunConfig& cfg);
/// Columns alpha,q,D_exact,D_lead,V_exact,V_lead,Q_exact,ratio_D,ratio_V.
Table cmd_approx_check(const RunConfig& cfg);
/// Columns n,nu,q,alpha_n,logM_lemma1,logM_lemma2,div_total,L_n,L_limit.
Table cmd_rate_table(const RunConfig& cfg);
/// One row per (scenario, q) support report.
Table cmd_scenario(const RunConfig& cfg);
/// Columns n,alpha,trace_dist,E_n,pinsker_floor,div_total.
Table cmd_detect_sim(const RunConfig& cfg);

Table run_command(const RunConfig& cfg);

ConfigEntries config_entries(const RunConfig& cfg);

/// Renders the table in cfg.format.
std::string render(const Table& t, const RunConfig& cfg);

/// Writes the rendered table to cfg.out. Throws ValidationError when the path
/// cannot be written.
void write_output(const std::string& text, const RunConfig& cfg);

}  // namespace qcovert::cli
