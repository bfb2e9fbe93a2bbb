#pragma once

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "schwarzf2/hypergeo.hpp"
#include "schwarzf2/numerics.hpp"

namespace schwarzf2::cli {

// Exit-code contract of the command-line tool.
enum ExitCode : int {
    kExitOk = 0,
    kExitVerifyFailed = 1,
    kExitDomain = 2,
    kExitConvergence = 3,
    kExitNotOnImage = 4,
    kExitParse = 5,
};

// Points start, start + step, ... up to stop (inclusive within step/1000),
// used for both coordinates.
struct GridSpec {
    double start = 0.05;
    double stop = 0.85;
    double step = 0.1;
};

// Parses "a:b:step". Throws ParseError.
GridSpec parse_grid(const std::string& text);

// Grid points with x1 + x2 < 1 and both coordinates positive; with
// unvalidated set, every point off the singular divisor is kept instead.
std::vector<DomainPoint> grid_points(const GridSpec& g, bool unvalidated);

struct RunConfig {
    Tolerance tol;
    std::string format = "json";
    bool unvalidated = false;
    std::optional<GridSpec> grid;
    bool emit_table = false;
};

// Reads key=value lines ('#' starts a comment). Keys listed in overridden were
// given on the command line and are skipped. Throws ParseError on unknown
// keys or bad values.
void apply_config_file(const std::string& path, RunConfig& cfg, const std::set<std::string>& overridden);
void apply_config_text(const std::string& text, RunConfig& cfg, const std::set<std::string>& overridden);

// Compact JSON with sorted keys and every floating value printed with 17
// significant digits.
std::string render_json(const nlohmann::json& j);
std::string format_number(double x);

struct Check {
    std::string check_id;
    std::string paper_anchor;
    std::variant<double, bool> value;
    std::optional<double> threshold; // empty for exact boolean checks
    bool pass = false;
};

// Suites: theta, periods, curve, schwarz, monodromy, all. Throws ParseError
// for an unknown suite.
std::vector<Check> run_suite(const std::string& suite, const RunConfig& cfg);

struct Output {
    std::string text;
    int exit_code = kExitOk;
};

Output cmd_forward(const std::optional<std::pair<double, double>>& x, const RunConfig& cfg);
Output cmd_inverse(cplx y1, cplx y2, cplx tau, const RunConfig& cfg);
Output cmd_periods(const std::optional<std::pair<double, double>>& x, const RunConfig& cfg);
Output cmd_table(const RunConfig& cfg);
Output cmd_verify(const std::string& suite, const RunConfig& cfg);

// input is JSON text (a matrix object or a word array), a generator name
// M1..M5 or E4, "-" for standard input, or a path to a JSON file.
Output cmd_monodromy(const std::string& action, const std::string& input, bool signed_group, const RunConfig& cfg);

// Maps the library error hierarchy onto the exit-code contract.
int exit_code_for(const std::exception& e);

} // namespace schwarzf2::cli
