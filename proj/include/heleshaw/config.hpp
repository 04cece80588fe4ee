#ifndef HELESHAW_CONFIG_HPP
#define HELESHAW_CONFIG_HPP

#include <string>

#include "heleshaw/evolution.hpp"

namespace heleshaw {

// Run configuration: flat key/value sections in a small INI dialect.
// parse_config collects every violation before failing, write_config emits
// a canonical form that round-trips exactly.

struct GridConfig {
    int dimension = 1;
    double extent_x = 1.0;
    double extent_y = 1.0;
    int n_x = 100;
    int n_y = 100;
    std::string left = "dirichlet";
    std::string right = "dirichlet";
    std::string bottom = "neumann";
    std::string top = "neumann";
    bool operator==(const GridConfig&) const = default;
};

struct VelocityConfig {
    std::string kind = "zero";   // zero | constant | linear | crowd_motion | table
    double value_x = 0.0;
    double value_y = 0.0;
    double slope_x = 0.0;        // linear: V_x = slope_x (x - center_x)
    double center_x = 0.0;
    double slope_y = 0.0;
    double center_y = 0.0;
    double blend_width = 0.1;    // crowd_motion
    std::string file;            // table: CSV rows "axis,face_index,value"
    bool operator==(const VelocityConfig&) const = default;
};

struct SourceConfig {
    std::string kind = "zero";   // zero | constant | box
    double value = 0.0;
    double x_min = 0.0;
    double x_max = 1.0;
    double y_min = 0.0;
    double y_max = 1.0;
    bool operator==(const SourceConfig&) const = default;
};

struct ReactionConfig {
    std::string kind = "none";   // none | zero | constant | linear_decay | logistic | table
    double value = 0.0;          // constant
    double a = 0.0;              // linear_decay: a - b r
    double b = 0.0;
    double rate = 0.0;           // logistic
    double r_modulus = 0.0;
    std::string table_file;      // CSV rows "r,g"
    bool operator==(const ReactionConfig&) const = default;
};

struct InitialConfig {
    std::string kind = "zero";   // zero | constant | box | bump
    double value = 0.0;          // constant / box / bump height
    double x_min = 0.0;          // box
    double x_max = 1.0;
    double y_min = 0.0;
    double y_max = 1.0;
    double center = 0.5;         // bump
    double width = 0.2;
    bool operator==(const InitialConfig&) const = default;
};

struct TimeConfig {
    double horizon = 1.0;
    double tau = 0.01;
    double fixed_point_tol = 1e-12;
    bool operator==(const TimeConfig&) const = default;
};

struct SolverConfig {
    double tol = 1e-10;
    int max_iter = 50;
    double graph_epsilon = 0.0;   // > 0: single epsilon instead of a schedule
    double eps_start = 1e-2;
    double eps_end = 1e-8;
    double eps_factor = 10.0;
    std::string graph_kind = "two_phase";
    double comp_tol = 1e-8;
    bool enforce_admissibility = true;
    bool operator==(const SolverConfig&) const = default;
};

struct OutputConfig {
    std::string directory = "out";
    int snapshot_every = 1;
    bool operator==(const OutputConfig&) const = default;
};

struct VerifyConfig {
    std::string suite = "all";
    double tol_c = 1e-8;
    double tol_p = 1e-6;
    double c_e = 10.0;
    double c_cmp = 0.0;    // 0 = default 10 T ||V||_inf
    unsigned seed = 42;
    bool operator==(const VerifyConfig&) const = default;
};

struct RunConfig {
    GridConfig grid;
    VelocityConfig velocity;
    InitialConfig initial;
    SourceConfig source;
    ReactionConfig reaction;
    TimeConfig time;
    SolverConfig solver;
    OutputConfig output;
    VerifyConfig verify;
    bool operator==(const RunConfig&) const = default;
};

/// Parses and validates; throws ConfigError carrying every violation found.
RunConfig parse_config(const std::string& path);
RunConfig parse_config_text(const std::string& text, const std::string& origin = "<string>");

std::string write_config(const RunConfig& cfg);

GridPtr build_grid(const GridConfig& cfg);
VelocityField build_velocity(const VelocityConfig& cfg, const GridPtr& grid);
SolverParams build_solver_params(const SolverConfig& cfg);

/// Assembles the evolution problem; refine_level > 0 halves (h, tau, eps)
/// jointly that many times.
EvolutionProblem build_problem(const RunConfig& cfg, int refine_level = 0);

} // namespace heleshaw

#endif
