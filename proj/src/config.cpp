#include "heleshaw/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace heleshaw {

namespace {

struct RawConfig {
    // section -> key -> value, plus source line for messages
    std::map<std::string, std::map<std::string, std::pair<std::string, int>>> sections;
};

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

RawConfig parse_raw(const std::string& text, const std::string& origin,
                    std::vector<std::string>& violations) {
    RawConfig raw;
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto comment = line.find('#');
        if (comment != std::string::npos) line.erase(comment);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') {
                violations.push_back(origin + ":" + std::to_string(lineno) +
                                     ": unterminated section header");
                continue;
            }
            section = trim(line.substr(1, line.size() - 2));
            raw.sections[section];
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            violations.push_back(origin + ":" + std::to_string(lineno) +
                                 ": expected key = value");
            continue;
        }
        if (section.empty()) {
            violations.push_back(origin + ":" + std::to_string(lineno) +
                                 ": key outside of any [section]");
            continue;
        }
        raw.sections[section][trim(line.substr(0, eq))] = {trim(line.substr(eq + 1)), lineno};
    }
    return raw;
}

class Extractor {
public:
    Extractor(RawConfig& raw, std::vector<std::string>& violations, std::string origin)
        : raw_(raw), violations_(violations), origin_(std::move(origin)) {}

    bool has_section(const std::string& s) const { return raw_.sections.count(s) > 0; }

    void take_double(const std::string& sec, const std::string& key, double& out) {
        take(sec, key, [&](const std::string& v, int line) {
            try {
                size_t pos = 0;
                out = std::stod(v, &pos);
                if (pos != v.size()) throw std::invalid_argument("trailing characters");
            } catch (const std::exception&) {
                fail(sec, key, line, "expected a number, got '" + v + "'");
            }
        });
    }

    void take_int(const std::string& sec, const std::string& key, int& out) {
        take(sec, key, [&](const std::string& v, int line) {
            int value = 0;
            const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), value);
            if (ec != std::errc() || p != v.data() + v.size())
                fail(sec, key, line, "expected an integer, got '" + v + "'");
            else
                out = value;
        });
    }

    void take_unsigned(const std::string& sec, const std::string& key, unsigned& out) {
        take(sec, key, [&](const std::string& v, int line) {
            unsigned value = 0;
            const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), value);
            if (ec != std::errc() || p != v.data() + v.size())
                fail(sec, key, line, "expected an unsigned integer, got '" + v + "'");
            else
                out = value;
        });
    }

    void take_string(const std::string& sec, const std::string& key, std::string& out) {
        take(sec, key, [&](const std::string& v, int) { out = v; });
    }

    void take_bool(const std::string& sec, const std::string& key, bool& out) {
        take(sec, key, [&](const std::string& v, int line) {
            if (v == "true" || v == "1")
                out = true;
            else if (v == "false" || v == "0")
                out = false;
            else
                fail(sec, key, line, "expected true/false, got '" + v + "'");
        });
    }

    void finish() {
        for (const auto& [sec, keys] : raw_.sections)
            for (const auto& [key, value] : keys)
                if (!consumed_.count(sec + "." + key))
                    violations_.push_back(origin_ + ":" + std::to_string(value.second) +
                                          ": unknown key [" + sec + "] " + key);
    }

private:
    template <typename F>
    void take(const std::string& sec, const std::string& key, F&& f) {
        auto sit = raw_.sections.find(sec);
        if (sit == raw_.sections.end()) return;
        auto kit = sit->second.find(key);
        if (kit == sit->second.end()) return;
        consumed_.insert(sec + "." + key);
        f(kit->second.first, kit->second.second);
    }

    void fail(const std::string& sec, const std::string& key, int line, const std::string& msg) {
        violations_.push_back(origin_ + ":" + std::to_string(line) + ": [" + sec + "] " + key +
                              ": " + msg);
    }

    RawConfig& raw_;
    std::vector<std::string>& violations_;
    std::string origin_;
    std::set<std::string> consumed_;
};

bool one_of(const std::string& v, std::initializer_list<const char*> allowed) {
    for (const char* a : allowed)
        if (v == a) return true;
    return false;
}

void validate(const RunConfig& cfg, std::vector<std::string>& violations) {
    auto bad = [&](const std::string& path, const std::string& msg) {
        violations.push_back(path + ": " + msg);
    };

    if (cfg.grid.dimension != 1 && cfg.grid.dimension != 2)
        bad("grid.dimension", "must be 1 or 2");
    if (!(cfg.grid.extent_x > 0.0)) bad("grid.extent_x", "must be positive");
    if (cfg.grid.n_x < 2) bad("grid.n_x", "needs at least 2 cells");
    if (cfg.grid.dimension == 2) {
        if (!(cfg.grid.extent_y > 0.0)) bad("grid.extent_y", "must be positive");
        if (cfg.grid.n_y < 2) bad("grid.n_y", "needs at least 2 cells");
    }
    for (const auto& [path, tag] :
         {std::pair{"grid.left", cfg.grid.left}, {"grid.right", cfg.grid.right},
          {"grid.bottom", cfg.grid.bottom}, {"grid.top", cfg.grid.top}})
        if (!one_of(tag, {"dirichlet", "neumann"}))
            bad(path, "must be dirichlet or neumann, got '" + tag + "'");

    if (!one_of(cfg.velocity.kind, {"zero", "constant", "linear", "crowd_motion", "table"}))
        bad("velocity.kind", "unknown kind '" + cfg.velocity.kind + "'");
    if (cfg.velocity.kind == "crowd_motion" && !(cfg.velocity.blend_width > 0.0))
        bad("velocity.blend_width", "must be positive");
    if (cfg.velocity.kind == "table") {
        if (cfg.velocity.file.empty())
            bad("velocity.file", "table velocity needs a file");
        else if (!std::filesystem::exists(cfg.velocity.file))
            bad("velocity.file", "file does not exist: " + cfg.velocity.file);
    }

    if (!one_of(cfg.initial.kind, {"zero", "constant", "box", "bump"}))
        bad("initial.kind", "unknown kind '" + cfg.initial.kind + "'");
    if (std::abs(cfg.initial.value) > 1.0 + 1e-12)
        bad("initial.value", "initial density must satisfy |u0| <= 1");
    if (cfg.initial.kind == "bump" && !(cfg.initial.width > 0.0))
        bad("initial.width", "must be positive");

    if (!one_of(cfg.source.kind, {"zero", "constant", "box"}))
        bad("source.kind", "unknown kind '" + cfg.source.kind + "'");
    if (!one_of(cfg.reaction.kind,
                {"none", "zero", "constant", "linear_decay", "logistic", "table"}))
        bad("reaction.kind", "unknown kind '" + cfg.reaction.kind + "'");
    if (cfg.reaction.kind == "table") {
        if (cfg.reaction.table_file.empty())
            bad("reaction.table_file", "table reaction needs a file");
        else if (!std::filesystem::exists(cfg.reaction.table_file))
            bad("reaction.table_file", "file does not exist: " + cfg.reaction.table_file);
    }
    if (cfg.reaction.kind != "none" && cfg.source.kind != "zero")
        bad("reaction.kind", "a run uses either [source] or [reaction], not both");

    if (!(cfg.time.horizon > 0.0)) bad("time.horizon", "must be positive");
    if (!(cfg.time.tau > 0.0)) bad("time.tau", "must be positive");
    if (cfg.time.horizon > 0.0 && cfg.time.tau > 0.0) {
        const double ratio = cfg.time.horizon / cfg.time.tau;
        if (std::abs(ratio - std::llround(ratio)) > 1e-9 * std::max(ratio, 1.0))
            bad("time.tau", "T is not an integer multiple of tau");
    }

    if (!(cfg.solver.tol > 0.0)) bad("solver.tol", "must be positive");
    if (cfg.solver.max_iter < 1) bad("solver.max_iter", "must be at least 1");
    if (cfg.solver.graph_epsilon < 0.0) bad("solver.graph_epsilon", "must be nonnegative");
    if (!(cfg.solver.eps_factor > 1.0)) bad("solver.eps_factor", "must exceed 1");
    if (!(cfg.solver.eps_end <= cfg.solver.eps_start))
        bad("solver.eps_end", "schedule end must not exceed the start");
    if (!one_of(cfg.solver.graph_kind, {"two_phase", "one_phase"}))
        bad("solver.graph_kind", "must be two_phase or one_phase");

    if (cfg.output.snapshot_every < 1) bad("output.snapshot_every", "must be at least 1");
    if (!one_of(cfg.verify.suite, {"contraction", "comparison", "one_phase", "congestion_free",
                                   "stability", "entropy", "all"}))
        bad("verify.suite", "unknown suite '" + cfg.verify.suite + "'");
}

} // namespace

RunConfig parse_config_text(const std::string& text, const std::string& origin) {
    std::vector<std::string> violations;
    RawConfig raw = parse_raw(text, origin, violations);

    if (!raw.sections.count("grid"))
        violations.push_back(origin + ": missing required section [grid]");

    RunConfig cfg;
    Extractor ex(raw, violations, origin);
    ex.take_int("grid", "dimension", cfg.grid.dimension);
    ex.take_double("grid", "extent_x", cfg.grid.extent_x);
    ex.take_double("grid", "extent_y", cfg.grid.extent_y);
    ex.take_int("grid", "n_x", cfg.grid.n_x);
    ex.take_int("grid", "n_y", cfg.grid.n_y);
    ex.take_string("grid", "left", cfg.grid.left);
    ex.take_string("grid", "right", cfg.grid.right);
    ex.take_string("grid", "bottom", cfg.grid.bottom);
    ex.take_string("grid", "top", cfg.grid.top);

    ex.take_string("velocity", "kind", cfg.velocity.kind);
    ex.take_double("velocity", "value_x", cfg.velocity.value_x);
    ex.take_double("velocity", "value_y", cfg.velocity.value_y);
    ex.take_double("velocity", "slope_x", cfg.velocity.slope_x);
    ex.take_double("velocity", "center_x", cfg.velocity.center_x);
    ex.take_double("velocity", "slope_y", cfg.velocity.slope_y);
    ex.take_double("velocity", "center_y", cfg.velocity.center_y);
    ex.take_double("velocity", "blend_width", cfg.velocity.blend_width);
    ex.take_string("velocity", "file", cfg.velocity.file);

    ex.take_string("initial", "kind", cfg.initial.kind);
    ex.take_double("initial", "value", cfg.initial.value);
    ex.take_double("initial", "x_min", cfg.initial.x_min);
    ex.take_double("initial", "x_max", cfg.initial.x_max);
    ex.take_double("initial", "y_min", cfg.initial.y_min);
    ex.take_double("initial", "y_max", cfg.initial.y_max);
    ex.take_double("initial", "center", cfg.initial.center);
    ex.take_double("initial", "width", cfg.initial.width);

    ex.take_string("source", "kind", cfg.source.kind);
    ex.take_double("source", "value", cfg.source.value);
    ex.take_double("source", "x_min", cfg.source.x_min);
    ex.take_double("source", "x_max", cfg.source.x_max);
    ex.take_double("source", "y_min", cfg.source.y_min);
    ex.take_double("source", "y_max", cfg.source.y_max);

    ex.take_string("reaction", "kind", cfg.reaction.kind);
    ex.take_double("reaction", "value", cfg.reaction.value);
    ex.take_double("reaction", "a", cfg.reaction.a);
    ex.take_double("reaction", "b", cfg.reaction.b);
    ex.take_double("reaction", "rate", cfg.reaction.rate);
    ex.take_double("reaction", "r_modulus", cfg.reaction.r_modulus);
    ex.take_string("reaction", "table_file", cfg.reaction.table_file);

    ex.take_double("time", "T", cfg.time.horizon);
    ex.take_double("time", "tau", cfg.time.tau);
    ex.take_double("time", "fixed_point_tol", cfg.time.fixed_point_tol);

    ex.take_double("solver", "tol", cfg.solver.tol);
    ex.take_int("solver", "max_iter", cfg.solver.max_iter);
    ex.take_double("solver", "graph_epsilon", cfg.solver.graph_epsilon);
    ex.take_double("solver", "eps_start", cfg.solver.eps_start);
    ex.take_double("solver", "eps_end", cfg.solver.eps_end);
    ex.take_double("solver", "eps_factor", cfg.solver.eps_factor);
    ex.take_string("solver", "graph_kind", cfg.solver.graph_kind);
    ex.take_double("solver", "comp_tol", cfg.solver.comp_tol);
    ex.take_bool("solver", "enforce_admissibility", cfg.solver.enforce_admissibility);

    ex.take_string("output", "directory", cfg.output.directory);
    ex.take_int("output", "snapshot_every", cfg.output.snapshot_every);

    ex.take_string("verify", "suite", cfg.verify.suite);
    ex.take_double("verify", "tol_c", cfg.verify.tol_c);
    ex.take_double("verify", "tol_p", cfg.verify.tol_p);
    ex.take_double("verify", "c_e", cfg.verify.c_e);
    ex.take_double("verify", "c_cmp", cfg.verify.c_cmp);
    ex.take_unsigned("verify", "seed", cfg.verify.seed);
    ex.finish();

    validate(cfg, violations);
    if (!violations.empty()) {
        std::string msg = "invalid configuration (" + std::to_string(violations.size()) +
                          " problem" + (violations.size() > 1 ? "s" : "") + "):";
        for (const auto& v : violations) msg += "\n  " + v;
        throw ConfigError(msg, violations);
    }
    return cfg;
}

RunConfig parse_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open configuration file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str(), path);
}

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

std::string write_config(const RunConfig& c) {
    std::ostringstream out;
    out << "[grid]\n"
        << "dimension = " << c.grid.dimension << "\n"
        << "extent_x = " << fmt(c.grid.extent_x) << "\n"
        << "extent_y = " << fmt(c.grid.extent_y) << "\n"
        << "n_x = " << c.grid.n_x << "\n"
        << "n_y = " << c.grid.n_y << "\n"
        << "left = " << c.grid.left << "\n"
        << "right = " << c.grid.right << "\n"
        << "bottom = " << c.grid.bottom << "\n"
        << "top = " << c.grid.top << "\n\n";
    out << "[velocity]\n"
        << "kind = " << c.velocity.kind << "\n"
        << "value_x = " << fmt(c.velocity.value_x) << "\n"
        << "value_y = " << fmt(c.velocity.value_y) << "\n"
        << "slope_x = " << fmt(c.velocity.slope_x) << "\n"
        << "center_x = " << fmt(c.velocity.center_x) << "\n"
        << "slope_y = " << fmt(c.velocity.slope_y) << "\n"
        << "center_y = " << fmt(c.velocity.center_y) << "\n"
        << "blend_width = " << fmt(c.velocity.blend_width) << "\n";
    if (!c.velocity.file.empty()) out << "file = " << c.velocity.file << "\n";
    out << "\n[initial]\n"
        << "kind = " << c.initial.kind << "\n"
        << "value = " << fmt(c.initial.value) << "\n"
        << "x_min = " << fmt(c.initial.x_min) << "\n"
        << "x_max = " << fmt(c.initial.x_max) << "\n"
        << "y_min = " << fmt(c.initial.y_min) << "\n"
        << "y_max = " << fmt(c.initial.y_max) << "\n"
        << "center = " << fmt(c.initial.center) << "\n"
        << "width = " << fmt(c.initial.width) << "\n";
    out << "\n[source]\n"
        << "kind = " << c.source.kind << "\n"
        << "value = " << fmt(c.source.value) << "\n"
        << "x_min = " << fmt(c.source.x_min) << "\n"
        << "x_max = " << fmt(c.source.x_max) << "\n"
        << "y_min = " << fmt(c.source.y_min) << "\n"
        << "y_max = " << fmt(c.source.y_max) << "\n\n";
    out << "[reaction]\n"
        << "kind = " << c.reaction.kind << "\n"
        << "value = " << fmt(c.reaction.value) << "\n"
        << "a = " << fmt(c.reaction.a) << "\n"
        << "b = " << fmt(c.reaction.b) << "\n"
        << "rate = " << fmt(c.reaction.rate) << "\n"
        << "r_modulus = " << fmt(c.reaction.r_modulus) << "\n";
    if (!c.reaction.table_file.empty()) out << "table_file = " << c.reaction.table_file << "\n";
    out << "\n[time]\n"
        << "T = " << fmt(c.time.horizon) << "\n"
        << "tau = " << fmt(c.time.tau) << "\n"
        << "fixed_point_tol = " << fmt(c.time.fixed_point_tol) << "\n\n";
    out << "[solver]\n"
        << "tol = " << fmt(c.solver.tol) << "\n"
        << "max_iter = " << c.solver.max_iter << "\n"
        << "graph_epsilon = " << fmt(c.solver.graph_epsilon) << "\n"
        << "eps_start = " << fmt(c.solver.eps_start) << "\n"
        << "eps_end = " << fmt(c.solver.eps_end) << "\n"
        << "eps_factor = " << fmt(c.solver.eps_factor) << "\n"
        << "graph_kind = " << c.solver.graph_kind << "\n"
        << "comp_tol = " << fmt(c.solver.comp_tol) << "\n"
        << "enforce_admissibility = " << (c.solver.enforce_admissibility ? "true" : "false")
        << "\n\n";
    out << "[output]\n"
        << "directory = " << c.output.directory << "\n"
        << "snapshot_every = " << c.output.snapshot_every << "\n\n";
    out << "[verify]\n"
        << "suite = " << c.verify.suite << "\n"
        << "tol_c = " << fmt(c.verify.tol_c) << "\n"
        << "tol_p = " << fmt(c.verify.tol_p) << "\n"
        << "c_e = " << fmt(c.verify.c_e) << "\n"
        << "c_cmp = " << fmt(c.verify.c_cmp) << "\n"
        << "seed = " << c.verify.seed << "\n";
    return out.str();
}

GridPtr build_grid(const GridConfig& cfg) {
    auto tag = [](const std::string& s) {
        return s == "dirichlet" ? BoundaryTag::Dirichlet : BoundaryTag::Neumann;
    };
    if (cfg.dimension == 1)
        return StructuredGrid::make_1d(cfg.extent_x, cfg.n_x, tag(cfg.left), tag(cfg.right));
    return StructuredGrid::make_2d(cfg.extent_x, cfg.extent_y, cfg.n_x, cfg.n_y, tag(cfg.left),
                                   tag(cfg.right), tag(cfg.bottom), tag(cfg.top));
}

VelocityField build_velocity(const VelocityConfig& cfg, const GridPtr& grid) {
    if (cfg.kind == "zero") return VelocityField::zero(grid);
    if (cfg.kind == "constant") return VelocityField::constant(grid, cfg.value_x, cfg.value_y);
    if (cfg.kind == "linear") {
        const VelocityConfig c = cfg;
        return VelocityField::from_function(
            grid, [c](std::array<double, 2> x) -> std::array<double, 2> {
                return {c.slope_x * (x[0] - c.center_x), c.slope_y * (x[1] - c.center_y)};
            });
    }
    if (cfg.kind == "crowd_motion") return crowd_motion_field(grid, cfg.blend_width);
    if (cfg.kind == "table") {
        std::ifstream in(cfg.file);
        if (!in) throw ConfigError("cannot open velocity table: " + cfg.file);
        std::vector<double> fx(grid->dimension() == 1 ? grid->cells(0) + 1
                                                      : (grid->cells(0) + 1) * grid->cells(1),
                               0.0);
        std::vector<double> fy(grid->dimension() == 1 ? 0 : grid->cells(0) * (grid->cells(1) + 1),
                               0.0);
        std::string line;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            line = trim(line);
            if (line.empty() || line.front() == '#') continue;
            int axis = -1, index = -1;
            double value = 0.0;
            char extra;
            if (std::sscanf(line.c_str(), "%d ,%d ,%lf %c", &axis, &index, &value, &extra) != 3 &&
                std::sscanf(line.c_str(), "%d,%d,%lf", &axis, &index, &value) != 3)
                throw ConfigError(cfg.file + ":" + std::to_string(lineno) +
                                  ": expected rows 'axis,face_index,value'");
            auto& target = axis == 0 ? fx : fy;
            if (axis < 0 || axis > 1 || index < 0 || index >= static_cast<int>(target.size()))
                throw ConfigError(cfg.file + ":" + std::to_string(lineno) +
                                  ": face index out of range");
            target[index] = value;
        }
        return VelocityField::from_face_values(grid, std::move(fx), std::move(fy));
    }
    throw ConfigError("unknown velocity kind: " + cfg.kind);
}

SolverParams build_solver_params(const SolverConfig& cfg) {
    SolverParams params;
    params.tol = cfg.tol;
    params.max_iter = cfg.max_iter;
    params.comp_tol = cfg.comp_tol;
    params.graph_kind = cfg.graph_kind == "one_phase" ? GraphKind::OnePhase : GraphKind::TwoPhase;
    params.enforce_admissibility = cfg.enforce_admissibility;
    if (cfg.graph_epsilon > 0.0) {
        params.eps_schedule = {cfg.graph_epsilon};
    } else {
        for (double e = cfg.eps_start; e >= 0.99 * cfg.eps_end; e /= cfg.eps_factor)
            params.eps_schedule.push_back(e);
    }
    return params;
}

namespace {

ReactionTerm build_reaction(const ReactionConfig& cfg) {
    if (cfg.kind == "zero") return ReactionTerm::zero();
    if (cfg.kind == "constant") return ReactionTerm::constant(cfg.value);
    if (cfg.kind == "linear_decay") return ReactionTerm::linear_decay(cfg.a, cfg.b);
    if (cfg.kind == "logistic") return ReactionTerm::logistic(cfg.rate);
    if (cfg.kind == "table") {
        std::ifstream in(cfg.table_file);
        if (!in) throw ConfigError("cannot open reaction table: " + cfg.table_file);
        std::vector<double> rs, gs;
        std::string line;
        while (std::getline(in, line)) {
            line = trim(line);
            if (line.empty() || line.front() == '#') continue;
            double r, g;
            if (std::sscanf(line.c_str(), "%lf,%lf", &r, &g) != 2)
                throw ConfigError(cfg.table_file + ": expected rows 'r,g'");
            rs.push_back(r);
            gs.push_back(g);
        }
        return ReactionTerm::table(std::move(rs), std::move(gs), cfg.r_modulus);
    }
    throw ConfigError("unknown reaction kind: " + cfg.kind);
}

} // namespace

EvolutionProblem build_problem(const RunConfig& cfg, int refine_level) {
    const int factor = 1 << refine_level;
    GridConfig gcfg = cfg.grid;
    gcfg.n_x *= factor;
    gcfg.n_y *= factor;
    GridPtr grid = build_grid(gcfg);

    ScalarField u0(grid);
    if (cfg.initial.kind == "constant") {
        for (int c = 0; c < u0.size(); ++c) u0[c] = cfg.initial.value;
    } else if (cfg.initial.kind == "box") {
        for (int c = 0; c < u0.size(); ++c) {
            const auto x = grid->cell_center(c);
            const bool in_x = x[0] >= cfg.initial.x_min && x[0] <= cfg.initial.x_max;
            const bool in_y =
                grid->dimension() == 1 || (x[1] >= cfg.initial.y_min && x[1] <= cfg.initial.y_max);
            u0[c] = (in_x && in_y) ? cfg.initial.value : 0.0;
        }
    } else if (cfg.initial.kind == "bump") {
        for (int c = 0; c < u0.size(); ++c) {
            const double s = (grid->cell_center(c)[0] - cfg.initial.center) / cfg.initial.width;
            u0[c] = std::abs(s) < 1.0 ? cfg.initial.value * std::exp(1.0 - 1.0 / (1.0 - s * s))
                                      : 0.0;
        }
    }

    EvolutionProblem prob{grid, build_velocity(cfg.velocity, grid), std::move(u0),
                          cfg.time.horizon, cfg.time.tau / factor};
    prob.solver = build_solver_params(cfg.solver);
    if (refine_level > 0)
        for (double& e : prob.solver.eps_schedule) e /= factor;
    prob.fixed_point_tol = cfg.time.fixed_point_tol;

    if (cfg.reaction.kind != "none") {
        prob.reaction = build_reaction(cfg.reaction);
    } else if (cfg.source.kind == "constant") {
        const double v = cfg.source.value;
        prob.source = [v](double, int) { return v; };
    } else if (cfg.source.kind == "box") {
        const SourceConfig s = cfg.source;
        const GridPtr g = grid;
        prob.source = [s, g](double, int c) {
            const auto x = g->cell_center(c);
            const bool in_x = x[0] >= s.x_min && x[0] <= s.x_max;
            const bool in_y = g->dimension() == 1 || (x[1] >= s.y_min && x[1] <= s.y_max);
            return (in_x && in_y) ? s.value : 0.0;
        };
    }
    return prob;
}

} // namespace heleshaw
