#include "heleshaw/output.hpp"

#include <fstream>

namespace heleshaw {

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path);
    if (!out) throw Error("cannot open output file: " + path.string());
    out.precision(17);
    return out;
}

} // namespace

void write_field_csv(const std::filesystem::path& path, const ScalarField& field) {
    auto out = open_out(path);
    const StructuredGrid& g = field.grid();
    if (g.dimension() == 1) {
        out << "i,x,value\n";
        for (int c = 0; c < field.size(); ++c)
            out << c << "," << g.cell_center(c)[0] << "," << field[c] << "\n";
        return;
    }
    out << "i,j,x,y,value\n";
    for (int c = 0; c < field.size(); ++c) {
        const auto x = g.cell_center(c);
        out << c % g.cells(0) << "," << c / g.cells(0) << "," << x[0] << "," << x[1] << ","
            << field[c] << "\n";
    }
}

void write_snapshot_csv(const std::filesystem::path& path, double t, const ScalarField& u,
                        const ScalarField& p) {
    auto out = open_out(path);
    const StructuredGrid& g = u.grid();
    if (g.dimension() == 1) {
        out << "t,cell,x,u,p\n";
        for (int c = 0; c < u.size(); ++c)
            out << t << "," << c << "," << g.cell_center(c)[0] << "," << u[c] << "," << p[c]
                << "\n";
        return;
    }
    out << "t,cell,x,y,u,p\n";
    for (int c = 0; c < u.size(); ++c) {
        const auto x = g.cell_center(c);
        out << t << "," << c << "," << x[0] << "," << x[1] << "," << u[c] << "," << p[c] << "\n";
    }
}

void write_long_csv(const std::filesystem::path& path, const Trajectory& traj) {
    auto out = open_out(path);
    const StructuredGrid& g = *traj.grid_ptr();
    out << (g.dimension() == 1 ? "t,cell,x,u,p\n" : "t,cell,x,y,u,p\n");
    for (int i = 0; i <= traj.steps(); ++i) {
        const ScalarField& u = traj.u(i);
        const ScalarField& p = traj.p(i);
        for (int c = 0; c < u.size(); ++c) {
            const auto x = g.cell_center(c);
            out << traj.time(i) << "," << c << "," << x[0];
            if (g.dimension() == 2) out << "," << x[1];
            out << "," << u[c] << "," << p[c] << "\n";
        }
    }
}

nlohmann::json config_to_json(const RunConfig& c) {
    nlohmann::json j;
    j["grid"] = {{"dimension", c.grid.dimension}, {"extent_x", c.grid.extent_x},
                 {"extent_y", c.grid.extent_y},   {"n_x", c.grid.n_x},
                 {"n_y", c.grid.n_y},             {"left", c.grid.left},
                 {"right", c.grid.right},         {"bottom", c.grid.bottom},
                 {"top", c.grid.top}};
    j["velocity"] = {{"kind", c.velocity.kind},       {"value_x", c.velocity.value_x},
                     {"value_y", c.velocity.value_y}, {"slope_x", c.velocity.slope_x},
                     {"center_x", c.velocity.center_x}, {"slope_y", c.velocity.slope_y},
                     {"center_y", c.velocity.center_y}, {"blend_width", c.velocity.blend_width},
                     {"file", c.velocity.file}};
    j["initial"] = {{"kind", c.initial.kind}, {"value", c.initial.value},
                    {"x_min", c.initial.x_min}, {"x_max", c.initial.x_max},
                    {"y_min", c.initial.y_min}, {"y_max", c.initial.y_max},
                    {"center", c.initial.center}, {"width", c.initial.width}};
    j["source"] = {{"kind", c.source.kind}, {"value", c.source.value},
                   {"x_min", c.source.x_min}, {"x_max", c.source.x_max},
                   {"y_min", c.source.y_min}, {"y_max", c.source.y_max}};
    j["reaction"] = {{"kind", c.reaction.kind}, {"value", c.reaction.value},
                     {"a", c.reaction.a},       {"b", c.reaction.b},
                     {"rate", c.reaction.rate}, {"r_modulus", c.reaction.r_modulus},
                     {"table_file", c.reaction.table_file}};
    j["time"] = {{"T", c.time.horizon},
                 {"tau", c.time.tau},
                 {"fixed_point_tol", c.time.fixed_point_tol}};
    j["solver"] = {{"tol", c.solver.tol},
                   {"max_iter", c.solver.max_iter},
                   {"graph_epsilon", c.solver.graph_epsilon},
                   {"eps_start", c.solver.eps_start},
                   {"eps_end", c.solver.eps_end},
                   {"eps_factor", c.solver.eps_factor},
                   {"graph_kind", c.solver.graph_kind},
                   {"comp_tol", c.solver.comp_tol},
                   {"enforce_admissibility", c.solver.enforce_admissibility}};
    j["output"] = {{"directory", c.output.directory}, {"snapshot_every", c.output.snapshot_every}};
    j["verify"] = {{"suite", c.verify.suite}, {"tol_c", c.verify.tol_c},
                   {"tol_p", c.verify.tol_p}, {"c_e", c.verify.c_e},
                   {"c_cmp", c.verify.c_cmp}, {"seed", c.verify.seed}};
    return j;
}

nlohmann::json report_to_json(const PropertyReport& rep) {
    return {{"property", rep.property},
            {"scenario", rep.scenario_id},
            {"worst_margin", rep.worst_margin},
            {"tolerance", rep.tolerance},
            {"margins", rep.margins},
            {"passed", rep.passed}};
}

nlohmann::json trajectory_summary(const RunConfig& cfg, const Trajectory& traj,
                                  double wall_seconds) {
    nlohmann::json j;
    j["schema_version"] = kSummarySchemaVersion;
    j["config"] = config_to_json(cfg);
    j["wall_seconds"] = wall_seconds;
    j["steps"] = traj.steps();
    j["eps_final"] = traj.eps_final();

    nlohmann::json stats = nlohmann::json::array();
    for (int i = 0; i < traj.steps(); ++i) {
        const StepReport& r = traj.report(i);
        stats.push_back({{"t", traj.time(i + 1)},
                         {"newton_iterations", r.newton_iterations},
                         {"residual_norm", r.residual_norm},
                         {"complementarity", r.complementarity},
                         {"fixed_point_iterations", r.fixed_point_iterations},
                         {"outflux", r.outflux},
                         {"mass_residual", r.mass_residual}});
    }
    j["step_statistics"] = std::move(stats);

    nlohmann::json ledger = nlohmann::json::array();
    for (const auto& e : mass_ledger(traj))
        ledger.push_back({{"mass_prev", e.mass_prev},
                          {"mass_next", e.mass_next},
                          {"source_integral", e.source_integral},
                          {"outflux", e.outflux},
                          {"residual", e.residual}});
    j["mass_ledger"] = std::move(ledger);
    return j;
}

void write_json(const std::filesystem::path& path, const nlohmann::json& doc) {
    auto out = open_out(path);
    out << doc.dump(2) << "\n";
}

} // namespace heleshaw
