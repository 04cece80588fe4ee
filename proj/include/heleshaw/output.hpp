#ifndef HELESHAW_OUTPUT_HPP
#define HELESHAW_OUTPUT_HPP

#include <filesystem>
#include <string>

#include <json.hpp>

#include "heleshaw/config.hpp"
#include "heleshaw/verification.hpp"

namespace heleshaw {

// All artifact files are deterministic given the configuration: CSV for
// fields, JSON for reports. Column layouts are documented in the README.

inline constexpr int kSummarySchemaVersion = 1;

void write_field_csv(const std::filesystem::path& path, const ScalarField& field);

/// One file per snapshot: t, cell, x (, y), u, p.
void write_snapshot_csv(const std::filesystem::path& path, double t, const ScalarField& u,
                        const ScalarField& p);

/// Long-format CSV over the whole trajectory (plot friendly).
void write_long_csv(const std::filesystem::path& path, const Trajectory& traj);

nlohmann::json config_to_json(const RunConfig& cfg);
nlohmann::json report_to_json(const PropertyReport& rep);

/// Run summary: config echo, per-step solver statistics, mass ledger,
/// property verdicts, wall-clock timings.
nlohmann::json trajectory_summary(const RunConfig& cfg, const Trajectory& traj,
                                  double wall_seconds);

void write_json(const std::filesystem::path& path, const nlohmann::json& doc);

} // namespace heleshaw

#endif
