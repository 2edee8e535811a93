#pragma once

#include "aniso/diagnostics.hpp"
#include "aniso/kinetic.hpp"
#include "aniso/model.hpp"

#include <json.hpp>

#include <iosfwd>
#include <string>

namespace aniso {

inline constexpr const char* kDiagnosticsHeader =
    "t,mean,l1_to_mean,l2_energy,linf,dissipation_resolved,dissipation_budget";

/// "# <label> created <UTC timestamp>"; the only non-reproducible line of any artifact.
std::string timestamp_comment(const std::string& label);

void write_diagnostics_csv(std::ostream& out, const Trajectory& traj, const std::string& comment);
/// Reads rows back; lines starting with '#' are skipped.
Trajectory read_diagnostics_csv(std::istream& in);

/// "# t=<time>" then columns x[,y],u, one row per cell, row-major.
void write_snapshot_csv(std::ostream& out, const CellField& field, const PeriodicGrid& grid);

void write_condition_csv(std::ostream& out, const ConditionReport& report, int dimension,
                         const std::string& comment);

nlohmann::json to_json(const AuditReport& report);
nlohmann::json to_json(const ModelValidationReport& report);
nlohmann::json to_json(const ConditionReport& report);
/// One object per threshold, then one with the tail fit.
std::vector<nlohmann::json> to_json_lines(const DecaySummary& summary);

std::string to_text(const AuditReport& report);
std::string to_text(const DecaySummary& summary);
std::string to_text(const ModelValidationReport& report);

}  // namespace aniso
