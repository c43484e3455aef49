#pragma once

#include <iosfwd>
#include <string>

#include "eit/diagnostics.hpp"

namespace eit {

/// %.17g rendering used for every CSV number (byte-stable round trips).
std::string format_g17(double v);

/// Field snapshot, format tag "eit-snapshot v1": one row per cell,
/// coordinates first, then rho, s, u, sigma, q, higher fluxes, gamma,
/// varsigma; the column list is spelled out in the header.
void write_snapshot_csv(std::ostream& os, const FieldSet& st, double t,
                        const std::string& scenario_hash);

/// Budget series, format tag "eit-runrecord v1".
void write_record_csv(std::ostream& os, const RunRecord& rec);

void write_snapshot_file(const std::string& path, const FieldSet& st, double t,
                         const std::string& scenario_hash);
void write_record_file(const std::string& path, const RunRecord& rec);

}  // namespace eit
