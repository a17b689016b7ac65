#pragma once

#include <filesystem>
#include <json.hpp>
#include <string>
#include <vector>

#include "vortexem/fields.hpp"
#include "vortexem/gp_radial.hpp"
#include "vortexem/monopole.hpp"
#include "vortexem/quantities.hpp"

namespace vortexem::io {

namespace fs = std::filesystem;

/// Shortest text that reads back to the same double, at most 17 significant digits.
std::string format_double(double v);

/// CSV dialect: comma separated, '.' decimal point, LF line endings, no quoting.
/// Every writer also emits a JSON sidecar next to the CSV (same stem, .json).
fs::path sidecar_path(const fs::path& csv);

/// xi,psi,psi2,dpsi2_dxi
void write_profile(const fs::path& csv, const CondensateProfile& p);
/// Reads a profile CSV and its sidecar back.  Throws std::runtime_error on schema errors.
CondensateProfile read_profile(const fs::path& csv);

/// xi,areal_density,cumulative
void write_charge(const fs::path& csv, const ChargeProfile& cp, const DerivedScenario& ds,
                  const nlohmann::json& neutrality);

/// xi,z,phi_over_phi0 (rows ordered by xi, then z)
void write_potential(const fs::path& csv, const PotentialGrid& pg, const DerivedScenario& ds);

/// xi,field
void write_field(const fs::path& csv, const std::vector<double>& xi, const std::vector<double>& field,
                 const DerivedScenario& ds);

nlohmann::json to_json(const DerivedScenario& ds);
nlohmann::json to_json(const NeutralityReport& r);

/// Record of one CLI run.  Written as JSON; `argv` is what --replay re-executes.
struct RunManifest {
    std::string command;
    std::vector<std::string> argv;
    nlohmann::json scenario;      // DerivedScenario snapshot (null when not applicable)
    nlohmann::json settings;
    std::vector<std::string> outputs;
    std::string started;
    std::string finished;
    nlohmann::json diagnostics = nlohmann::json::object();
    std::vector<std::string> assumptions;
};

void write_manifest(const fs::path& path, const RunManifest& m);
RunManifest read_manifest(const fs::path& path);

/// UTC time in ISO 8601.
std::string utc_now();

}  // namespace vortexem::io
