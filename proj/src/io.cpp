#include "vortexem/io.hpp"

#include <charconv>
#include <chrono>
#include <ctime>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace vortexem::io {

using nlohmann::json;

namespace {

std::ofstream open_out(const fs::path& path) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
    return out;
}

void write_json(const fs::path& path, const json& j) {
    auto out = open_out(path);
    out << j.dump(2) << '\n';
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, ',')) cells.push_back(cell);
    return cells;
}

double parse_cell(const std::string& text, const fs::path& path, std::size_t row) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size())
        throw std::runtime_error(path.string() + ": row " + std::to_string(row) + ": bad number '" + text + "'");
    return v;
}

}  // namespace

std::string format_double(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    if (ec != std::errc()) throw std::runtime_error("format_double failed");
    return std::string(buf, ptr);
}

fs::path sidecar_path(const fs::path& csv) {
    fs::path p = csv;
    p.replace_extension(".json");
    return p;
}

void write_profile(const fs::path& csv, const CondensateProfile& p) {
    const auto u = p.density();
    const auto du = density_derivative(p);
    auto out = open_out(csv);
    out << "xi,psi,psi2,dpsi2_dxi\n";
    for (std::size_t i = 0; i < p.grid.size(); ++i)
        out << format_double(p.grid[i]) << ',' << format_double(p.psi[i]) << ',' << format_double(u[i]) << ','
            << format_double(du[i]) << '\n';
    write_json(sidecar_path(csv), json{{"n", p.n},
                                       {"n1d_a", p.n1d_a},
                                       {"eigenvalue_eps", p.eigenvalue},
                                       {"solver_tag", std::string(to_string(p.solver))},
                                       {"grid_size", p.grid.size()},
                                       {"xi_min", p.grid.xi_min()},
                                       {"residual", p.residual},
                                       {"iterations", p.iterations},
                                       {"norm", p.norm()}});
}

CondensateProfile read_profile(const fs::path& csv) {
    std::ifstream in(csv, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open profile '" + csv.string() + "'");
    std::string line;
    if (!std::getline(in, line) || line != "xi,psi,psi2,dpsi2_dxi")
        throw std::runtime_error(csv.string() + ": expected header 'xi,psi,psi2,dpsi2_dxi'");
    std::vector<double> xi, psi;
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty()) continue;
        const auto cells = split(line);
        if (cells.size() != 4)
            throw std::runtime_error(csv.string() + ": row " + std::to_string(row) + ": expected 4 columns");
        xi.push_back(parse_cell(cells[0], csv, row));
        psi.push_back(parse_cell(cells[1], csv, row));
    }

    std::ifstream side(sidecar_path(csv));
    if (!side) throw std::runtime_error("missing sidecar '" + sidecar_path(csv).string() + "'");
    const json meta = json::parse(side);
    CondensateProfile p{RadialGrid::from_points(std::move(xi)), std::move(psi)};
    p.n = meta.at("n").get<int>();
    p.n1d_a = meta.at("n1d_a").get<double>();
    p.eigenvalue = meta.at("eigenvalue_eps").get<double>();
    p.solver = parse_solver_tag(meta.at("solver_tag").get<std::string>());
    p.residual = meta.value("residual", 0.0);
    p.iterations = meta.value("iterations", 0);
    if (meta.at("grid_size").get<std::size_t>() != p.grid.size())
        throw std::runtime_error(csv.string() + ": row count does not match sidecar grid_size");
    return p;
}

void write_charge(const fs::path& csv, const ChargeProfile& cp, const DerivedScenario& ds,
                  const json& neutrality) {
    auto out = open_out(csv);
    out << "xi,areal_density,cumulative\n";
    for (std::size_t i = 0; i < cp.grid.size(); ++i)
        out << format_double(cp.grid[i]) << ',' << format_double(cp.areal_density[i]) << ','
            << format_double(cp.cumulative[i]) << '\n';
    const std::string q = ds.charge_unit();
    write_json(sidecar_path(csv),
               json{{"kind", std::string(to_string(cp.kind))},
                    {"charge", cp.magnetic ? "magnetic" : "electric"},
                    {"total", cp.total},
                    {"coefficient", cp.coefficient},
                    {"areal_prefactor", cp.areal_prefactor},
                    {"volume_factor", cp.volume_factor},
                    {"delta_weight", cp.delta_weight},
                    {"units", {{"areal_density", q + " / m^3"}, {"cumulative", q}, {"coefficient", q},
                               {"areal_prefactor", q + " / m^3"}, {"volume_factor", "m^3"}}},
                    {"neutrality", neutrality}});
}

void write_potential(const fs::path& csv, const PotentialGrid& pg, const DerivedScenario& ds) {
    auto out = open_out(csv);
    out << "xi,z,phi_over_phi0\n";
    for (std::size_t i = 0; i < pg.xi_values.size(); ++i)
        for (std::size_t j = 0; j < pg.z_values.size(); ++j)
            out << format_double(pg.xi_values[i]) << ',' << format_double(pg.z_values[j]) << ','
                << format_double(pg.at(i, j)) << '\n';
    json rim = json::array();
    for (auto [i, j] : pg.rim_points) rim.push_back({{"xi", pg.xi_values[i]}, {"z", pg.z_values[j]}, {"nudge", -1e-6}});
    double max_err = 0.0;
    for (double e : pg.error) max_err = std::max(max_err, e);
    write_json(sidecar_path(csv), json{{"f_aspect", pg.f_aspect},
                                       {"quad_tol", pg.quad_tol},
                                       {"weighted", pg.weighted},
                                       {"nxi", pg.xi_values.size()},
                                       {"nz", pg.z_values.size()},
                                       {"phi0", ds.phi0},
                                       {"phi0_unit", ds.potential_unit()},
                                       {"rim_points", rim},
                                       {"failed_points", pg.failed_points},
                                       {"max_error_estimate", max_err},
                                       {"z_symmetry", "only z >= 0 stored; phi(xi, -z) = phi(xi, z)"}});
}

void write_field(const fs::path& csv, const std::vector<double>& xi, const std::vector<double>& field,
                 const DerivedScenario& ds) {
    auto out = open_out(csv);
    out << "xi,field\n";
    for (std::size_t i = 0; i < xi.size(); ++i) out << format_double(xi[i]) << ',' << format_double(field[i]) << '\n';
    write_json(sidecar_path(csv), json{{"field_unit", ds.field_unit()},
                                       {"field_prefactor", ds.field_prefactor()},
                                       {"definition", "infinite-cylinder Gauss-law radial field, "
                                                      "field_prefactor * |psi(xi)|^2 / xi inside, 0 outside"}});
}

json to_json(const DerivedScenario& ds) {
    const Scenario& s = ds.underlying;
    json j{{"name", s.name},
           {"kind", std::string(to_string(s.kind))},
           {"n", s.vortex_order},
           {"mass_kg", s.mass},
           {"scattering_a_m", s.scattering_length},
           {"n1d_a", s.n1d_a},
           {"R0_m", s.R0},
           {"z0_m", s.z0},
           {"n1d_per_m", ds.n1d},
           {"atom_count", ds.atom_count},
           {"f_aspect", ds.aspect},
           {"phi0", ds.phi0},
           {"phi0_unit", ds.potential_unit()},
           {"charge_coefficient", ds.charge_coefficient},
           {"charge_unit", ds.charge_unit()},
           {"scenario_file", format_scenario(s)}};
    if (s.dipole) j["dipole_C_m"] = *s.dipole;
    if (s.moment) j["moment_A_m2"] = *s.moment;
    if (s.chi) j["chi"] = *s.chi;
    if (s.applied_field) j["applied_field_V_per_m"] = *s.applied_field;
    if (s.kind == DipoleKind::Susceptibility) j["susceptibility_convention"] = std::string(to_string(s.convention));
    return j;
}

json to_json(const NeutralityReport& r) {
    return json{{"threshold", NeutralityReport::threshold},
                {"delta_weight", r.delta_weight},
                {"total_residual", r.total_residual},
                {"max_imbalance", r.max_imbalance},
                {"psi_at_xi_min_sq", r.psi_at_xi_min_sq},
                {"delta_ok", r.delta_ok},
                {"total_ok", r.total_ok},
                {"imbalance_ok", r.imbalance_ok},
                {"ok", r.ok()}};
}

void write_manifest(const fs::path& path, const RunManifest& m) {
    write_json(path, json{{"command", m.command},
                          {"argv", m.argv},
                          {"scenario", m.scenario},
                          {"settings", m.settings},
                          {"outputs", m.outputs},
                          {"timestamps", {{"started", m.started}, {"finished", m.finished}}},
                          {"diagnostics", m.diagnostics},
                          {"assumptions", m.assumptions}});
}

RunManifest read_manifest(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open manifest '" + path.string() + "'");
    const json j = json::parse(in);
    RunManifest m;
    m.command = j.at("command").get<std::string>();
    m.argv = j.at("argv").get<std::vector<std::string>>();
    m.scenario = j.value("scenario", json());
    m.settings = j.value("settings", json::object());
    m.outputs = j.value("outputs", std::vector<std::string>{});
    if (j.contains("timestamps")) {
        m.started = j["timestamps"].value("started", "");
        m.finished = j["timestamps"].value("finished", "");
    }
    m.diagnostics = j.value("diagnostics", json::object());
    m.assumptions = j.value("assumptions", std::vector<std::string>{});
    return m;
}

std::string utc_now() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace vortexem::io
