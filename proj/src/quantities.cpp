#include "vortexem/quantities.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <sstream>

#include "vortexem/constants.hpp"
#include "vortexem/errors.hpp"

namespace vortexem {

namespace {

using C = Constants;

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return std::string(s.substr(first, last - first + 1));
}

double parse_number(const std::string& key, const std::string& text) {
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used != text.size() || !std::isfinite(v)) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw ScenarioError("scenario key '" + key + "': not a finite number: '" + text + "'");
    }
}

}  // namespace

std::string_view to_string(DipoleKind kind) {
    switch (kind) {
        case DipoleKind::ElectricDipole: return "electric_dipole";
        case DipoleKind::MagneticDipole: return "magnetic_dipole";
        case DipoleKind::Susceptibility: return "susceptibility";
    }
    return "unknown";
}

std::string_view to_string(SusceptibilityConvention convention) {
    return convention == SusceptibilityConvention::SI ? "si" : "as_printed";
}

DipoleKind parse_dipole_kind(std::string_view text) {
    if (text == "electric_dipole") return DipoleKind::ElectricDipole;
    if (text == "magnetic_dipole") return DipoleKind::MagneticDipole;
    if (text == "susceptibility") return DipoleKind::Susceptibility;
    throw ScenarioError("unknown scenario kind '" + std::string(text) +
                        "' (expected electric_dipole, magnetic_dipole or susceptibility)");
}

SusceptibilityConvention parse_susceptibility_convention(std::string_view text) {
    if (text == "as_printed") return SusceptibilityConvention::AsPrinted;
    if (text == "si") return SusceptibilityConvention::SI;
    throw ScenarioError("unknown susceptibility_convention '" + std::string(text) +
                        "' (expected as_printed or si)");
}

void Scenario::validate() const {
    if (vortex_order < 0) throw ScenarioError("vortex order n must be >= 0");
    if (!(mass > 0.0)) throw ScenarioError("atom mass must be positive");
    if (!(R0 > 0.0)) throw ScenarioError("R0 must be positive");
    if (!(z0 > 0.0)) throw ScenarioError("z0 must be positive");
    if (!(scattering_length >= 0.0)) throw ScenarioError("scattering length must be >= 0");
    if (!(n1d_a >= 0.0)) throw ScenarioError("n1d_a must be >= 0");
    if (n1d_a > 0.0 && scattering_length == 0.0)
        throw ScenarioError("n1d_a > 0 needs a positive scattering length (n1d = n1d_a / a)");

    const bool has_d = dipole.has_value();
    const bool has_mu = moment.has_value();
    const bool has_chi = chi.has_value() || applied_field.has_value();
    switch (kind) {
        case DipoleKind::ElectricDipole:
            if (!has_d || has_mu || has_chi)
                throw ScenarioError("electric_dipole scenario needs exactly a dipole moment");
            break;
        case DipoleKind::MagneticDipole:
            if (!has_mu || has_d || has_chi)
                throw ScenarioError("magnetic_dipole scenario needs exactly a magnetic moment");
            break;
        case DipoleKind::Susceptibility:
            if (!chi || !applied_field || has_d || has_mu)
                throw ScenarioError("susceptibility scenario needs exactly chi and an applied field");
            break;
    }
}

double DerivedScenario::field_source_constant() const {
    return sources_magnetic_charge() ? C::mu0 : C::eps0;
}

double DerivedScenario::polarisation_amplitude() const {
    const Scenario& s = underlying;
    const double disc = 2.0 * pi * s.R0 * s.R0;
    switch (s.kind) {
        case DipoleKind::ElectricDipole: return n1d * *s.dipole / disc;
        case DipoleKind::MagneticDipole: return -C::mu0 * n1d * *s.moment / disc;
        case DipoleKind::Susceptibility: {
            const double p = *s.chi * *s.applied_field;
            return s.convention == SusceptibilityConvention::SI ? C::eps0 * p : p;
        }
    }
    return 0.0;
}

double DerivedScenario::areal_prefactor() const {
    const Scenario& s = underlying;
    return 2.0 * pi * field_source_constant() * C::hbar * s.vortex_order * polarisation_amplitude() /
           (s.mass * s.R0 * s.R0);
}

double DerivedScenario::field_prefactor() const {
    const Scenario& s = underlying;
    return C::hbar * s.vortex_order * polarisation_amplitude() / (s.mass * s.R0);
}

DerivedScenario derive_geometry(const Scenario& s) {
    s.validate();
    DerivedScenario ds;
    ds.underlying = s;
    ds.n1d = s.n1d_a > 0.0 ? s.n1d_a / s.scattering_length : 0.0;
    ds.atom_count = 2.0 * s.z0 * ds.n1d;
    ds.aspect = s.R0 / s.z0;
    ds.phi0 = scaling_potential(ds);
    ds.charge_coefficient = charge_coefficient(ds);
    return ds;
}

double scaling_potential(const DerivedScenario& ds) {
    const Scenario& s = ds.underlying;
    const double n = s.vortex_order;
    const double denom = 8.0 * pi * pi * s.mass * s.R0 * s.R0;
    switch (s.kind) {
        case DipoleKind::ElectricDipole:
            return C::hbar * n * ds.n1d * *s.dipole / denom;
        case DipoleKind::MagneticDipole:
            return -C::hbar * n * ds.n1d * C::mu0 * *s.moment / denom;
        case DipoleKind::Susceptibility: {
            // n1d d -> 2 pi R0^2 P
            const double p = *s.chi * *s.applied_field *
                             (s.convention == SusceptibilityConvention::SI ? C::eps0 : 1.0);
            return C::hbar * n * 2.0 * pi * s.R0 * s.R0 * p / denom;
        }
    }
    return 0.0;
}

double charge_coefficient(const DerivedScenario& ds) {
    const Scenario& s = ds.underlying;
    const double n = s.vortex_order;
    const double N = ds.atom_count;
    const double mr2 = s.mass * s.R0 * s.R0;
    switch (s.kind) {
        case DipoleKind::ElectricDipole:
            return C::hbar * n * N * C::mu0 * *s.dipole / mr2;
        case DipoleKind::MagneticDipole:
            return -C::hbar * n * N * *s.moment / (mr2 * C::c * C::c);
        case DipoleKind::Susceptibility: {
            // N d = 2 z0 n1d d -> 2 z0 * 2 pi R0^2 P
            const double p = *s.chi * *s.applied_field *
                             (s.convention == SusceptibilityConvention::SI ? C::eps0 : 1.0);
            return C::hbar * n * 2.0 * s.z0 * 2.0 * pi * s.R0 * s.R0 * p * C::mu0 / mr2;
        }
    }
    return 0.0;
}

std::vector<std::string> preset_names() { return {"rb87", "hydrogen", "helium"}; }

Scenario preset(std::string_view name) {
    Scenario s;
    s.name = std::string(name);
    s.vortex_order = 1;
    if (name == "rb87") {
        s.kind = DipoleKind::ElectricDipole;
        s.mass = 86.909180527 * C::atomic_mass_unit;
        s.dipole = C::e_charge * C::a_bohr;  // transition dipole e a_B
        s.scattering_length = 59.0 * C::angstrom;
        s.n1d_a = 100.0;
        s.R0 = 2e-6;
        s.z0 = 2e-6;
    } else if (name == "hydrogen") {
        s.kind = DipoleKind::MagneticDipole;
        s.mass = 1.00782503207 * C::atomic_mass_unit;
        s.moment = 2.0 * C::bohr_magneton;  // doubly spin-polarised
        s.scattering_length = 0.72 * C::angstrom;
        s.n1d_a = 100.0;
        s.R0 = 10e-6;
        s.z0 = 5e-3;
        s.assumptions.push_back(
            "R0 = 10 um is not a given input; it is the radius that reproduces the quoted "
            "hydrogen Phi0 and Q_e magnitudes for z0 = 5 mm and n1d a = 100");
    } else if (name == "helium") {
        s.kind = DipoleKind::Susceptibility;
        s.mass = 4.00260325413 * C::atomic_mass_unit;
        s.chi = 0.052;
        s.applied_field = 1.0;
        s.convention = SusceptibilityConvention::AsPrinted;
        s.scattering_length = 104.0 * C::angstrom;
        s.n1d_a = 100.0;
        s.R0 = 2e-6;
        s.z0 = 2e-6;
        s.assumptions.push_back(
            "helium geometry R0 = z0 = 2 um reuses the atomic-gas cylinder; no helium geometry "
            "is given and Q_m depends on z0 only");
        s.assumptions.push_back(
            "polarisation P = chi E |psi|^2 taken as printed (no eps0); the SI reading "
            "P = eps0 chi E |psi|^2 is available with susceptibility_convention = si and is "
            "about eleven orders of magnitude smaller");
        s.assumptions.push_back(
            "scattering length 104 A (He-4 pair) only sets n1d and N; Phi0 and Q_m of the "
            "susceptibility model do not depend on it");
        s.assumptions.push_back("result is an order-of-magnitude estimate");
    } else {
        throw ScenarioError("unknown preset '" + std::string(name) +
                            "' (available: rb87, hydrogen, helium)");
    }
    s.validate();
    return s;
}

Scenario parse_scenario(std::istream& in, std::string name) {
    std::map<std::string, std::string> kv;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        const std::string content = trim(line);
        if (content.empty()) continue;
        const auto eq = content.find('=');
        if (eq == std::string::npos)
            throw ScenarioError("scenario line " + std::to_string(line_no) + ": expected 'key = value'");
        const std::string key = trim(std::string_view(content).substr(0, eq));
        const std::string value = trim(std::string_view(content).substr(eq + 1));
        if (key.empty() || value.empty())
            throw ScenarioError("scenario line " + std::to_string(line_no) + ": empty key or value");
        if (!kv.emplace(key, value).second)
            throw ScenarioError("scenario key '" + key + "' given twice");
    }

    static const char* known[] = {"kind",   "n",
                                  "mass_amu", "dipole_debye",
                                  "dipole_e_aB", "moment_bohr_magnetons",
                                  "chi",    "applied_field_V_per_m",
                                  "scattering_a_angstrom", "n1d_a",
                                  "R0_m",   "z0_m",
                                  "susceptibility_convention"};
    for (const auto& [key, value] : kv) {
        bool ok = false;
        for (const char* k : known) ok = ok || key == k;
        if (!ok) throw ScenarioError("unknown scenario key '" + key + "'");
    }
    auto require = [&](const char* key) -> const std::string& {
        auto it = kv.find(key);
        if (it == kv.end()) throw ScenarioError(std::string("scenario is missing key '") + key + "'");
        return it->second;
    };
    auto number = [&](const char* key) { return parse_number(key, require(key)); };

    Scenario s;
    s.name = std::move(name);
    s.kind = parse_dipole_kind(require("kind"));
    {
        const double n = number("n");
        if (n != std::floor(n) || n < 0 || n > 1000)
            throw ScenarioError("scenario key 'n' must be a non-negative integer");
        s.vortex_order = static_cast<int>(n);
    }
    s.mass = number("mass_amu") * C::atomic_mass_unit;
    s.scattering_length = number("scattering_a_angstrom") * C::angstrom;
    s.n1d_a = number("n1d_a");
    s.R0 = number("R0_m");
    s.z0 = number("z0_m");

    const bool debye = kv.contains("dipole_debye");
    const bool eab = kv.contains("dipole_e_aB");
    if (debye && eab) throw ScenarioError("give either dipole_debye or dipole_e_aB, not both");
    if (debye) s.dipole = number("dipole_debye") * C::debye;
    if (eab) s.dipole = number("dipole_e_aB") * C::e_charge * C::a_bohr;
    if (kv.contains("moment_bohr_magnetons"))
        s.moment = number("moment_bohr_magnetons") * C::bohr_magneton;
    if (kv.contains("chi")) s.chi = number("chi");
    if (kv.contains("applied_field_V_per_m")) s.applied_field = number("applied_field_V_per_m");
    if (kv.contains("susceptibility_convention")) {
        if (s.kind != DipoleKind::Susceptibility)
            throw ScenarioError("susceptibility_convention only applies to kind = susceptibility");
        s.convention = parse_susceptibility_convention(kv.at("susceptibility_convention"));
    }
    s.validate();
    return s;
}

Scenario load_scenario_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ScenarioError("cannot open scenario file '" + path + "'");
    return parse_scenario(in, path);
}

Scenario resolve_scenario(const std::string& preset_or_path) {
    for (const auto& p : preset_names())
        if (p == preset_or_path) return preset(p);
    return load_scenario_file(preset_or_path);
}

std::string format_scenario(const Scenario& s) {
    std::ostringstream out;
    auto num = [](double v) {
        char buf[32];
        const auto r = std::to_chars(buf, buf + sizeof buf, v);
        return std::string(buf, r.ptr);
    };
    out << "kind = " << to_string(s.kind) << '\n'
        << "n = " << s.vortex_order << '\n'
        << "mass_amu = " << num(s.mass / C::atomic_mass_unit) << '\n';
    if (s.dipole) out << "dipole_debye = " << num(*s.dipole / C::debye) << '\n';
    if (s.moment) out << "moment_bohr_magnetons = " << num(*s.moment / C::bohr_magneton) << '\n';
    if (s.chi) out << "chi = " << num(*s.chi) << '\n';
    if (s.applied_field) out << "applied_field_V_per_m = " << num(*s.applied_field) << '\n';
    if (s.kind == DipoleKind::Susceptibility)
        out << "susceptibility_convention = " << to_string(s.convention) << '\n';
    out << "scattering_a_angstrom = " << num(s.scattering_length / C::angstrom) << '\n'
        << "n1d_a = " << num(s.n1d_a) << '\n'
        << "R0_m = " << num(s.R0) << '\n'
        << "z0_m = " << num(s.z0) << '\n';
    return out.str();
}

}  // namespace vortexem
