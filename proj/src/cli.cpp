#include "vortexem/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>

#include "vortexem/constants.hpp"
#include "vortexem/errors.hpp"
#include "vortexem/fields.hpp"
#include "vortexem/interpolant.hpp"
#include "vortexem/io.hpp"
#include "vortexem/monopole.hpp"

namespace vortexem {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr const char* kExitHelp =
    "Exit codes: 0 success, 1 usage error, 2 solver did not converge, 3 charge neutrality "
    "check failed, 4 potential quadrature failed at more than 0.1% of grid points, "
    "5 invalid scenario.\nVORTEXEM_WORKERS overrides --workers.";

struct SolveOptions {
    std::size_t grid = RadialGrid::default_count;
    double xi_min = RadialGrid::default_xi_min;
    double tol = 1e-10;
    std::string solver = "shooting";
};

struct ScenarioOptions {
    std::string scenario = "rb87";
    std::optional<int> n;
    std::optional<double> n1da;
    std::string profile;
};

// Result of one subcommand: exit code plus what goes into the manifest.
struct Outcome {
    int code = kExitOk;
    io::RunManifest manifest;
};

void add_solve_options(CLI::App* cmd, SolveOptions& o) {
    cmd->add_option("--grid", o.grid, "Radial grid points")->default_val(o.grid)->check(CLI::Range(64, 1 << 22));
    cmd->add_option("--xi-min", o.xi_min, "Innermost radius xi_min")->default_val(o.xi_min);
    cmd->add_option("--tol", o.tol, "Solver tolerance in [1e-12, 1e-4]")->default_val(o.tol);
    cmd->add_option("--solver", o.solver, "shooting or relaxation")
        ->default_val(o.solver)
        ->check(CLI::IsMember({"shooting", "relaxation"}));
}

void add_scenario_options(CLI::App* cmd, ScenarioOptions& o) {
    cmd->add_option("--scenario", o.scenario, "Preset (rb87, hydrogen, helium) or scenario file")
        ->default_val(o.scenario);
    cmd->add_option("--n", o.n, "Override the vortex order");
    cmd->add_option("--n1da", o.n1da, "Override n1d a");
    cmd->add_option("--profile", o.profile, "Use a profile CSV written by 'solve' instead of solving");
}

json solve_settings(const SolveOptions& o) {
    return json{{"grid", o.grid}, {"xi_min", o.xi_min}, {"tol", o.tol}, {"solver", o.solver}};
}

CondensateProfile solve(int n, double n1d_a, const SolveOptions& o) {
    const RadialGrid grid = RadialGrid::uniform(o.grid, o.xi_min);
    SolverOptions so;
    so.tol = o.tol;
    return parse_solver_tag(o.solver) == SolverTag::Shooting ? solve_profile(n, n1d_a, grid, so)
                                                             : relax_profile(n, n1d_a, grid, so);
}

json profile_diagnostics(const CondensateProfile& p) {
    return json{{"n", p.n},
                {"n1d_a", p.n1d_a},
                {"eigenvalue_eps", p.eigenvalue},
                {"solver_tag", std::string(to_string(p.solver))},
                {"solver_residual", p.residual},
                {"discretisation_residual", discretisation_residual(p)},
                {"iterations", p.iterations},
                {"nodes", count_nodes(p.psi)},
                {"psi_at_wall", p.psi.back()},
                {"norm", p.norm()}};
}

std::string tag(double v) { return io::format_double(v); }

std::string scenario_stem(const Scenario& s) {
    const std::string stem = fs::path(s.name).stem().string();
    return stem.empty() ? "custom" : stem;
}

DerivedScenario load(const ScenarioOptions& o, std::optional<double> aspect = std::nullopt) {
    Scenario s = resolve_scenario(o.scenario);
    if (o.n) s.vortex_order = *o.n;
    if (o.n1da) s.n1d_a = *o.n1da;
    if (aspect) {
        if (!(*aspect > 0.0)) throw ScenarioError("--f must be positive");
        s.z0 = s.R0 / *aspect;
    }
    return derive_geometry(s);
}

CondensateProfile obtain_profile(const ScenarioOptions& so, const SolveOptions& o, const DerivedScenario& ds,
                                 io::RunManifest& m) {
    CondensateProfile p = so.profile.empty()
                              ? solve(ds.vortex_order(), ds.underlying.n1d_a, o)
                              : io::read_profile(so.profile);
    m.diagnostics["profile"] = profile_diagnostics(p);
    if (!so.profile.empty()) m.diagnostics["profile"]["source"] = so.profile;
    return p;
}

void start_manifest(io::RunManifest& m, const std::string& command, const DerivedScenario* ds) {
    m.command = command;
    m.started = io::utc_now();
    if (ds) {
        m.scenario = io::to_json(*ds);
        m.assumptions = ds->underlying.assumptions;
    }
}

// ---- subcommands ----

Outcome cmd_solve(int n, const std::vector<double>& n1das, const SolveOptions& o, const fs::path& out) {
    Outcome r;
    start_manifest(r.manifest, "solve", nullptr);
    r.manifest.settings = solve_settings(o);
    r.manifest.settings["n"] = n;
    r.manifest.diagnostics["profiles"] = json::array();
    for (double a : n1das) {
        const CondensateProfile p = solve(n, a, o);
        const fs::path csv = out / ("profile_n" + std::to_string(n) + "_n1da" + tag(a) + ".csv");
        io::write_profile(csv, p);
        r.manifest.outputs.push_back(csv.string());
        r.manifest.outputs.push_back(io::sidecar_path(csv).string());
        r.manifest.diagnostics["profiles"].push_back(profile_diagnostics(p));
        std::cout << csv.string() << "  eps = " << io::format_double(p.eigenvalue) << '\n';
    }
    return r;
}

Outcome cmd_charge(const ScenarioOptions& so, const SolveOptions& o, const fs::path& out) {
    Outcome r;
    const DerivedScenario ds = load(so);
    start_manifest(r.manifest, "charge", &ds);
    r.manifest.settings = solve_settings(o);
    const CondensateProfile p = obtain_profile(so, o, ds, r.manifest);
    const ChargeProfile cp = areal_density(p, ds);
    json neutrality = nullptr;
    if (p.n >= 1) {
        const NeutralityReport nr = neutrality_report(p, ds);
        neutrality = io::to_json(nr);
        if (!nr.ok()) {
            r.code = kExitNeutrality;
            std::cerr << "charge neutrality check failed: delta weight " << nr.delta_weight << ", Q(1) residual "
                      << nr.total_residual << ", max imbalance " << nr.max_imbalance << '\n';
        }
    }
    const fs::path csv = out / ("charge_" + scenario_stem(ds.underlying) + ".csv");
    io::write_charge(csv, cp, ds, neutrality);
    r.manifest.outputs = {csv.string(), io::sidecar_path(csv).string()};
    r.manifest.diagnostics["neutrality"] = neutrality;
    r.manifest.diagnostics["total"] = cp.total;
    r.manifest.diagnostics["q_half"] = cumulative_charge(cp, 0.5);
    std::cout << csv.string() << "  Q(1/2) = " << io::format_double(cumulative_charge(cp, 0.5)) << ' '
              << ds.charge_unit() << '\n';
    return r;
}

Outcome cmd_field(const ScenarioOptions& so, const SolveOptions& o, const fs::path& out) {
    Outcome r;
    const DerivedScenario ds = load(so);
    start_manifest(r.manifest, "field", &ds);
    r.manifest.settings = solve_settings(o);
    const CondensateProfile p = obtain_profile(so, o, ds, r.manifest);
    if (p.n != ds.vortex_order()) throw KindMismatch("profile and scenario have different n");
    const ProfileInterpolant psi(p);
    std::vector<double> xi(p.grid.points().begin(), p.grid.points().end());
    std::vector<double> field(xi.size());
    for (std::size_t i = 0; i < xi.size(); ++i) field[i] = h_field_infinite(psi, ds, xi[i]);
    const fs::path csv = out / ("field_" + scenario_stem(ds.underlying) + ".csv");
    io::write_field(csv, xi, field, ds);
    r.manifest.outputs = {csv.string(), io::sidecar_path(csv).string()};
    std::cout << csv.string() << '\n';
    return r;
}

struct PotentialCli {
    double f = 1.0;
    PotentialGridSpec spec;
    bool unweighted = false;
};

Outcome cmd_potential(const ScenarioOptions& so, const SolveOptions& o, const PotentialCli& pc, unsigned workers,
                      const fs::path& out) {
    Outcome r;
    const DerivedScenario ds = load(so, pc.f);
    start_manifest(r.manifest, "potential", &ds);
    r.manifest.settings = solve_settings(o);
    PotentialGridSpec spec = pc.spec;
    spec.options.weighted = !pc.unweighted;
    r.manifest.settings.update(json{{"f", pc.f},
                                    {"xi_max", spec.xi_max},
                                    {"z_max", spec.z_max},
                                    {"nxi", spec.nxi},
                                    {"nz", spec.nz},
                                    {"quad_tol", spec.options.quad_tol},
                                    {"weighted", spec.options.weighted},
                                    {"workers", workers}});
    const CondensateProfile p = obtain_profile(so, o, ds, r.manifest);
    if (p.n != ds.vortex_order() || p.n1d_a != ds.underlying.n1d_a)
        throw KindMismatch("profile and scenario describe different condensates");
    const PotentialGrid pg = potential_grid(p, ds, spec, workers);
    const fs::path csv = out / ("potential_" + scenario_stem(ds.underlying) + ".csv");
    io::write_potential(csv, pg, ds);
    r.manifest.outputs = {csv.string(), io::sidecar_path(csv).string()};
    const std::size_t total = pg.phi_over_phi0.size();
    r.manifest.diagnostics["failed_points"] = pg.failed_points;
    r.manifest.diagnostics["rim_points"] = pg.rim_points.size();
    if (static_cast<double>(pg.failed_points) > 1e-3 * static_cast<double>(total)) {
        r.code = kExitQuadrature;
        std::cerr << "quadrature failed to reach quad_tol at " << pg.failed_points << " of " << total << " points\n";
    }
    std::cout << csv.string() << '\n';
    return r;
}

json estimate_report(const DerivedScenario& ds) {
    const double h_half = ds.field_prefactor() / 0.5;  // field at xi = 1/2 per unit |psi(1/2)|^2
    json eq{{"definition", "infinite-cylinder interior field at xi = 1/2 per unit |psi(1/2)|^2"},
            {"field", h_half},
            {"field_unit", ds.field_unit()}};
    if (ds.sources_magnetic_charge()) {
        eq["flux_density"] = Constants::mu0 * h_half;
        eq["flux_density_unit"] = "T";
    }
    json j = io::to_json(ds);
    j["equivalent_field"] = eq;
    j["charge_coefficient_multiplies"] = "|psi(xi)|^2, e.g. Q(1/2) = coefficient * |psi(1/2)|^2";
    j["assumptions"] = ds.underlying.assumptions;
    return j;
}

Outcome cmd_estimate(const std::string& scenario, std::optional<double> applied_field, const fs::path& out) {
    Outcome r;
    Scenario s = resolve_scenario(scenario);
    if (applied_field) {
        if (s.kind != DipoleKind::Susceptibility)
            throw ScenarioError("--applied-field only applies to susceptibility scenarios");
        s.applied_field = *applied_field;
    }
    const DerivedScenario ds = derive_geometry(s);
    start_manifest(r.manifest, "estimate", &ds);
    const json report = estimate_report(ds);
    const fs::path path = out / ("estimate_" + scenario_stem(s) + ".json");
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream(path) << report.dump(2) << '\n';
    r.manifest.outputs = {path.string()};
    r.manifest.diagnostics["estimate"] = report;
    std::cout << report.dump(2) << '\n';
    return r;
}

void finish(Outcome& r, const std::vector<std::string>& argv, const fs::path& out) {
    r.manifest.argv = argv;
    r.manifest.finished = io::utc_now();
    r.manifest.diagnostics["exit_code"] = r.code;
    io::write_manifest(out / (r.manifest.command + "_manifest.json"), r.manifest);
}

unsigned resolve_workers(unsigned flag) {
    if (const char* env = std::getenv("VORTEXEM_WORKERS")) {
        try {
            const long v = std::stol(env);
            if (v >= 1) return static_cast<unsigned>(v);
        } catch (const std::exception&) {
        }
        std::cerr << "ignoring invalid VORTEXEM_WORKERS='" << env << "'\n";
    }
    return std::max(1u, flag);
}

int run(const std::vector<std::string>& args, int depth) {
    CLI::App app{"Vortex-state condensate monopole charges, fields and potentials", "vortexem"};
    app.footer(kExitHelp);
    app.require_subcommand(0, 1);

    unsigned workers_flag = 1;
    std::string replay;
    app.add_option("--workers", workers_flag, "Worker threads for potential grids")->default_val(1);
    app.add_option("--replay", replay, "Re-run the argument list stored in a run manifest");

    fs::path out = ".";
    SolveOptions so;
    ScenarioOptions sc;

    auto* solve_cmd = app.add_subcommand("solve", "Solve the radial equation; one profile CSV per n1d a");
    int solve_n = 1;
    std::vector<double> n1das{0.1, 10.0, 100.0};
    solve_cmd->add_option("--n", solve_n, "Vortex order")->default_val(1)->check(CLI::NonNegativeNumber);
    solve_cmd->add_option("--n1da", n1das, "Interaction strength (repeatable)")->default_str("0.1 10 100");
    add_solve_options(solve_cmd, so);
    solve_cmd->add_option("--out", out, "Output directory")->default_val(".");

    auto* charge_cmd = app.add_subcommand("charge", "Areal and cumulative monopole charge plus neutrality report");
    add_scenario_options(charge_cmd, sc);
    add_solve_options(charge_cmd, so);
    charge_cmd->add_option("--out", out, "Output directory")->default_val(".");

    auto* field_cmd = app.add_subcommand("field", "Infinite-cylinder Gauss-law field on the profile grid");
    add_scenario_options(field_cmd, sc);
    add_solve_options(field_cmd, so);
    field_cmd->add_option("--out", out, "Output directory")->default_val(".");

    PotentialCli pc;
    auto add_potential_options = [&](CLI::App* cmd) {
        cmd->add_option("--f", pc.f, "Aspect ratio R0 / z0 (z0 is set to R0 / f)")->default_val(1.0);
        cmd->add_option("--xi-max", pc.spec.xi_max, "Largest xi")->default_val(2.0);
        cmd->add_option("--z-max", pc.spec.z_max, "Largest z (units of z0)")->default_val(2.0);
        cmd->add_option("--nxi", pc.spec.nxi, "Grid points in xi")->default_val(101);
        cmd->add_option("--nz", pc.spec.nz, "Grid points in z")->default_val(101);
        cmd->add_option("--quad-tol", pc.spec.options.quad_tol, "Quadrature tolerance in [1e-10, 1e-3]")
            ->default_val(1e-6);
        cmd->add_flag("--unweighted", pc.unweighted, "Drop the |psi|^2 weight from the kernel (comparison only)");
    };
    auto* potential_cmd = app.add_subcommand("potential", "Finite-cylinder potential Phi / Phi0 on a (xi, z) grid");
    add_scenario_options(potential_cmd, sc);
    add_solve_options(potential_cmd, so);
    add_potential_options(potential_cmd);
    potential_cmd->add_option("--out", out, "Output directory")->default_val(".");

    auto* estimate_cmd = app.add_subcommand("estimate", "Phi0, charge coefficient and equivalent field of a scenario");
    std::string estimate_scenario = "rb87";
    std::optional<double> applied_field;
    estimate_cmd->add_option("scenario", estimate_scenario, "Preset or scenario file")->default_val("rb87");
    estimate_cmd->add_option("--applied-field", applied_field, "Applied field in V/m (susceptibility scenarios)");
    estimate_cmd->add_option("--out", out, "Output directory")->default_val(".");

    auto* all_cmd = app.add_subcommand("all", "solve, charge, field, potential and estimate for one scenario");
    add_scenario_options(all_cmd, sc);
    add_solve_options(all_cmd, so);
    add_potential_options(all_cmd);
    all_cmd->add_option("--out", out, "Output directory")->default_val(".");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    if (!replay.empty()) {
        if (depth > 0 || app.get_subcommands().size() > 0) {
            std::cerr << "--replay cannot be combined with a subcommand\n";
            return kExitUsage;
        }
        try {
            return run(io::read_manifest(replay).argv, depth + 1);
        } catch (const std::exception& e) {
            std::cerr << "cannot replay: " << e.what() << '\n';
            return kExitUsage;
        }
    }
    if (app.get_subcommands().empty()) {
        std::cout << app.help();
        return kExitUsage;
    }

    const unsigned workers = resolve_workers(workers_flag);
    try {
        std::vector<Outcome> runs;
        if (solve_cmd->parsed()) {
            runs.push_back(cmd_solve(solve_n, n1das, so, out));
        } else if (charge_cmd->parsed()) {
            runs.push_back(cmd_charge(sc, so, out));
        } else if (field_cmd->parsed()) {
            runs.push_back(cmd_field(sc, so, out));
        } else if (potential_cmd->parsed()) {
            runs.push_back(cmd_potential(sc, so, pc, workers, out));
        } else if (estimate_cmd->parsed()) {
            runs.push_back(cmd_estimate(estimate_scenario, applied_field, out));
        } else if (all_cmd->parsed()) {
            const DerivedScenario ds = load(sc);
            runs.push_back(cmd_solve(ds.vortex_order(), {0.1, 10.0, 100.0}, so, out));
            runs.push_back(cmd_charge(sc, so, out));
            runs.push_back(cmd_field(sc, so, out));
            runs.push_back(cmd_potential(sc, so, pc, workers, out));
            runs.push_back(cmd_estimate(sc.scenario, std::nullopt, out));
        }
        int code = kExitOk;
        for (auto& r : runs) {
            finish(r, args, out);
            if (code == kExitOk) code = r.code;
        }
        return code;
    } catch (const ScenarioError& e) {
        std::cerr << "scenario error: " << e.what() << '\n';
        return kExitScenario;
    } catch (const KindMismatch& e) {
        std::cerr << "scenario error: " << e.what() << '\n';
        return kExitScenario;
    } catch (const NonConvergence& e) {
        std::cerr << "solver did not converge: " << e.what() << '\n'
                  << "last residual " << e.last_residual() << " after " << e.iterations() << " iterations\n";
        return kExitNonConvergence;
    } catch (const NodeDetected& e) {
        std::cerr << "solver did not converge: " << e.what() << '\n';
        return kExitNonConvergence;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
}

}  // namespace

int run_cli(const std::vector<std::string>& args) { return run(args, 0); }

}  // namespace vortexem
