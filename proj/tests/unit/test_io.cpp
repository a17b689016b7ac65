#include <doctest.h>

#include <charconv>
#include <filesystem>
#include <fstream>
#include <limits>
#include <random>
#include <unistd.h>

#include "vortexem/io.hpp"

using namespace vortexem;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir() {
    static const fs::path dir = [] {
        auto d = fs::temp_directory_path() / ("vortexem_io_" + std::to_string(::getpid()));
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string first_line(const fs::path& p) {
    std::ifstream in(p);
    std::string line;
    std::getline(in, line);
    return line;
}

const CondensateProfile& profile() {
    static const CondensateProfile p = solve_profile(1, 10.0, RadialGrid::uniform(512));
    return p;
}

}  // namespace

TEST_CASE("format_double round-trips") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> mant(-1.0, 1.0);
    std::uniform_int_distribution<int> expo(-300, 300);
    for (int k = 0; k < 2000; ++k) {
        const double v = std::ldexp(mant(rng), expo(rng));
        const std::string s = io::format_double(v);
        double back = 0.0;
        std::from_chars(s.data(), s.data() + s.size(), back);
        CHECK(back == v);
    }
    CHECK(io::format_double(0.0) == "0");
    CHECK(io::format_double(1.0) == "1");
    CHECK(io::format_double(0.1) == "0.1");
    CHECK(io::format_double(std::numeric_limits<double>::denorm_min()) != "0");
}

TEST_CASE("profile CSV round trip is exact") {
    const auto path = scratch_dir() / "profile.csv";
    io::write_profile(path, profile());
    CHECK(first_line(path) == "xi,psi,psi2,dpsi2_dxi");
    CHECK(fs::exists(io::sidecar_path(path)));
    const auto back = io::read_profile(path);
    CHECK(back.psi == profile().psi);
    CHECK(back.grid.size() == profile().grid.size());
    for (std::size_t i = 0; i < back.grid.size(); ++i) CHECK(back.grid[i] == profile().grid[i]);
    CHECK(back.grid.spacing() == profile().grid.spacing());
    CHECK(back.eigenvalue == profile().eigenvalue);
    CHECK(back.n == 1);
    CHECK(back.n1d_a == 10.0);
    CHECK(back.solver == SolverTag::Shooting);

    Scenario s = preset("rb87");
    s.n1d_a = 10.0;
    const auto ds = derive_geometry(s);
    const auto a = areal_density(profile(), ds), b = areal_density(back, ds);
    CHECK(a.areal_density == b.areal_density);
    CHECK(a.cumulative == b.cumulative);
}

TEST_CASE("profile reader rejects malformed input") {
    const auto path = scratch_dir() / "bad.csv";
    {
        std::ofstream out(path);
        out << "xi,psi\n0.1,0.2\n";
    }
    CHECK_THROWS_AS(io::read_profile(path), std::runtime_error);
    CHECK_THROWS_AS(io::read_profile(scratch_dir() / "missing.csv"), std::runtime_error);
}

TEST_CASE("charge, potential and field writers") {
    Scenario s = preset("rb87");
    s.n1d_a = 10.0;
    const auto ds = derive_geometry(s);
    const auto cp = areal_density(profile(), ds);
    const auto charge = scratch_dir() / "charge.csv";
    io::write_charge(charge, cp, ds, io::to_json(neutrality_report(profile(), ds)));
    CHECK(first_line(charge) == "xi,areal_density,cumulative");
    std::ifstream side(io::sidecar_path(charge));
    const auto meta = nlohmann::json::parse(side);
    CHECK(meta.at("charge") == "magnetic");
    CHECK(meta.at("units").at("cumulative") == "V s");
    CHECK(meta.at("neutrality").at("ok") == true);

    const auto pg = potential_grid(profile(), ds, PotentialGridSpec{2.0, 2.0, 16, 16, {1e-5}});
    const auto pot = scratch_dir() / "potential.csv";
    io::write_potential(pot, pg, ds);
    CHECK(first_line(pot) == "xi,z,phi_over_phi0");
    std::ifstream in(pot);
    std::string line;
    std::size_t rows = 0;
    std::getline(in, line);
    while (std::getline(in, line)) ++rows;
    CHECK(rows == 256);

    const auto fld = scratch_dir() / "field.csv";
    io::write_field(fld, {0.1, 0.2}, {1.0, 2.0}, ds);
    CHECK(first_line(fld) == "xi,field");
}

TEST_CASE("manifest round trip") {
    io::RunManifest m;
    m.command = "solve";
    m.argv = {"solve", "--n", "1", "--out", "x y"};
    m.scenario = io::to_json(derive_geometry(preset("hydrogen")));
    m.settings = {{"tol", 1e-10}};
    m.outputs = {"a.csv", "b.csv"};
    m.started = io::utc_now();
    m.finished = io::utc_now();
    m.assumptions = {"R0 assumed"};
    const auto path = scratch_dir() / "manifest.json";
    io::write_manifest(path, m);
    const auto back = io::read_manifest(path);
    CHECK(back.command == m.command);
    CHECK(back.argv == m.argv);
    CHECK(back.outputs == m.outputs);
    CHECK(back.started == m.started);
    CHECK(back.assumptions == m.assumptions);
    CHECK(back.scenario == m.scenario);
    CHECK(m.started.size() == 20);
    CHECK(m.started.back() == 'Z');
}
