// Command line front end: solve runs the full solver on a configuration file,
// the remaining subcommands are self-checking verification utilities that
// print computed vs expected values and exit 4 on mismatch.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tvgcg/analysis.hpp"
#include "tvgcg/config.hpp"
#include "tvgcg/error.hpp"
#include "tvgcg/fem.hpp"
#include "tvgcg/gcg.hpp"
#include "tvgcg/insertion.hpp"
#include "tvgcg/io.hpp"
#include "tvgcg/tvcalc.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitIo = 1;
constexpr int kExitMaxIter = 2;
constexpr int kExitStagnated = 3;
constexpr int kExitMismatch = 4;
constexpr double kCheckTol = 1e-10;

void print_value(const char* label, double v) { std::printf("%s %.9g\n", label, v); }

int cmd_solve(const std::string& config_path) {
    tvgcg::RunConfig cfg = tvgcg::load_config(config_path);
    tvgcg::Mesh mesh = tvgcg::build_mesh(cfg.mesh);
    tvgcg::FemSystem fem = tvgcg::assemble(mesh, cfg.c_coeff);
    tvgcg::Observation obs = tvgcg::make_observation(cfg, mesh, fem);
    tvgcg::GcgSolver solver(mesh, fem, std::move(obs), tvgcg::solver_options(cfg));
    tvgcg::RunResult res = solver.run();

    namespace fs = std::filesystem;
    fs::path dir(cfg.output_dir);
    if (cfg.write_csv) {
        tvgcg::write_file_atomic((dir / "log.csv").string(), tvgcg::log_to_csv(res.log));
        tvgcg::write_file_atomic((dir / "atoms.csv").string(),
                                 tvgcg::atoms_to_csv(res.solution.atoms, res.solution.gamma));
    }
    if (cfg.write_vtk) {
        tvgcg::write_file_atomic((dir / "control.vtk").string(),
                                 tvgcg::vtk_with_cell_data(mesh, "control", res.solution.control));
        tvgcg::write_file_atomic((dir / "state.vtk").string(),
                                 tvgcg::vtk_with_point_data(mesh, "state", res.solution.state));
        tvgcg::write_file_atomic((dir / "dual.vtk").string(),
                                 tvgcg::vtk_with_cell_data(mesh, "dual", res.solution.dual));
    }

    const tvgcg::LogRow& last = res.log.back();
    std::printf("iterations %d\n", res.solution.iterations);
    print_value("J", last.j_scaled);
    print_value("zeta", res.solution.zeta);
    std::printf("atoms %d\n", static_cast<int>(res.solution.atoms.size()));
    switch (res.status) {
        case tvgcg::RunStatus::Converged:
            std::printf("status converged\n");
            return kExitOk;
        case tvgcg::RunStatus::MaxIterExceeded:
            std::printf("status max_iter_exceeded\n");
            return kExitMaxIter;
        case tvgcg::RunStatus::Stagnated:
            std::printf("status stagnated: %s\n", res.diagnostic.c_str());
            return kExitStagnated;
    }
    return kExitIo;
}

int cmd_geodesic(int sigma, int tau, int n) {
    tvgcg::GeodesicProblem prob{n, sigma, tau};
    tvgcg::GeodesicResult res = tvgcg::discrete_geodesic(prob);
    double expected = 1.0 + (std::sqrt(2.0) - 1.0) * sigma / tau;
    double err = std::abs(res.length - expected);
    print_value("computed", res.length);
    print_value("expected", expected);
    print_value("max_abs_error", err);
    bool dirs_ok = tvgcg::geodesic_direction_check(res.path);
    std::printf("direction_check %s\n", dirs_ok ? "pass" : "fail");
    return (err <= kCheckTol && dirs_ok) ? kExitOk : kExitMismatch;
}

// Gauge of the octagon by ray-boundary intersection, a code path independent
// of the folded closed form in octagon_phi.
double octagon_gauge_by_intersection(double theta) {
    const double pi = 3.14159265358979323846;
    tvgcg::Vec2 d{std::cos(theta), std::sin(theta)};
    for (int k = 0; k < 8; ++k) {
        tvgcg::Vec2 a{std::cos(k * pi / 4.0), std::sin(k * pi / 4.0)};
        tvgcg::Vec2 b{std::cos((k + 1) * pi / 4.0), std::sin((k + 1) * pi / 4.0)};
        // solve t*d = a + s*(b-a), 0 <= s <= 1, t > 0
        double det = tvgcg::cross(b - a, d);
        if (std::abs(det) < 1e-15) continue;
        double t = tvgcg::cross(b - a, a) / det;
        double s = tvgcg::cross(d, a) / det * -1.0;
        if (t > 0.0 && s >= -1e-12 && s <= 1.0 + 1e-12) return 1.0 / t;
    }
    throw tvgcg::Error("octagon gauge: no boundary intersection");
}

int cmd_phi(double theta, bool scan, int n) {
    if (scan) {
        std::vector<std::pair<int, int>> dirs = {{0, 1}, {1, 4}, {1, 3}, {1, 2},
                                                 {2, 3}, {3, 4}, {1, 1}};
        auto rows = tvgcg::anisotropy_scan(n, dirs);
        std::printf("%s", tvgcg::scan_to_csv(rows).c_str());
        double max_err = 0.0;
        for (const auto& r : rows) max_err = std::max(max_err, r.abs_error);
        print_value("max_abs_error", max_err);
        return max_err <= kCheckTol ? kExitOk : kExitMismatch;
    }
    double computed = tvgcg::octagon_phi({std::cos(theta), std::sin(theta)});
    double expected = octagon_gauge_by_intersection(theta);
    double err = std::abs(computed - expected);
    print_value("computed", computed);
    print_value("expected", expected);
    print_value("max_abs_error", err);
    return err <= kCheckTol ? kExitOk : kExitMismatch;
}

int cmd_tent_check(double lambda) {
    tvgcg::TentPatch patch = tvgcg::build_tent_patch(lambda);
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    double max_err = 0.0;
    std::vector<std::pair<double, double>> cs = {{1, 0}, {0, 1}, {1, 1}, {1, -1}};
    for (int i = 0; i < 16; ++i) cs.push_back({u(rng), u(rng)});
    for (auto [c1, c2] : cs) {
        double computed = tvgcg::tent_patch_tv(patch, c1, c2);
        double expected = tvgcg::tent_ball_tv(lambda, c1, c2);
        max_err = std::max(max_err, std::abs(computed - expected));
        std::printf("c=(%.9g,%.9g) computed %.9g expected %.9g\n", c1, c2, computed,
                    expected);
    }
    print_value("max_abs_error", max_err);
    return max_err <= kCheckTol ? kExitOk : kExitMismatch;
}

int cmd_cut_oracle(int n, unsigned seed) {
    if (n < 1 || n > 2) {
        std::fprintf(stderr, "cut-oracle: n must be 1 or 2\n");
        return kExitMismatch;
    }
    tvgcg::MeshSpec spec;
    spec.kind = tvgcg::MeshKind::DoubleDiagonal;
    spec.n = n;
    spec.domain = {0.0, 1.0, 0.0, 1.0};
    tvgcg::Mesh mesh = tvgcg::build_double_diagonal(spec);

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    tvgcg::P0Field p = tvgcg::P0Field::zeros(mesh);
    for (double& v : p.values) v = u(rng);
    p = tvgcg::center(mesh, p);

    tvgcg::ExhaustiveScan scan = tvgcg::exhaustive_scan(mesh, p);
    double max_err = 0.0;
    for (double lambda : {0.5, 1.0, 2.0, 5.0}) {
        auto [set, g] = tvgcg::solve_plambda(mesh, p, lambda);
        double expected = tvgcg::exhaustive_min_jlambda(scan, lambda);
        std::printf("lambda %.9g computed %.9g expected %.9g\n", lambda, g, expected);
        max_err = std::max(max_err, std::abs(g - expected));
    }
    print_value("max_abs_error", max_err);
    return max_err <= kCheckTol ? kExitOk : kExitMismatch;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Total-variation regularized control solver and verification tools"};
    app.require_subcommand(1);

    std::string config_path;
    auto* solve = app.add_subcommand("solve", "Run the solver on a configuration file");
    solve->add_option("-c,--config", config_path, "configuration file")->required();

    int sigma = 1, tau = 2, n = 8;
    auto* geo = app.add_subcommand("geodesic", "Check a discrete geodesic length");
    geo->add_option("--sigma", sigma, "direction numerator")->required();
    geo->add_option("--tau", tau, "direction denominator")->required();
    geo->add_option("--n", n, "mesh subdivisions (multiple of tau)")->required();

    double theta = 0.0;
    bool scan = false;
    int scan_n = 12;
    auto* phi = app.add_subcommand("phi", "Evaluate the octagon anisotropy");
    phi->add_option("--theta", theta, "direction angle in radians");
    phi->add_flag("--scan", scan, "run the geodesic ratio scan");
    phi->add_option("--scan-n", scan_n, "mesh subdivisions for the scan");

    double lambda = 1.0;
    auto* tent = app.add_subcommand("tent-check", "Two-tent total variation check");
    tent->add_option("--lambda", lambda, "triangle area")->required();

    int on = 2;
    unsigned seed = 1;
    auto* oracle = app.add_subcommand("cut-oracle", "Graph cut vs exhaustive enumeration");
    oracle->add_option("--n", on, "cells per side (max 2)")->required();
    oracle->add_option("--seed", seed, "random seed");

    CLI11_PARSE(app, argc, argv);

    try {
        if (solve->parsed()) return cmd_solve(config_path);
        if (geo->parsed()) return cmd_geodesic(sigma, tau, n);
        if (phi->parsed()) return cmd_phi(theta, scan, scan_n);
        if (tent->parsed()) return cmd_tent_check(lambda);
        if (oracle->parsed()) return cmd_cut_oracle(on, seed);
    } catch (const tvgcg::ConfigError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitIo;
    } catch (const tvgcg::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitIo;
    }
    return kExitIo;
}
