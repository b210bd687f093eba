#include <doctest.h>

#include <cmath>
#include <random>

#include "tvgcg/analysis.hpp"
#include "tvgcg/insertion.hpp"
#include "tvgcg/tvcalc.hpp"

using namespace tvgcg;

namespace {

Mesh dd(int n) {
    MeshSpec s;
    s.kind = MeshKind::DoubleDiagonal;
    s.n = n;
    s.domain = {0.0, 1.0, 0.0, 1.0};
    return build_double_diagonal(s);
}

P0Field random_mean_zero(const Mesh& m, unsigned seed, double scale) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    P0Field p = P0Field::zeros(m);
    for (double& v : p.values) v = scale * u(rng);
    return center(m, p);
}

double integral(const Mesh& m, const P0Field& p, const TriSet& e) {
    double s = 0.0;
    for (int t : e.indices) s += p[t] * m.areas[t];
    return s;
}

}  // namespace

TEST_CASE("zero dual: minimum value zero, set trivial") {
    Mesh m = dd(2);
    P0Field p = P0Field::zeros(m);
    auto [e, g] = solve_plambda(m, p, 3.0);
    CHECK(g == doctest::Approx(0.0).epsilon(1e-14));
    bool trivial = e.empty() || e.size() == m.n_triangles();
    CHECK(trivial);
}

TEST_CASE("graph cut matches exhaustive minimization on 16 triangles") {
    Mesh m = dd(2);
    // centered indicator of one full cell, scaled up so ratios exceed one
    std::vector<int> cell = {4, 5, 6, 7};
    P0Field p = center(m, TriSet(cell).indicator(m));
    for (double& v : p.values) v *= 10.0;

    ExhaustiveScan scan = exhaustive_scan(m, p);
    for (double lambda : {10.0, 1.0, 0.25}) {
        auto [e, g] = solve_plambda(m, p, lambda);
        CHECK(g == doctest::Approx(exhaustive_min_jlambda(scan, lambda)).epsilon(1e-12));
        CHECK(g <= 1e-12);
    }
}

TEST_CASE("below the critical value only the trivial sets minimize") {
    Mesh m = dd(2);
    P0Field p = random_mean_zero(m, 5, 40.0);
    ExhaustiveScan scan = exhaustive_scan(m, p);
    RatioOpt opt = exhaustive_max_ratio(scan);
    REQUIRE(opt.max_ratio > 1.0);
    double lambda = 0.5 / opt.max_ratio;
    auto [e, g] = solve_plambda(m, p, lambda);
    CHECK(std::abs(g) <= 1e-12);
    bool trivial = e.empty() || e.size() == m.n_triangles();
    CHECK(trivial);
}

TEST_CASE("dinkelbach certificate on the zero dual") {
    Mesh m = dd(2);
    InsertionResult r = dinkelbach(m, P0Field::zeros(m));
    CHECK(r.lambda_bar == 1.0);
    CHECK(r.certificate());
    CHECK(r.dinkelbach_iters == 0);
}

TEST_CASE("dinkelbach equals the exhaustive fractional oracle") {
    Mesh m = dd(2);
    for (unsigned seed = 0; seed < 12; ++seed) {
        P0Field p = random_mean_zero(m, seed, 50.0);
        ExhaustiveScan scan = exhaustive_scan(m, p);
        RatioOpt opt = exhaustive_max_ratio(scan);
        REQUIRE(opt.max_ratio > 1.0);

        InsertionResult r = dinkelbach(m, p);
        CHECK_FALSE(r.certificate());
        CHECK(r.lambda_bar == doctest::Approx(1.0 / opt.max_ratio).epsilon(1e-10));

        // the returned set attains the ratio: Per(E) - lambda_bar * int = 0
        double per = perimeter(m, r.set);
        double integ = integral(m, p, r.set);
        CHECK(integ > 0.0);
        CHECK(std::abs(per - r.lambda_bar * integ) <= 1e-10 * per);

        // strictly decreasing lambdas, nonpositive values
        for (std::size_t i = 0; i + 1 < r.history.size(); ++i)
            CHECK(r.history[i + 1].first < r.history[i].first);
        for (const auto& [lam, g] : r.history) CHECK(g <= 1e-12);
        CHECK(r.dinkelbach_iters <= 20);
    }
}

TEST_CASE("value function is concave along lambda") {
    Mesh m = dd(2);
    P0Field p = random_mean_zero(m, 77, 30.0);
    double l1 = 0.05, l2 = 0.20, l3 = 0.35;
    double g1 = solve_plambda(m, p, l1).second;
    double g2 = solve_plambda(m, p, l2).second;
    double g3 = solve_plambda(m, p, l3).second;
    double interp = g1 + (g3 - g1) * (l2 - l1) / (l3 - l1);
    CHECK(g2 >= interp - 1e-10);
}

TEST_CASE("oracle equivalence on the 4-triangle mesh") {
    Mesh m = dd(1);
    for (unsigned seed : {1u, 2u, 3u}) {
        P0Field p = random_mean_zero(m, seed, 60.0);
        ExhaustiveScan scan = exhaustive_scan(m, p);
        RatioOpt opt = exhaustive_max_ratio(scan);
        if (opt.max_ratio <= 1.0) continue;
        InsertionResult r = dinkelbach(m, p);
        CHECK(r.lambda_bar == doctest::Approx(1.0 / opt.max_ratio).epsilon(1e-10));
    }
}
