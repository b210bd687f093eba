#include <doctest.h>

#include <cmath>
#include <random>

#include "tvgcg/mesh.hpp"
#include "tvgcg/tvcalc.hpp"

using namespace tvgcg;

namespace {

Mesh dd(int n, Rect dom = {0.0, 1.0, 0.0, 1.0}) {
    MeshSpec s;
    s.kind = MeshKind::DoubleDiagonal;
    s.n = n;
    s.domain = dom;
    return build_double_diagonal(s);
}

P0Field random_field(const Mesh& m, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    P0Field f = P0Field::zeros(m);
    for (double& v : f.values) v = u(rng);
    return f;
}

// A fully interior triangle of a double-diagonal mesh (center cell, bottom).
int interior_triangle(int n) {
    int cell = (n / 2) * n + n / 2;
    return 4 * cell;
}

// Independent direct oracle: loop over all triangle pairs, detect a shared
// edge by comparing vertex sets, recompute its length from coordinates.
double tv_bruteforce(const Mesh& m, const P0Field& u) {
    double tv = 0.0;
    for (int a = 0; a < m.n_triangles(); ++a) {
        for (int b = a + 1; b < m.n_triangles(); ++b) {
            int shared[2], cnt = 0;
            for (int i : m.triangles[a])
                for (int j : m.triangles[b])
                    if (i == j && cnt < 2) shared[cnt++] = i;
            if (cnt == 2) {
                double len = norm(m.vertices[shared[0]] - m.vertices[shared[1]]);
                tv += std::abs(u[a] - u[b]) * len;
            }
        }
    }
    return tv;
}

}  // namespace

TEST_CASE("tv of a constant field is zero") {
    Mesh m = dd(3);
    CHECK(tv_p0(m, P0Field::constant(m, 4.2)) == 0.0);
}

TEST_CASE("tv of a single interior triangle indicator, h=0.25") {
    Mesh m = dd(4);  // h = 0.25
    P0Field u = P0Field::zeros(m);
    u[interior_triangle(4)] = 1.0;
    CHECK(tv_p0(m, u) == doctest::Approx(0.25 * (1.0 + std::sqrt(2.0))).epsilon(1e-12));
    CHECK(tv_p0(m, u) == doctest::Approx(0.6035533906).epsilon(1e-9));
}

TEST_CASE("tv of an interior 2x2 cell block, h=0.25") {
    Mesh m = dd(4);
    P0Field u = P0Field::zeros(m);
    for (int ci = 1; ci <= 2; ++ci)
        for (int cj = 1; cj <= 2; ++cj)
            for (int s = 0; s < 4; ++s) u[4 * (cj * 4 + ci) + s] = 1.0;
    CHECK(tv_p0(m, u) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("perimeter: empty and full sets have no interior jumps") {
    Mesh m = dd(3);
    CHECK(perimeter(m, TriSet{}) == 0.0);
    std::vector<int> all(m.n_triangles());
    for (int i = 0; i < m.n_triangles(); ++i) all[i] = i;
    CHECK(perimeter(m, TriSet(all)) == 0.0);
}

TEST_CASE("perimeter is complement symmetric") {
    Mesh m = dd(3);
    std::mt19937 rng(11);
    for (int it = 0; it < 100; ++it) {
        std::vector<int> e, comp;
        for (int t = 0; t < m.n_triangles(); ++t)
            (rng() % 2 ? e : comp).push_back(t);
        CHECK(perimeter(m, TriSet(e)) ==
              doctest::Approx(perimeter(m, TriSet(comp))).epsilon(1e-13));
    }
}

TEST_CASE("mean and center") {
    Mesh m = dd(3);
    CHECK(mean(m, P0Field::constant(m, 5.0)) == doctest::Approx(5.0).epsilon(1e-14));
    P0Field c = center(m, P0Field::constant(m, 5.0));
    for (double v : c.values) CHECK(v == doctest::Approx(0.0).epsilon(1e-14));

    // indicator mean = covered area on the unit square
    P0Field u = P0Field::zeros(m);
    u[0] = 1.0;
    CHECK(mean(m, u) == doctest::Approx(m.areas[0]).epsilon(1e-13));

    P0Field r = random_field(m, 5);
    CHECK(std::abs(mean(m, center(m, r))) <= 1e-14);
    P0Field c1 = center(m, r), c2 = center(m, center(m, r));
    for (int t = 0; t < m.n_triangles(); ++t)
        CHECK(std::abs(c1[t] - c2[t]) <= 1e-15);
}

TEST_CASE("tv_p1: constants and the coordinate interpolant") {
    Mesh m = dd(4);
    P1Field c(std::vector<double>(m.n_vertices(), 3.0));
    CHECK(tv_p1(m, c) == doctest::Approx(0.0).epsilon(1e-14));
    P1Field x = P1Field::zeros(m);
    for (int v = 0; v < m.n_vertices(); ++v) x[v] = m.vertices[v].x;
    CHECK(tv_p1(m, x) == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("tv homogeneity and triangle inequality") {
    Mesh m = dd(2);
    P0Field u = random_field(m, 1), v = random_field(m, 2);
    CHECK(tv_p0(m, P0Field([&] {
              auto w = u.values;
              for (double& x : w) x *= -2.5;
              return w;
          }())) == doctest::Approx(2.5 * tv_p0(m, u)).epsilon(1e-13));
    P0Field sum(u.values);
    for (int t = 0; t < m.n_triangles(); ++t) sum[t] += v[t];
    CHECK(tv_p0(m, sum) <= tv_p0(m, u) + tv_p0(m, v) + 1e-12);
}

TEST_CASE("normalized centered indicators have unit tv") {
    Mesh m = dd(4);
    std::mt19937 rng(3);
    int ok = 0;
    while (ok < 50) {
        std::vector<int> idx;
        for (int t = 0; t < m.n_triangles(); ++t)
            if (rng() % 3 == 0) idx.push_back(t);
        if (idx.empty() || static_cast<int>(idx.size()) == m.n_triangles()) continue;
        TriSet e(idx);
        double per = perimeter(m, e);
        if (per <= 0.0) continue;
        P0Field u = center(m, e.indicator(m));
        for (double& v : u.values) v /= per;
        CHECK(tv_p0(m, u) == doctest::Approx(1.0).epsilon(1e-12));
        ++ok;
    }
}

TEST_CASE("brute-force tv oracle on the 16-triangle mesh") {
    Mesh m = dd(2);
    for (unsigned seed : {10u, 20u, 30u}) {
        P0Field u = random_field(m, seed);
        CHECK(tv_p0(m, u) == doctest::Approx(tv_bruteforce(m, u)).epsilon(1e-12));
    }
}

TEST_CASE("anisotropic tv: octagon-style weights on axis and diagonal squares") {
    // phi = 1 on axes and diagonals, like the octagon gauge there
    Anisotropy phi = Anisotropy::make([](Vec2 v) {
        double r = norm(v);
        double t = std::atan2(std::abs(v.y), std::abs(v.x));
        if (t > 3.14159265358979323846 / 4.0) t = 3.14159265358979323846 / 2.0 - t;
        return r * (std::cos(t) + (std::sqrt(2.0) - 1.0) * std::sin(t));
    });

    Mesh m = dd(4);
    const double h = 0.25;

    // axis-aligned square: one full cell strictly inside
    P0Field cell = P0Field::zeros(m);
    for (int s = 0; s < 4; ++s) cell[4 * (1 * 4 + 1) + s] = 1.0;
    CHECK(tv_phi_p0(m, cell, phi) == doctest::Approx(4.0 * h).epsilon(1e-12));
    CHECK(tv_p0(m, cell) == doctest::Approx(4.0 * h).epsilon(1e-12));

    // diamond with half-diagonal sides: east triangle of cell (1,1) plus west
    // triangle of cell (2,1); its boundary is 4 half-diagonals
    P0Field diamond = P0Field::zeros(m);
    diamond[4 * (1 * 4 + 1) + 1] = 1.0;
    diamond[4 * (1 * 4 + 2) + 3] = 1.0;
    double side = h * std::sqrt(2.0) / 2.0;
    CHECK(tv_phi_p0(m, diamond, phi) == doctest::Approx(4.0 * side).epsilon(1e-12));
}

TEST_CASE("isotropic weight reduces tv_phi to tv") {
    Mesh m = dd(3);
    Anisotropy one = Anisotropy::isotropic();
    for (unsigned seed : {4u, 5u}) {
        P0Field u = random_field(m, seed);
        CHECK(tv_phi_p0(m, u, one) == doctest::Approx(tv_p0(m, u)).epsilon(1e-12));
    }
}

TEST_CASE("anisotropy constructor rejects odd weights") {
    CHECK_THROWS(Anisotropy::make([](Vec2 v) { return norm(v) + v.x; }));
}
