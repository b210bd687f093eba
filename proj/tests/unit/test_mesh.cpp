#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "tvgcg/error.hpp"
#include "tvgcg/mesh.hpp"

using namespace tvgcg;

namespace {

MeshSpec dd(int n, Rect dom = {0.0, 1.0, 0.0, 1.0}) {
    MeshSpec s;
    s.kind = MeshKind::DoubleDiagonal;
    s.n = n;
    s.domain = dom;
    return s;
}

MeshSpec jit(int n, double j, std::uint64_t seed, Rect dom = {0.0, 1.0, 0.0, 1.0}) {
    MeshSpec s;
    s.kind = MeshKind::Jittered;
    s.n = n;
    s.jitter = j;
    s.seed = seed;
    s.domain = dom;
    return s;
}

}  // namespace

TEST_CASE("double diagonal n=1: counts and half-diagonal lengths") {
    Mesh m = build_double_diagonal(dd(1));
    CHECK(m.n_triangles() == 4);
    CHECK(m.n_vertices() == 5);
    CHECK(m.interior_edges.size() == 4);
    for (const auto& e : m.interior_edges)
        CHECK(e.length == doctest::Approx(std::sqrt(2.0) / 2.0).epsilon(1e-14));
    CHECK(m.boundary_edges.size() == 4);
}

TEST_CASE("double diagonal n=2: total area is the domain area") {
    Mesh m = build_double_diagonal(dd(2));
    CHECK(m.n_triangles() == 16);
    CHECK(m.total_area() == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("double diagonal n=4 on [-1,1]^2: exactly two edge lengths") {
    Mesh m = build_double_diagonal(dd(4, {-1.0, 1.0, -1.0, 1.0}));
    const double h = 0.5;
    std::set<long long> lengths;
    for (const auto& e : m.interior_edges)
        lengths.insert(llround(e.length * 1e12));
    CHECK(lengths.size() == 2);
    CHECK(lengths.count(llround(h * 1e12)) == 1);
    CHECK(lengths.count(llround(h * std::sqrt(2.0) / 2.0 * 1e12)) == 1);
}

TEST_CASE("double diagonal combinatorial counts for several n") {
    for (int n : {1, 2, 3, 5, 8}) {
        Mesh m = build_double_diagonal(dd(n));
        CHECK(m.n_vertices() == (n + 1) * (n + 1) + n * n);
        CHECK(m.n_triangles() == 4 * n * n);
        // 4 half-diagonal edges per cell plus shared cell sides
        CHECK(static_cast<int>(m.interior_edges.size()) == 4 * n * n + 2 * n * (n - 1));
        CHECK(static_cast<int>(m.boundary_edges.size()) == 4 * n);
        // every triangle contributes 3 edge incidences
        CHECK(2 * m.interior_edges.size() + m.boundary_edges.size() ==
              static_cast<std::size_t>(3 * m.n_triangles()));
    }
}

TEST_CASE("interior edge list has no duplicate pairs, positive data") {
    Mesh m = build_double_diagonal(dd(3));
    std::set<std::pair<int, int>> pairs;
    for (const auto& e : m.interior_edges) {
        auto key = std::minmax(e.tri_a, e.tri_b);
        CHECK(pairs.insert(key).second);
        CHECK(e.length > 0.0);
    }
    for (double a : m.areas) CHECK(a > 0.0);
}

TEST_CASE("rejects invalid specs") {
    CHECK_THROWS_AS(build_double_diagonal(dd(0)), Error);
    CHECK_THROWS_AS(build_double_diagonal(dd(2, {0.0, 0.0, 0.0, 1.0})), Error);
    CHECK_THROWS_AS(build_jittered(jit(2, 0.25, 0)), Error);
    CHECK_THROWS_AS(build_jittered(jit(2, -0.1, 0)), Error);
}

TEST_CASE("jitter=0 equals the unjittered structured mesh") {
    Mesh a = build_jittered(jit(2, 0.0, 7));
    Mesh b = build_jittered(jit(2, 0.0, 99));
    REQUIRE(a.n_vertices() == b.n_vertices());
    for (int v = 0; v < a.n_vertices(); ++v) {
        CHECK(a.vertices[v].x == b.vertices[v].x);
        CHECK(a.vertices[v].y == b.vertices[v].y);
    }
}

TEST_CASE("same seed gives a bit-identical mesh, canonical bytes included") {
    Mesh a = build_jittered(jit(5, 0.2, 12345));
    Mesh b = build_jittered(jit(5, 0.2, 12345));
    CHECK(to_vtk(a) == to_vtk(b));
    Mesh c = build_jittered(jit(5, 0.2, 54321));
    CHECK(to_vtk(a) != to_vtk(c));
}

TEST_CASE("jittered n=8 seed=7 jitter=0.2 on [-1,1]^2 keeps valid geometry") {
    Mesh m = build_jittered(jit(8, 0.2, 7, {-1.0, 1.0, -1.0, 1.0}));
    double min_area = 1e300;
    for (double a : m.areas) min_area = std::min(min_area, a);
    CHECK(min_area > 0.0);
    CHECK(m.total_area() == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("dual graph n=1: every triangle has exactly two neighbors") {
    Mesh m = build_double_diagonal(dd(1));
    auto adj = dual_graph(m);
    for (const auto& nb : adj) CHECK(nb.size() == 2);
}

TEST_CASE("dual graph double counts the interior edge lengths") {
    Mesh m = build_double_diagonal(dd(3));
    auto adj = dual_graph(m);
    double total = 0.0;
    for (const auto& nb : adj)
        for (auto [t, len] : nb) total += len;
    double interior = 0.0;
    for (const auto& e : m.interior_edges) interior += e.length;
    CHECK(total == doctest::Approx(2.0 * interior).epsilon(1e-13));
}

TEST_CASE("jitter preserves connectivity") {
    Mesh a = build_jittered(jit(4, 0.0, 3));
    Mesh b = build_jittered(jit(4, 0.22, 3));
    auto adj_a = dual_graph(a);
    auto adj_b = dual_graph(b);
    REQUIRE(adj_a.size() == adj_b.size());
    for (std::size_t t = 0; t < adj_a.size(); ++t) {
        auto na = adj_a[t], nb = adj_b[t];
        auto key = [](const std::pair<int, double>& p) { return p.first; };
        std::vector<int> ia, ib;
        for (auto& p : na) ia.push_back(key(p));
        for (auto& p : nb) ib.push_back(key(p));
        std::sort(ia.begin(), ia.end());
        std::sort(ib.begin(), ib.end());
        CHECK(ia == ib);
    }
}

TEST_CASE("vtk serialization shape") {
    Mesh m = build_double_diagonal(dd(1));
    std::string vtk = to_vtk(m);
    CHECK(vtk.rfind("# vtk DataFile Version 3.0\n", 0) == 0);
    CHECK(vtk.find("DATASET UNSTRUCTURED_GRID") != std::string::npos);
    CHECK(vtk.find("CELL_TYPES 4") != std::string::npos);
}
