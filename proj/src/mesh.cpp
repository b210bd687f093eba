#include "tvgcg/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <random>
#include <sstream>

#include "tvgcg/error.hpp"

namespace tvgcg {

double norm(Vec2 a) { return std::hypot(a.x, a.y); }

double Mesh::total_area() const {
    double s = 0.0;
    for (double a : areas) s += a;
    return s;
}

Vec2 Mesh::centroid(int tri) const {
    const auto& t = triangles[tri];
    return (1.0 / 3.0) * (vertices[t[0]] + vertices[t[1]] + vertices[t[2]]);
}

namespace {

double signed_area(Vec2 a, Vec2 b, Vec2 c) { return 0.5 * cross(b - a, c - a); }

void check_spec(const MeshSpec& spec) {
    if (spec.n < 1) throw Error("mesh: n must be >= 1");
    if (!(spec.jitter >= 0.0 && spec.jitter < 0.25))
        throw Error("mesh: jitter must lie in [0, 0.25)");
    if (!(spec.domain.width() > 0.0) || !(spec.domain.height() > 0.0))
        throw Error("mesh: degenerate domain rectangle");
}

// Derives areas, interior/boundary edges and boundary-vertex flags from the
// vertex/triangle lists. Boundary detection is combinatorial: an edge shared
// by fewer than two triangles is a boundary edge.
void finalize(Mesh& m) {
    m.areas.resize(m.triangles.size());
    for (std::size_t t = 0; t < m.triangles.size(); ++t) {
        const auto& tri = m.triangles[t];
        double a = signed_area(m.vertices[tri[0]], m.vertices[tri[1]], m.vertices[tri[2]]);
        if (!(a > 0.0)) throw Error("mesh: non-positive triangle area");
        m.areas[t] = a;
    }

    std::map<std::pair<int, int>, std::vector<int>> edge_tris;
    for (std::size_t t = 0; t < m.triangles.size(); ++t) {
        const auto& tri = m.triangles[t];
        for (int e = 0; e < 3; ++e) {
            int u = tri[e], v = tri[(e + 1) % 3];
            edge_tris[{std::min(u, v), std::max(u, v)}].push_back(static_cast<int>(t));
        }
    }

    m.interior_edges.clear();
    m.boundary_edges.clear();
    m.vertex_on_boundary.assign(m.vertices.size(), false);
    for (const auto& [key, tris] : edge_tris) {
        double len = norm(m.vertices[key.first] - m.vertices[key.second]);
        if (!(len > 0.0)) throw Error("mesh: zero-length edge");
        if (tris.size() == 2) {
            m.interior_edges.push_back({tris[0], tris[1], len, {key.first, key.second}});
        } else if (tris.size() == 1) {
            m.boundary_edges.push_back({tris[0], len, {key.first, key.second}});
            m.vertex_on_boundary[key.first] = true;
            m.vertex_on_boundary[key.second] = true;
        } else {
            throw Error("mesh: edge shared by more than two triangles");
        }
    }
}

}  // namespace

Mesh build_double_diagonal(const MeshSpec& spec) {
    check_spec(spec);
    if (spec.kind != MeshKind::DoubleDiagonal)
        throw Error("mesh: spec kind is not DoubleDiagonal");

    const int n = spec.n;
    const Rect d = spec.domain;
    const double hx = d.width() / n, hy = d.height() / n;

    Mesh m;
    m.bbox = d;
    m.vertices.reserve(static_cast<std::size_t>((n + 1) * (n + 1) + n * n));
    for (int j = 0; j <= n; ++j)
        for (int i = 0; i <= n; ++i)
            m.vertices.push_back({d.x0 + i * hx, d.y0 + j * hy});
    const int center0 = (n + 1) * (n + 1);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i)
            m.vertices.push_back({d.x0 + (i + 0.5) * hx, d.y0 + (j + 0.5) * hy});

    auto corner = [n](int i, int j) { return j * (n + 1) + i; };
    m.triangles.reserve(static_cast<std::size_t>(4 * n * n));
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            int sw = corner(i, j), se = corner(i + 1, j);
            int ne = corner(i + 1, j + 1), nw = corner(i, j + 1);
            int c = center0 + j * n + i;
            m.triangles.push_back({sw, se, c});  // bottom
            m.triangles.push_back({se, ne, c});  // right
            m.triangles.push_back({ne, nw, c});  // top
            m.triangles.push_back({nw, sw, c});  // left
        }
    }
    finalize(m);
    return m;
}

Mesh build_jittered(const MeshSpec& spec) {
    check_spec(spec);
    if (spec.kind != MeshKind::Jittered)
        throw Error("mesh: spec kind is not Jittered");

    const int n = spec.n;
    const Rect d = spec.domain;
    const double hx = d.width() / n, hy = d.height() / n;

    Mesh m;
    m.bbox = d;
    for (int j = 0; j <= n; ++j)
        for (int i = 0; i <= n; ++i)
            m.vertices.push_back({d.x0 + i * hx, d.y0 + j * hy});

    if (spec.jitter > 0.0) {
        // Fixed draw order (row-major over interior vertices, x then y) makes
        // the mesh a pure function of the spec.
        std::mt19937_64 rng(spec.seed);
        std::uniform_real_distribution<double> u(-spec.jitter, spec.jitter);
        for (int j = 1; j < n; ++j) {
            for (int i = 1; i < n; ++i) {
                double dx = u(rng) * hx, dy = u(rng) * hy;
                auto& v = m.vertices[j * (n + 1) + i];
                v.x += dx;
                v.y += dy;
            }
        }
    }

    auto corner = [n](int i, int j) { return j * (n + 1) + i; };
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            int sw = corner(i, j), se = corner(i + 1, j);
            int ne = corner(i + 1, j + 1), nw = corner(i, j + 1);
            if ((i + j) % 2 == 0) {  // diagonal sw-ne
                m.triangles.push_back({sw, se, ne});
                m.triangles.push_back({sw, ne, nw});
            } else {  // diagonal se-nw
                m.triangles.push_back({sw, se, nw});
                m.triangles.push_back({se, ne, nw});
            }
        }
    }
    finalize(m);
    return m;
}

Mesh build_mesh(const MeshSpec& spec) {
    return spec.kind == MeshKind::DoubleDiagonal ? build_double_diagonal(spec)
                                                 : build_jittered(spec);
}

Mesh make_mesh(std::vector<Vec2> vertices, std::vector<std::array<int, 3>> triangles,
               Rect bbox) {
    Mesh m;
    m.vertices = std::move(vertices);
    m.triangles = std::move(triangles);
    m.bbox = bbox;
    finalize(m);
    return m;
}

std::vector<std::vector<std::pair<int, double>>> dual_graph(const Mesh& mesh) {
    std::vector<std::vector<std::pair<int, double>>> adj(mesh.n_triangles());
    for (const auto& e : mesh.interior_edges) {
        adj[e.tri_a].push_back({e.tri_b, e.length});
        adj[e.tri_b].push_back({e.tri_a, e.length});
    }
    return adj;
}

std::string to_vtk(const Mesh& mesh) {
    std::ostringstream os;
    char buf[96];
    os << "# vtk DataFile Version 3.0\n";
    os << "tvgcg mesh\n";
    os << "ASCII\n";
    os << "DATASET UNSTRUCTURED_GRID\n";
    os << "POINTS " << mesh.n_vertices() << " double\n";
    for (const auto& v : mesh.vertices) {
        std::snprintf(buf, sizeof buf, "%.17g %.17g 0\n", v.x, v.y);
        os << buf;
    }
    os << "CELLS " << mesh.n_triangles() << " " << 4 * mesh.n_triangles() << "\n";
    for (const auto& t : mesh.triangles)
        os << "3 " << t[0] << " " << t[1] << " " << t[2] << "\n";
    os << "CELL_TYPES " << mesh.n_triangles() << "\n";
    for (int i = 0; i < mesh.n_triangles(); ++i) os << "5\n";
    return os.str();
}

}  // namespace tvgcg
