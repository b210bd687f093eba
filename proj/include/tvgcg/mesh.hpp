#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace tvgcg {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
double norm(Vec2 a);

struct Rect {
    double x0 = -1.0, x1 = 1.0;
    double y0 = -1.0, y1 = 1.0;

    double width() const { return x1 - x0; }
    double height() const { return y1 - y0; }
    double area() const { return width() * height(); }
};

enum class MeshKind { DoubleDiagonal, Jittered };

struct MeshSpec {
    MeshKind kind = MeshKind::DoubleDiagonal;
    int n = 1;                 // square cells per side
    double jitter = 0.0;       // interior vertex displacement, fraction of h in [0, 0.25)
    std::uint64_t seed = 0;
    Rect domain;
};

// Triangulation of a rectangle with the dual-graph data (shared-edge lengths)
// required by the TV and graph-cut layers. Immutable after construction.
struct Mesh {
    struct InteriorEdge {
        int tri_a = -1;
        int tri_b = -1;
        double length = 0.0;
        std::array<int, 2> verts{-1, -1};  // endpoints of the shared edge
    };
    struct BoundaryEdge {
        int tri = -1;
        double length = 0.0;
        std::array<int, 2> verts{-1, -1};
    };

    std::vector<Vec2> vertices;
    std::vector<std::array<int, 3>> triangles;  // CCW vertex triples
    std::vector<double> areas;
    std::vector<InteriorEdge> interior_edges;   // each unordered pair exactly once
    std::vector<BoundaryEdge> boundary_edges;
    std::vector<bool> vertex_on_boundary;
    Rect bbox;

    int n_vertices() const { return static_cast<int>(vertices.size()); }
    int n_triangles() const { return static_cast<int>(triangles.size()); }
    double total_area() const;
    Vec2 centroid(int tri) const;
};

// n x n cells, each split by both diagonals into 4 triangles meeting at the
// cell center. Vertices: grid corners (row-major) followed by cell centers;
// triangles per cell in the fixed order bottom, right, top, left.
Mesh build_double_diagonal(const MeshSpec& spec);

// Structured single-diagonal grid (diagonal direction alternating per
// checkerboard cell), interior grid vertices displaced by a seeded uniform
// offset of magnitude <= jitter*h per coordinate. Connectivity is that of the
// unjittered grid; jitter < 0.25 keeps every triangle non-degenerate.
Mesh build_jittered(const MeshSpec& spec);

Mesh build_mesh(const MeshSpec& spec);

// General constructor from raw cells: validates orientation, computes areas,
// edge lists and boundary flags.
Mesh make_mesh(std::vector<Vec2> vertices, std::vector<std::array<int, 3>> triangles,
               Rect bbox);

// Per-triangle neighbor lists (neighbor index, shared edge length),
// consistent with interior_edges.
std::vector<std::vector<std::pair<int, double>>> dual_graph(const Mesh& mesh);

// Canonical serialization: VTK legacy ASCII, DATASET UNSTRUCTURED_GRID,
// cell type 5. Identical MeshSpec inputs yield identical bytes.
std::string to_vtk(const Mesh& mesh);

}  // namespace tvgcg
