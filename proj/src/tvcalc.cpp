#include "tvgcg/tvcalc.hpp"

#include <cmath>

#include "tvgcg/error.hpp"

namespace tvgcg {

Anisotropy Anisotropy::make(std::function<double(Vec2)> weight) {
    // Evenness check on a fixed fan of directions.
    for (int k = 0; k < 64; ++k) {
        double th = 3.14159265358979323846 * k / 64.0;
        Vec2 v{std::cos(th), std::sin(th)};
        double fwd = weight(v);
        double bwd = weight({-v.x, -v.y});
        if (!(fwd > 0.0) || std::abs(fwd - bwd) > 1e-12 * (1.0 + std::abs(fwd)))
            throw Error("Anisotropy: weight must be even and positive");
    }
    return Anisotropy(std::move(weight));
}

Anisotropy Anisotropy::isotropic() {
    return Anisotropy([](Vec2 v) { return norm(v); });
}

namespace {

void check_p0(const Mesh& mesh, const P0Field& u) {
    if (u.size() != mesh.n_triangles())
        throw Error("field/mesh mismatch: P0 size != triangle count");
}

void check_p1(const Mesh& mesh, const P1Field& y) {
    if (y.size() != mesh.n_vertices())
        throw Error("field/mesh mismatch: P1 size != vertex count");
}

}  // namespace

double tv_p0(const Mesh& mesh, const P0Field& u) {
    check_p0(mesh, u);
    double tv = 0.0;
    for (const auto& e : mesh.interior_edges)
        tv += std::abs(u[e.tri_a] - u[e.tri_b]) * e.length;
    return tv;
}

double perimeter(const Mesh& mesh, const TriSet& set) {
    return tv_p0(mesh, set.indicator(mesh));
}

double mean(const Mesh& mesh, const P0Field& u) {
    check_p0(mesh, u);
    double s = 0.0;
    for (int t = 0; t < mesh.n_triangles(); ++t) s += u[t] * mesh.areas[t];
    return s / mesh.total_area();
}

P0Field center(const Mesh& mesh, const P0Field& u) {
    double a = mean(mesh, u);
    P0Field v = u;
    for (double& x : v.values) x -= a;
    return v;
}

Vec2 p1_gradient(const Mesh& mesh, const P1Field& y, int tri) {
    const auto& t = mesh.triangles[tri];
    Vec2 pa = mesh.vertices[t[0]], pb = mesh.vertices[t[1]], pc = mesh.vertices[t[2]];
    double ya = y[t[0]], yb = y[t[1]], yc = y[t[2]];
    double inv2a = 1.0 / (2.0 * mesh.areas[tri]);
    // grad = sum_i y_i * rot90(opposite edge) / (2 |T|), CCW orientation
    return {inv2a * (ya * (pb.y - pc.y) + yb * (pc.y - pa.y) + yc * (pa.y - pb.y)),
            inv2a * (ya * (pc.x - pb.x) + yb * (pa.x - pc.x) + yc * (pb.x - pa.x))};
}

double tv_p1(const Mesh& mesh, const P1Field& y) {
    check_p1(mesh, y);
    double tv = 0.0;
    for (int t = 0; t < mesh.n_triangles(); ++t)
        tv += mesh.areas[t] * norm(p1_gradient(mesh, y, t));
    return tv;
}

double tv_phi_p0(const Mesh& mesh, const P0Field& u, const Anisotropy& phi) {
    check_p0(mesh, u);
    double tv = 0.0;
    for (const auto& e : mesh.interior_edges) {
        double jump = std::abs(u[e.tri_a] - u[e.tri_b]);
        if (jump == 0.0) continue;
        Vec2 tang = mesh.vertices[e.verts[1]] - mesh.vertices[e.verts[0]];
        Vec2 normal{-tang.y / e.length, tang.x / e.length};
        tv += jump * e.length * phi(normal);
    }
    return tv;
}

}  // namespace tvgcg
