#pragma once

#include <functional>

#include "tvgcg/fields.hpp"
#include "tvgcg/mesh.hpp"

namespace tvgcg {

// Direction-dependent surface weight. The evaluator must be positively
// 1-homogeneous and even; evenness is asserted at construction since jump
// normals carry no canonical orientation.
class Anisotropy {
  public:
    static Anisotropy make(std::function<double(Vec2)> weight);
    static Anisotropy isotropic();

    double operator()(Vec2 dir) const { return weight_(dir); }

  private:
    explicit Anisotropy(std::function<double(Vec2)> w) : weight_(std::move(w)) {}
    std::function<double(Vec2)> weight_;
};

// Total variation of a cell-wise field: sum over interior edges of
// |value jump| * edge length. Boundary edges contribute nothing.
double tv_p0(const Mesh& mesh, const P0Field& u);

// Per(E, Omega) = TV of the indicator of E; Per(empty) = Per(Omega) = 0.
double perimeter(const Mesh& mesh, const TriSet& set);

// Area-weighted mean and the mean-zero part u - mean(u).
double mean(const Mesh& mesh, const P0Field& u);
P0Field center(const Mesh& mesh, const P0Field& u);

// Total variation of a continuous piecewise linear field:
// sum over triangles of area * |constant gradient|.
double tv_p1(const Mesh& mesh, const P1Field& y);

// Per-triangle constant gradient of a P1 field.
Vec2 p1_gradient(const Mesh& mesh, const P1Field& y, int tri);

// Anisotropic TV: sum over interior edges of |jump| * length * phi(edge normal).
double tv_phi_p0(const Mesh& mesh, const P0Field& u, const Anisotropy& phi);

}  // namespace tvgcg
