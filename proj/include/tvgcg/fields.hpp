#pragma once

#include <vector>

#include "tvgcg/mesh.hpp"

namespace tvgcg {

// Cell-wise scalar field (one value per triangle).
struct P0Field {
    std::vector<double> values;

    P0Field() = default;
    explicit P0Field(std::vector<double> v) : values(std::move(v)) {}
    static P0Field zeros(const Mesh& mesh) {
        return P0Field(std::vector<double>(mesh.n_triangles(), 0.0));
    }
    static P0Field constant(const Mesh& mesh, double c) {
        return P0Field(std::vector<double>(mesh.n_triangles(), c));
    }
    double& operator[](int t) { return values[t]; }
    double operator[](int t) const { return values[t]; }
    int size() const { return static_cast<int>(values.size()); }
};

// Vertex-wise scalar field (continuous piecewise linear).
struct P1Field {
    std::vector<double> values;

    P1Field() = default;
    explicit P1Field(std::vector<double> v) : values(std::move(v)) {}
    static P1Field zeros(const Mesh& mesh) {
        return P1Field(std::vector<double>(mesh.n_vertices(), 0.0));
    }
    double& operator[](int v) { return values[v]; }
    double operator[](int v) const { return values[v]; }
    int size() const { return static_cast<int>(values.size()); }
};

// Triangulated subset: strictly increasing triangle indices. May be empty or
// the full mesh.
struct TriSet {
    std::vector<int> indices;

    TriSet() = default;
    explicit TriSet(std::vector<int> idx);

    static TriSet from_mask(const std::vector<char>& mask);
    std::vector<char> mask(int n_triangles) const;
    P0Field indicator(const Mesh& mesh) const;

    bool empty() const { return indices.empty(); }
    int size() const { return static_cast<int>(indices.size()); }
    bool operator==(const TriSet& other) const { return indices == other.indices; }
};

}  // namespace tvgcg
