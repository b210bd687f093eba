#pragma once

#include <vector>

#include "tvgcg/fields.hpp"
#include "tvgcg/mesh.hpp"

namespace tvgcg {

// Symmetric sparse matrix in CSR form (square).
struct Csr {
    int n = 0;
    std::vector<int> row_ptr;
    std::vector<int> col;
    std::vector<double> val;

    std::vector<double> apply(const std::vector<double>& x) const;
    double quad(const std::vector<double>& x, const std::vector<double>& y) const;
};

// Discrete elliptic operator for -div(grad y) + c y = u with homogeneous
// Dirichlet boundary: A = stiffness + c * mass on interior vertices
// (boundary DOFs eliminated), full vertex mass matrix M, and the P0->P1 load
// map B with B[v,t] = |T_t|/3 for the vertices of T_t. Immutable after
// assembly; solves are re-entrant apart from the call counter.
class FemSystem {
  public:
    FemSystem(const Mesh& mesh, double c_coeff);

    const Mesh& mesh() const { return *mesh_; }
    double c_coeff() const { return c_coeff_; }
    int n_interior() const { return static_cast<int>(interior_verts_.size()); }
    const Csr& interior_matrix() const { return A_; }
    const Csr& mass_matrix() const { return M_; }
    const std::vector<int>& interior_vertices() const { return interior_verts_; }

    // Load vector (B u)_v = sum_{T contains v} |T|/3 * u_T, all vertices.
    std::vector<double> load_vector(const P0Field& u) const;
    // (M y)_v over all vertices.
    std::vector<double> apply_mass(const P1Field& y) const;

    // Solves A y_int = rhs restricted to interior vertices; returns the full
    // vertex field with zeros on the boundary. Counts as one PDE solve.
    P1Field solve_with_load(const std::vector<double>& rhs_all_vertices) const;

    P1Field solve_state(const P0Field& u) const;
    P1Field solve_adjoint(const P1Field& r) const;

    long solve_count() const { return solve_count_; }

  private:
    const Mesh* mesh_;
    double c_coeff_;
    std::vector<int> interior_verts_;          // interior vertex ids
    std::vector<int> interior_index_;          // vertex -> interior dof or -1
    Csr A_;                                    // interior x interior
    Csr M_;                                    // all vertices
    std::vector<double> jacobi_inv_;           // 1/diag(A)
    mutable long solve_count_ = 0;
};

FemSystem assemble(const Mesh& mesh, double c_coeff);

// Orthogonal projection P1 -> P0: per-triangle mean of the vertex values
// (exact for linear elements).
P0Field project_p0(const Mesh& mesh, const P1Field& y);

// Exact L2(Omega) inner products for the piecewise-polynomial classes.
double inner_l2(const Mesh& mesh, const P0Field& a, const P0Field& b);
double inner_l2(const Mesh& mesh, const P1Field& a, const P1Field& b);
double inner_l2(const Mesh& mesh, const P0Field& a, const P1Field& b);
inline double inner_l2(const Mesh& mesh, const P1Field& a, const P0Field& b) {
    return inner_l2(mesh, b, a);
}

// Preconditioned conjugate gradients (Jacobi), relative residual <= 1e-13,
// at most 50*sqrt(n) iterations. Throws SolverError on non-convergence.
std::vector<double> pcg(const Csr& A, const std::vector<double>& precond_inv,
                        const std::vector<double>& b);

}  // namespace tvgcg
