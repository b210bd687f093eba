#include "tvgcg/fem.hpp"

#include <cmath>
#include <map>
#include <sstream>

#include "tvgcg/error.hpp"

namespace tvgcg {

std::vector<double> Csr::apply(const std::vector<double>& x) const {
    std::vector<double> y(n, 0.0);
    for (int i = 0; i < n; ++i) {
        double s = 0.0;
        for (int k = row_ptr[i]; k < row_ptr[i + 1]; ++k) s += val[k] * x[col[k]];
        y[i] = s;
    }
    return y;
}

double Csr::quad(const std::vector<double>& x, const std::vector<double>& y) const {
    double s = 0.0;
    for (int i = 0; i < n; ++i) {
        double row = 0.0;
        for (int k = row_ptr[i]; k < row_ptr[i + 1]; ++k) row += val[k] * y[col[k]];
        s += x[i] * row;
    }
    return s;
}

namespace {

Csr csr_from_triplets(int n, const std::map<std::pair<int, int>, double>& entries) {
    Csr m;
    m.n = n;
    m.row_ptr.assign(n + 1, 0);
    for (const auto& [ij, v] : entries) m.row_ptr[ij.first + 1]++;
    for (int i = 0; i < n; ++i) m.row_ptr[i + 1] += m.row_ptr[i];
    m.col.resize(entries.size());
    m.val.resize(entries.size());
    std::vector<int> cursor(m.row_ptr.begin(), m.row_ptr.end() - 1);
    for (const auto& [ij, v] : entries) {
        int k = cursor[ij.first]++;
        m.col[k] = ij.second;
        m.val[k] = v;
    }
    return m;
}

}  // namespace

std::vector<double> pcg(const Csr& A, const std::vector<double>& precond_inv,
                        const std::vector<double>& b) {
    const int n = A.n;
    const double rel_tol = 1e-13;
    const int max_iter = static_cast<int>(50.0 * std::sqrt(static_cast<double>(n))) + 10;

    double bnorm = 0.0;
    for (double v : b) bnorm += v * v;
    bnorm = std::sqrt(bnorm);
    std::vector<double> x(n, 0.0);
    if (bnorm == 0.0) return x;

    std::vector<double> r = b, z(n), p(n);
    for (int i = 0; i < n; ++i) z[i] = precond_inv[i] * r[i];
    p = z;
    double rz = 0.0;
    for (int i = 0; i < n; ++i) rz += r[i] * z[i];

    for (int it = 0; it < max_iter; ++it) {
        std::vector<double> Ap = A.apply(p);
        double pAp = 0.0;
        for (int i = 0; i < n; ++i) pAp += p[i] * Ap[i];
        double alpha = rz / pAp;
        double rnorm = 0.0;
        for (int i = 0; i < n; ++i) {
            x[i] += alpha * p[i];
            r[i] -= alpha * Ap[i];
            rnorm += r[i] * r[i];
        }
        if (std::sqrt(rnorm) <= rel_tol * bnorm) return x;
        double rz_new = 0.0;
        for (int i = 0; i < n; ++i) {
            z[i] = precond_inv[i] * r[i];
            rz_new += r[i] * z[i];
        }
        double beta = rz_new / rz;
        rz = rz_new;
        for (int i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
    }

    double rnorm = 0.0;
    for (double v : r) rnorm += v * v;
    std::ostringstream os;
    os << "pcg: no convergence after " << max_iter
       << " iterations, relative residual " << std::sqrt(rnorm) / bnorm;
    throw SolverError(os.str());
}

FemSystem::FemSystem(const Mesh& mesh, double c_coeff)
    : mesh_(&mesh), c_coeff_(c_coeff) {
    if (!(c_coeff >= 0.0)) throw Error("fem: reaction coefficient must be >= 0");
    const int nv = mesh.n_vertices();

    interior_index_.assign(nv, -1);
    for (int v = 0; v < nv; ++v) {
        if (!mesh.vertex_on_boundary[v]) {
            interior_index_[v] = static_cast<int>(interior_verts_.size());
            interior_verts_.push_back(v);
        }
    }

    std::map<std::pair<int, int>, double> a_entries;  // interior system
    std::map<std::pair<int, int>, double> m_entries;  // full mass
    for (int t = 0; t < mesh.n_triangles(); ++t) {
        const auto& tri = mesh.triangles[t];
        const double area = mesh.areas[t];
        // b_i = y_j - y_k, c_i = x_k - x_j (cyclic); K_ij = (b_i b_j + c_i c_j)/(4|T|)
        double bx[3], cy[3];
        for (int i = 0; i < 3; ++i) {
            const Vec2 pj = mesh.vertices[tri[(i + 1) % 3]];
            const Vec2 pk = mesh.vertices[tri[(i + 2) % 3]];
            bx[i] = pj.y - pk.y;
            cy[i] = pk.x - pj.x;
        }
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) {
                double kij = (bx[i] * bx[j] + cy[i] * cy[j]) / (4.0 * area);
                double mij = area / 12.0 * (i == j ? 2.0 : 1.0);
                m_entries[{tri[i], tri[j]}] += mij;
                int di = interior_index_[tri[i]], dj = interior_index_[tri[j]];
                if (di >= 0 && dj >= 0) a_entries[{di, dj}] += kij + c_coeff * mij;
            }
        }
    }
    A_ = csr_from_triplets(n_interior(), a_entries);
    M_ = csr_from_triplets(nv, m_entries);

    jacobi_inv_.assign(n_interior(), 0.0);
    for (int i = 0; i < A_.n; ++i)
        for (int k = A_.row_ptr[i]; k < A_.row_ptr[i + 1]; ++k)
            if (A_.col[k] == i) jacobi_inv_[i] = 1.0 / A_.val[k];
}

FemSystem assemble(const Mesh& mesh, double c_coeff) { return FemSystem(mesh, c_coeff); }

std::vector<double> FemSystem::load_vector(const P0Field& u) const {
    if (u.size() != mesh_->n_triangles()) throw Error("fem: P0 field size mismatch");
    std::vector<double> rhs(mesh_->n_vertices(), 0.0);
    for (int t = 0; t < mesh_->n_triangles(); ++t) {
        double w = mesh_->areas[t] / 3.0 * u[t];
        for (int v : mesh_->triangles[t]) rhs[v] += w;
    }
    return rhs;
}

std::vector<double> FemSystem::apply_mass(const P1Field& y) const {
    if (y.size() != mesh_->n_vertices()) throw Error("fem: P1 field size mismatch");
    return M_.apply(y.values);
}

P1Field FemSystem::solve_with_load(const std::vector<double>& rhs_all) const {
    if (static_cast<int>(rhs_all.size()) != mesh_->n_vertices())
        throw Error("fem: load vector size mismatch");
    std::vector<double> rhs_int(n_interior());
    for (int i = 0; i < n_interior(); ++i) rhs_int[i] = rhs_all[interior_verts_[i]];
    std::vector<double> y_int = pcg(A_, jacobi_inv_, rhs_int);
    ++solve_count_;
    P1Field y = P1Field::zeros(*mesh_);
    for (int i = 0; i < n_interior(); ++i) y[interior_verts_[i]] = y_int[i];
    return y;
}

P1Field FemSystem::solve_state(const P0Field& u) const {
    return solve_with_load(load_vector(u));
}

P1Field FemSystem::solve_adjoint(const P1Field& r) const {
    return solve_with_load(apply_mass(r));
}

P0Field project_p0(const Mesh& mesh, const P1Field& y) {
    if (y.size() != mesh.n_vertices()) throw Error("fem: P1 field size mismatch");
    P0Field u = P0Field::zeros(mesh);
    for (int t = 0; t < mesh.n_triangles(); ++t) {
        const auto& tri = mesh.triangles[t];
        u[t] = (y[tri[0]] + y[tri[1]] + y[tri[2]]) / 3.0;
    }
    return u;
}

double inner_l2(const Mesh& mesh, const P0Field& a, const P0Field& b) {
    if (a.size() != mesh.n_triangles() || b.size() != mesh.n_triangles())
        throw Error("inner_l2: P0 field size mismatch");
    double s = 0.0;
    for (int t = 0; t < mesh.n_triangles(); ++t) s += a[t] * b[t] * mesh.areas[t];
    return s;
}

double inner_l2(const Mesh& mesh, const P1Field& a, const P1Field& b) {
    if (a.size() != mesh.n_vertices() || b.size() != mesh.n_vertices())
        throw Error("inner_l2: P1 field size mismatch");
    // int_T a b = |T|/12 * ((sum a_i)(sum b_i) + sum a_i b_i)
    double s = 0.0;
    for (int t = 0; t < mesh.n_triangles(); ++t) {
        const auto& tri = mesh.triangles[t];
        double sa = 0.0, sb = 0.0, sab = 0.0;
        for (int v : tri) {
            sa += a[v];
            sb += b[v];
            sab += a[v] * b[v];
        }
        s += mesh.areas[t] / 12.0 * (sa * sb + sab);
    }
    return s;
}

double inner_l2(const Mesh& mesh, const P0Field& a, const P1Field& b) {
    if (a.size() != mesh.n_triangles() || b.size() != mesh.n_vertices())
        throw Error("inner_l2: field size mismatch");
    double s = 0.0;
    for (int t = 0; t < mesh.n_triangles(); ++t) {
        const auto& tri = mesh.triangles[t];
        s += a[t] * mesh.areas[t] / 3.0 * (b[tri[0]] + b[tri[1]] + b[tri[2]]);
    }
    return s;
}

}  // namespace tvgcg
