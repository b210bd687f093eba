#include "tvgcg/subproblem.hpp"

#include <cmath>
#include <sstream>

#include "tvgcg/error.hpp"
#include "tvgcg/fem.hpp"

namespace tvgcg {

double CoefProblem::objective(const Eigen::VectorXd& w) const {
    double quad = w.dot(Q * w) - 2.0 * b.dot(w) + yo_sq;
    double l1 = w.head(n_atoms()).sum();
    return quad / (2.0 * alpha) + l1;
}

Eigen::VectorXd CoefSolution::packed() const {
    Eigen::VectorXd w(gamma.size() + 1);
    w.head(gamma.size()) = gamma;
    w(gamma.size()) = c;
    return w;
}

namespace {

template <class Obs>
CoefProblem build_impl(const Mesh& mesh, const std::vector<P1Field>& states,
                       const P1Field& k_ones, const Obs& y_obs, double alpha) {
    if (!(alpha > 0.0)) throw Error("build_problem: alpha must be positive");
    const int n = static_cast<int>(states.size());
    CoefProblem prob;
    prob.alpha = alpha;
    prob.Q.resize(n + 1, n + 1);
    prob.b.resize(n + 1);
    auto state_at = [&](int i) -> const P1Field& { return i < n ? states[i] : k_ones; };
    for (int i = 0; i <= n; ++i) {
        for (int j = i; j <= n; ++j) {
            double q = inner_l2(mesh, state_at(i), state_at(j));
            prob.Q(i, j) = q;
            prob.Q(j, i) = q;
        }
        prob.b(i) = inner_l2(mesh, state_at(i), y_obs);
    }
    prob.yo_sq = inner_l2(mesh, y_obs, y_obs);
    return prob;
}

// Gradient of the alpha-scaled objective (1/2)w'Qw - b'w + alpha*sum(gamma).
Eigen::VectorXd scaled_gradient(const CoefProblem& prob, const Eigen::VectorXd& w) {
    Eigen::VectorXd g = prob.Q * w - prob.b;
    g.head(prob.n_atoms()).array() += prob.alpha;
    return g;
}

Eigen::VectorXd project(const CoefProblem& prob, const Eigen::VectorXd& z) {
    Eigen::VectorXd w = z;
    for (int i = 0; i < prob.n_atoms(); ++i) w(i) = std::max(0.0, z(i));
    return w;
}

// KKT residual on the alpha-scaled system: max of |g_c| and the
// complementarity residuals ||min(gamma, g)||_inf.
double kkt_residual(const CoefProblem& prob, const Eigen::VectorXd& w) {
    Eigen::VectorXd g = scaled_gradient(prob, w);
    double r = std::abs(g(prob.n_atoms()));
    for (int i = 0; i < prob.n_atoms(); ++i)
        r = std::max(r, std::abs(std::min(w(i), g(i))));
    return r;
}

CoefSolution pack_solution(const CoefProblem& prob, const Eigen::VectorXd& w, int iters) {
    CoefSolution sol;
    sol.gamma = w.head(prob.n_atoms());
    sol.c = w(prob.n_atoms());
    sol.objective = prob.objective(w);
    sol.kkt_residual = kkt_residual(prob, w);
    sol.iterations = iters;
    return sol;
}

// Projected gradient with Armijo backtracking on the alpha-scaled objective.
// Safety net for the rare case the Newton active set cycles.
bool projected_gradient(const CoefProblem& prob, Eigen::VectorXd& w, double tol) {
    auto scaled_obj = [&](const Eigen::VectorXd& v) {
        return 0.5 * v.dot(prob.Q * v) - prob.b.dot(v) +
               prob.alpha * v.head(prob.n_atoms()).sum();
    };
    double step = 1.0 / std::max(1e-300, prob.Q.norm());
    for (int it = 0; it < 20000; ++it) {
        if (kkt_residual(prob, w) <= tol) return true;
        Eigen::VectorXd g = scaled_gradient(prob, w);
        double f0 = scaled_obj(w);
        double t = step;
        for (int ls = 0; ls < 60; ++ls) {
            Eigen::VectorXd w_new = project(prob, w - t * g);
            if (scaled_obj(w_new) <= f0 - 1e-4 / t * (w_new - w).squaredNorm()) {
                w = w_new;
                break;
            }
            t *= 0.5;
        }
    }
    return kkt_residual(prob, w) <= tol;
}

}  // namespace

CoefProblem build_problem(const Mesh& mesh, const std::vector<P1Field>& states,
                          const P1Field& k_ones, const P0Field& y_obs, double alpha) {
    return build_impl(mesh, states, k_ones, y_obs, alpha);
}

CoefProblem build_problem(const Mesh& mesh, const std::vector<P1Field>& states,
                          const P1Field& k_ones, const P1Field& y_obs, double alpha) {
    return build_impl(mesh, states, k_ones, y_obs, alpha);
}

CoefSolution solve_ssn(const CoefProblem& prob, double tol_ssn,
                       const std::optional<CoefSolution>& warm) {
    const int n = prob.n_atoms();
    const int m = n + 1;
    if (prob.Q.rows() != m || prob.Q.cols() != m || prob.b.size() != m)
        throw Error("solve_ssn: inconsistent problem dimensions");

    // Normal map variable z with w = P(z): solve g(P(z)) + (z - P(z)) = 0.
    Eigen::VectorXd z(m);
    if (warm && warm->gamma.size() == n) {
        Eigen::VectorXd w0 = warm->packed();
        for (int i = 0; i < n; ++i) w0(i) = std::max(0.0, w0(i));
        z = w0 - scaled_gradient(prob, w0);
        for (int i = 0; i < n; ++i)
            if (w0(i) > 0.0) z(i) = w0(i);
    } else {
        z = Eigen::VectorXd::Zero(m);
        z(n) = prob.Q(n, n) > 0.0 ? prob.b(n) / prob.Q(n, n) : 0.0;
        z.head(n) = -scaled_gradient(prob, project(prob, z)).head(n);
        for (int i = 0; i < n; ++i) z(i) = std::min(z(i), 0.0);
    }

    const int max_newton = 100;
    int iters = 0;
    for (; iters <= max_newton; ++iters) {
        Eigen::VectorXd w = project(prob, z);
        Eigen::VectorXd phi = scaled_gradient(prob, w) + (z - w);
        if (kkt_residual(prob, w) <= tol_ssn) return pack_solution(prob, w, iters);
        if (iters == max_newton) break;

        // Slant derivative: columns of the inactive set act through Q, the
        // active ones through the identity. Reduced solve on the inactive set.
        std::vector<int> inactive;
        inactive.reserve(m);
        for (int i = 0; i < n; ++i)
            if (z(i) > 0.0) inactive.push_back(i);
        inactive.push_back(n);

        const int ni = static_cast<int>(inactive.size());
        Eigen::MatrixXd H(ni, ni);
        Eigen::VectorXd rhs(ni);
        for (int a = 0; a < ni; ++a) {
            for (int bb = 0; bb < ni; ++bb) H(a, bb) = prob.Q(inactive[a], inactive[bb]);
            rhs(a) = -phi(inactive[a]);
        }
        Eigen::VectorXd dz_inactive = H.ldlt().solve(rhs);

        Eigen::VectorXd dz = Eigen::VectorXd::Zero(m);
        for (int a = 0; a < ni; ++a) dz(inactive[a]) = dz_inactive(a);
        for (int i = 0; i < n; ++i) {
            if (z(i) <= 0.0) {
                double coupling = 0.0;
                for (int a = 0; a < ni; ++a) coupling += prob.Q(i, inactive[a]) * dz_inactive(a);
                dz(i) = -phi(i) - coupling;
            }
        }
        z += dz;
    }

    // Newton stalled: fall back to projected gradient.
    Eigen::VectorXd w = project(prob, z);
    if (projected_gradient(prob, w, tol_ssn)) {
        for (int i = 0; i < n; ++i) w(i) = std::max(0.0, w(i));
        return pack_solution(prob, w, iters);
    }
    std::ostringstream os;
    os << "solve_ssn: no convergence, kkt residual " << kkt_residual(prob, w)
       << " after Newton and projected-gradient phases";
    throw SolverError(os.str());
}

}  // namespace tvgcg
