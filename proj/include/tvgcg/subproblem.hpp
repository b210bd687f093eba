#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "tvgcg/fields.hpp"
#include "tvgcg/mesh.hpp"

namespace tvgcg {

// Finite-dimensional coefficient problem over w = (gamma, c):
//   minimize (1/(2 alpha)) || sum_i w_i s_i - y_o ||^2 + sum_{i<=N} gamma_i
//   subject to gamma >= 0, c free,
// in Gram form: Q_ij = <s_i, s_j>, b_i = <s_i, y_o>, const <y_o, y_o>.
// Index N (0-based: the last row/column) is the unconstrained constant column.
struct CoefProblem {
    Eigen::MatrixXd Q;   // (N+1) x (N+1), symmetric PSD
    Eigen::VectorXd b;   // N+1
    double yo_sq = 0.0;  // <y_o, y_o>
    double alpha = 1.0;

    int n_atoms() const { return static_cast<int>(Q.rows()) - 1; }

    // Objective in the internal scaling (1/(2 alpha))||.||^2 + sum gamma.
    double objective(const Eigen::VectorXd& w) const;
};

struct CoefSolution {
    Eigen::VectorXd gamma;  // >= 0 exactly, hard-truncated on the active set
    double c = 0.0;
    double objective = 0.0;      // internal-scaling value (the quantity M)
    double kkt_residual = 0.0;   // on the alpha-scaled KKT system
    int iterations = 0;

    Eigen::VectorXd packed() const;
};

// Assembles the Gram problem from cached atom states (P1), the state of the
// constant control, and the observation (P0 or P1).
CoefProblem build_problem(const Mesh& mesh, const std::vector<P1Field>& atom_states,
                          const P1Field& state_of_ones, const P0Field& y_obs,
                          double alpha);
CoefProblem build_problem(const Mesh& mesh, const std::vector<P1Field>& atom_states,
                          const P1Field& state_of_ones, const P1Field& y_obs,
                          double alpha);

// Semismooth Newton on the normal map of the projected KKT system; dense
// Newton systems, active/inactive slant derivative. KKT residual is measured
// on the alpha-scaled gradient Qw - b + alpha*e (data O(1)), tolerance
// tol_ssn. Falls back to projected gradient with Armijo line search if Newton
// stalls; throws SolverError if that stalls too.
CoefSolution solve_ssn(const CoefProblem& prob, double tol_ssn = 1e-14,
                       const std::optional<CoefSolution>& warm = std::nullopt);

}  // namespace tvgcg
