#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "tvgcg/fem.hpp"
#include "tvgcg/fields.hpp"
#include "tvgcg/insertion.hpp"
#include "tvgcg/subproblem.hpp"

namespace tvgcg {

// Observations live either in P0 (cell data) or P1 (vertex data); the data
// term uses the exact mixed quadrature in both cases.
using Observation = std::variant<P0Field, P1Field>;

// Normalized indicator extremal point 1_E / Per(E) with its cached state.
struct Atom {
    TriSet set;
    double perim = 0.0;
    P1Field state;  // K_h(1_E / Per(E))
};

struct GcgOptions {
    double alpha = 1e-4;
    double zeta_tol = 1e-10;
    double ssn_tol = 1e-14;
    int max_iter = 500;
};

// One row per completed outer iteration; state AFTER the coefficient
// re-optimization of that iteration. zeta is in the internal scaling
// (misfit/(2 alpha) + TV), j/misfit are user-facing.
struct LogRow {
    int k = 0;
    double j_scaled = 0.0;     // (1/2)||y - y_o||^2 + alpha TV(u)
    double misfit = 0.0;       // (1/2)||y - y_o||^2
    double tv = 0.0;           // TV(u)
    double sum_gamma = 0.0;
    double zeta = 0.0;         // raw certificate, may be tiny-negative
    double lambda_bar = 1.0;
    int n_atoms = 0;
    int dinkelbach_iters = 0;
    int ssn_iters = 0;
    double wall_ms = 0.0;      // excluded from the determinism contract
};

enum class StepOutcome { Converged, Continued, Stagnated };
enum class RunStatus { Converged, MaxIterExceeded, Stagnated };

struct Solution {
    P0Field control;
    P1Field state;
    P0Field dual;
    std::vector<Atom> atoms;
    std::vector<double> gamma;
    double c = 0.0;
    double zeta = 0.0;        // clamped at 0 for reporting
    double lambda_bar = 1.0;  // from the final insertion
    int iterations = 0;
};

struct RunResult {
    RunStatus status = RunStatus::Converged;
    Solution solution;
    std::vector<LogRow> log;
    std::string diagnostic;
};

// Outer loop: dual variable, fractional insertion via Dinkelbach min cuts,
// coefficient re-optimization over the active set, pruning, certificate.
// Costs two PDE solves per insertion iteration (one adjoint, one state for
// the new atom); iterate states are rebuilt from cached atom states.
class GcgSolver {
  public:
    GcgSolver(const Mesh& mesh, const FemSystem& fem, Observation y_obs, GcgOptions opt);

    StepOutcome step();
    RunResult run();

    // Current iterate access.
    const P0Field& control() const { return u_; }
    const P1Field& state_field() const { return y_; }
    const P0Field& dual() const { return p_; }
    const std::vector<Atom>& atoms() const { return atoms_; }
    const std::vector<double>& gamma() const { return gamma_; }
    double constant() const { return c_; }
    double zeta_raw() const { return zeta_raw_; }
    double lambda_bar() const { return lambda_bar_; }
    int iteration() const { return k_; }
    const std::vector<LogRow>& log() const { return log_; }
    const P1Field& state_of_ones() const { return k_ones_; }
    double internal_objective() const;  // misfit/(2 alpha) + TV(u)

  private:
    const Mesh* mesh_;
    const FemSystem* fem_;
    Observation y_obs_;
    GcgOptions opt_;

    P1Field k_ones_;
    double yo_sq_ = 0.0;

    std::vector<Atom> atoms_;
    std::vector<double> gamma_;
    double c_ = 0.0;
    P0Field u_;
    P1Field y_;
    P0Field p_;
    double zeta_raw_ = 1.0;
    double lambda_bar_ = 1.0;
    int k_ = 0;
    std::vector<LogRow> log_;
    std::string diagnostic_;

    CoefProblem gram_;  // grows one row/column per insertion, shrinks on pruning

    void append_gram_column(const P1Field& state);
    void remove_gram_column(int i);
    double obs_inner(const P1Field& s) const;
    std::vector<double> adjoint_rhs() const;
    void rebuild_iterate();
    double misfit() const;  // (1/2)||y - y_o||^2
    CoefSolution reoptimize(double tol, const std::optional<CoefSolution>& warm,
                            int* iters);
    void prune_zero_atoms();
    void push_log(double lambda_bar, int dk_iters, int ssn_iters, double wall_ms);

  public:
    // Dual variable p = (1/alpha) Pi_0(z), z the adjoint state of y_o - y_k,
    // centered to mean zero. One adjoint solve.
    P0Field dual_variable();
    const std::string& diagnostic() const { return diagnostic_; }
};

}  // namespace tvgcg
