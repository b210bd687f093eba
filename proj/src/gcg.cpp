#include "tvgcg/gcg.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

#include "tvgcg/error.hpp"
#include "tvgcg/tvcalc.hpp"

namespace tvgcg {

namespace {
double now_ms() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double, std::milli>(clock::now().time_since_epoch()).count();
}
}  // namespace

GcgSolver::GcgSolver(const Mesh& mesh, const FemSystem& fem, Observation y_obs,
                     GcgOptions opt)
    : mesh_(&mesh), fem_(&fem), y_obs_(std::move(y_obs)), opt_(opt) {
    if (!(opt_.alpha > 0.0)) throw Error("gcg: alpha must be positive");
    if (!(opt_.zeta_tol > 0.0) || !(opt_.ssn_tol > 0.0))
        throw Error("gcg: tolerances must be positive");
    if (opt_.max_iter < 1) throw Error("gcg: max_iter must be >= 1");

    k_ones_ = fem_->solve_state(P0Field::constant(mesh, 1.0));
    yo_sq_ = std::visit([&](const auto& o) { return inner_l2(mesh, o, o); }, y_obs_);

    gram_.alpha = opt_.alpha;
    gram_.yo_sq = yo_sq_;
    gram_.Q.resize(1, 1);
    gram_.Q(0, 0) = inner_l2(mesh, k_ones_, k_ones_);
    gram_.b.resize(1);
    gram_.b(0) = obs_inner(k_ones_);

    // c0 minimizes F(c K_1): the best constant control.
    c_ = gram_.b(0) / gram_.Q(0, 0);
    rebuild_iterate();
}

double GcgSolver::obs_inner(const P1Field& s) const {
    return std::visit([&](const auto& o) { return inner_l2(*mesh_, s, o); }, y_obs_);
}

void GcgSolver::append_gram_column(const P1Field& state) {
    const int n = gram_.n_atoms();  // before insertion
    Eigen::MatrixXd Q(n + 2, n + 2);
    Eigen::VectorXd b(n + 2);
    // New atom sits at index n, the constant column stays last.
    Q.topLeftCorner(n, n) = gram_.Q.topLeftCorner(n, n);
    b.head(n) = gram_.b.head(n);
    for (int i = 0; i < n; ++i) {
        double q = inner_l2(*mesh_, atoms_[i].state, state);
        Q(i, n) = q;
        Q(n, i) = q;
    }
    Q(n, n) = inner_l2(*mesh_, state, state);
    double qc = inner_l2(*mesh_, state, k_ones_);
    Q(n, n + 1) = qc;
    Q(n + 1, n) = qc;
    for (int i = 0; i < n; ++i) {
        Q(i, n + 1) = gram_.Q(i, n);
        Q(n + 1, i) = gram_.Q(n, i);
    }
    Q(n + 1, n + 1) = gram_.Q(n, n);
    b(n) = obs_inner(state);
    b(n + 1) = gram_.b(n);
    gram_.Q = std::move(Q);
    gram_.b = std::move(b);
}

void GcgSolver::remove_gram_column(int i) {
    const int m = static_cast<int>(gram_.Q.rows());
    Eigen::MatrixXd Q(m - 1, m - 1);
    Eigen::VectorXd b(m - 1);
    for (int r = 0, rr = 0; r < m; ++r) {
        if (r == i) continue;
        for (int c = 0, cc = 0; c < m; ++c) {
            if (c == i) continue;
            Q(rr, cc) = gram_.Q(r, c);
            ++cc;
        }
        b(rr) = gram_.b(r);
        ++rr;
    }
    gram_.Q = std::move(Q);
    gram_.b = std::move(b);
}

std::vector<double> GcgSolver::adjoint_rhs() const {
    // rhs_v = int (y_o - y_k) phi_v, exact for P0 or P1 observations.
    std::vector<double> rhs;
    if (std::holds_alternative<P0Field>(y_obs_)) {
        rhs = fem_->load_vector(std::get<P0Field>(y_obs_));
    } else {
        rhs = fem_->apply_mass(std::get<P1Field>(y_obs_));
    }
    std::vector<double> my = fem_->apply_mass(y_);
    for (std::size_t v = 0; v < rhs.size(); ++v) rhs[v] -= my[v];
    return rhs;
}

P0Field GcgSolver::dual_variable() {
    P1Field z = fem_->solve_with_load(adjoint_rhs());
    P0Field p = project_p0(*mesh_, z);
    for (double& v : p.values) v /= opt_.alpha;
    // At subproblem optima int p = 0 holds in theory; enforce it.
    return center(*mesh_, p);
}

void GcgSolver::rebuild_iterate() {
    u_ = P0Field::constant(*mesh_, c_);
    P1Field y = P1Field::zeros(*mesh_);
    for (std::size_t i = 0; i < atoms_.size(); ++i) {
        double w = gamma_[i] / atoms_[i].perim;
        for (int t : atoms_[i].set.indices) u_[t] += w;
        for (int v = 0; v < mesh_->n_vertices(); ++v)
            y[v] += gamma_[i] * atoms_[i].state[v];
    }
    for (int v = 0; v < mesh_->n_vertices(); ++v) y[v] += c_ * k_ones_[v];
    y_ = std::move(y);
}

double GcgSolver::misfit() const {
    double yy = inner_l2(*mesh_, y_, y_);
    double yo = std::visit([&](const auto& o) { return inner_l2(*mesh_, y_, o); }, y_obs_);
    return 0.5 * (yy - 2.0 * yo + yo_sq_);
}

double GcgSolver::internal_objective() const {
    return misfit() / opt_.alpha + tv_p0(*mesh_, u_);
}

CoefSolution GcgSolver::reoptimize(double tol, const std::optional<CoefSolution>& warm,
                                   int* iters) {
    CoefSolution sol = solve_ssn(gram_, tol, warm);
    if (iters) *iters += sol.iterations;
    return sol;
}

// Drop atoms assigned an exact zero weight (the SSN active set is
// hard-truncated, so no fuzzy threshold is needed).
void GcgSolver::prune_zero_atoms() {
    for (int i = static_cast<int>(atoms_.size()) - 1; i >= 0; --i) {
        if (gamma_[i] == 0.0) {
            atoms_.erase(atoms_.begin() + i);
            gamma_.erase(gamma_.begin() + i);
            remove_gram_column(i);
        }
    }
}

void GcgSolver::push_log(double lambda_bar, int dk_iters, int ssn_iters, double wall_ms) {
    LogRow row;
    row.k = k_;
    row.misfit = misfit();
    row.tv = tv_p0(*mesh_, u_);
    row.j_scaled = row.misfit + opt_.alpha * row.tv;
    row.sum_gamma = 0.0;
    for (double g : gamma_) row.sum_gamma += g;
    row.zeta = zeta_raw_;
    row.lambda_bar = lambda_bar;
    row.n_atoms = static_cast<int>(atoms_.size());
    row.dinkelbach_iters = dk_iters;
    row.ssn_iters = ssn_iters;
    row.wall_ms = wall_ms;
    log_.push_back(row);
}

StepOutcome GcgSolver::step() {
    const double t0 = now_ms();

    p_ = dual_variable();
    InsertionResult ins = dinkelbach(*mesh_, p_);
    lambda_bar_ = ins.lambda_bar;

    if (ins.certificate()) {
        zeta_raw_ = 0.0;
        push_log(ins.lambda_bar, ins.dinkelbach_iters, 0, now_ms() - t0);
        ++k_;
        return StepOutcome::Converged;
    }

    // Duplicate insertion cannot happen at an exact subproblem optimum; if it
    // does, re-solve once at tighter tolerance before giving up.
    bool duplicate = false;
    for (const auto& a : atoms_)
        if (a.set == ins.set) duplicate = true;
    int ssn_iters = 0;
    if (duplicate) {
        CoefSolution retry = reoptimize(opt_.ssn_tol * 1e-2, std::nullopt, &ssn_iters);
        gamma_.assign(retry.gamma.data(), retry.gamma.data() + retry.gamma.size());
        c_ = retry.c;
        prune_zero_atoms();
        rebuild_iterate();
        p_ = dual_variable();
        InsertionResult retry_ins = dinkelbach(*mesh_, p_);
        lambda_bar_ = retry_ins.lambda_bar;
        if (retry_ins.certificate()) {
            zeta_raw_ = 0.0;
            push_log(retry_ins.lambda_bar, retry_ins.dinkelbach_iters, ssn_iters,
                     now_ms() - t0);
            ++k_;
            return StepOutcome::Converged;
        }
        bool still = false;
        for (const auto& a : atoms_)
            if (a.set == retry_ins.set) still = true;
        if (still) {
            std::ostringstream os;
            os << "gcg: inserted set duplicates an active atom at iteration " << k_
               << " with zeta " << zeta_raw_ << " > " << opt_.zeta_tol;
            diagnostic_ = os.str();
            push_log(retry_ins.lambda_bar, retry_ins.dinkelbach_iters, ssn_iters,
                     now_ms() - t0);
            ++k_;
            return StepOutcome::Stagnated;
        }
        ins = std::move(retry_ins);
    }

    // New atom: one state solve, cached for the rest of the run.
    Atom atom;
    atom.set = std::move(ins.set);
    atom.perim = perimeter(*mesh_, atom.set);
    P0Field v = atom.set.indicator(*mesh_);
    for (double& x : v.values) x /= atom.perim;
    atom.state = fem_->solve_state(v);

    append_gram_column(atom.state);
    atoms_.push_back(std::move(atom));

    CoefSolution warm;
    warm.gamma.resize(atoms_.size());
    for (std::size_t i = 0; i + 1 < atoms_.size(); ++i) warm.gamma(i) = gamma_[i];
    warm.gamma(atoms_.size() - 1) = 0.0;
    warm.c = c_;

    CoefSolution sol = reoptimize(opt_.ssn_tol, warm, &ssn_iters);
    double m_k = sol.objective;
    zeta_raw_ = m_k * (1.0 / ins.lambda_bar - 1.0);

    gamma_.assign(sol.gamma.data(), sol.gamma.data() + sol.gamma.size());
    c_ = sol.c;
    prune_zero_atoms();
    rebuild_iterate();

    push_log(ins.lambda_bar, ins.dinkelbach_iters, ssn_iters, now_ms() - t0);
    ++k_;
    return zeta_raw_ <= opt_.zeta_tol ? StepOutcome::Converged : StepOutcome::Continued;
}

RunResult GcgSolver::run() {
    RunResult res;
    while (k_ < opt_.max_iter) {
        StepOutcome out = step();
        if (out == StepOutcome::Converged) {
            res.status = RunStatus::Converged;
            break;
        }
        if (out == StepOutcome::Stagnated) {
            res.status = RunStatus::Stagnated;
            res.diagnostic = diagnostic_;
            break;
        }
        if (k_ >= opt_.max_iter) {
            res.status = RunStatus::MaxIterExceeded;
            res.diagnostic = "gcg: iteration cap reached";
        }
    }
    if (log_.empty()) res.status = RunStatus::MaxIterExceeded;

    res.solution.control = u_;
    res.solution.state = y_;
    res.solution.dual = p_;
    res.solution.atoms = atoms_;
    res.solution.gamma = gamma_;
    res.solution.c = c_;
    res.solution.zeta = std::max(0.0, zeta_raw_);
    res.solution.lambda_bar = lambda_bar_;
    res.solution.iterations = k_;
    res.log = log_;
    return res;
}

}  // namespace tvgcg
