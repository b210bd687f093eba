#include <doctest.h>

#include <cmath>
#include <random>

#include "tvgcg/fem.hpp"
#include "tvgcg/mesh.hpp"
#include "tvgcg/subproblem.hpp"

using namespace tvgcg;

namespace {

Mesh dd(int n) {
    MeshSpec s;
    s.kind = MeshKind::DoubleDiagonal;
    s.n = n;
    s.domain = {0.0, 1.0, 0.0, 1.0};
    return build_double_diagonal(s);
}

CoefProblem toy_diag(double q_a, double q_c, double b_a, double b_c, double alpha) {
    CoefProblem prob;
    prob.Q.resize(2, 2);
    prob.Q << q_a, 0.0, 0.0, q_c;
    prob.b.resize(2);
    prob.b << b_a, b_c;
    prob.yo_sq = 0.0;
    prob.alpha = alpha;
    return prob;
}

}  // namespace

TEST_CASE("empty active set reduces to the best constant") {
    Mesh m = dd(2);
    FemSystem fem = assemble(m, 0.0);
    P1Field k1 = fem.solve_state(P0Field::constant(m, 1.0));
    P0Field yo = P0Field::zeros(m);
    for (int t = 0; t < m.n_triangles(); ++t) yo[t] = 0.5 + 0.1 * t;

    CoefProblem prob = build_problem(m, {}, k1, yo, 1e-3);
    REQUIRE(prob.n_atoms() == 0);
    CoefSolution sol = solve_ssn(prob);
    double expected = inner_l2(m, k1, yo) / inner_l2(m, k1, k1);
    CHECK(sol.c == doctest::Approx(expected).epsilon(1e-12));
    CHECK(sol.kkt_residual <= 1e-14);
}

TEST_CASE("zero observation gives the zero solution") {
    Mesh m = dd(2);
    FemSystem fem = assemble(m, 0.0);
    P1Field k1 = fem.solve_state(P0Field::constant(m, 1.0));
    P1Field atom_state = fem.solve_state(P0Field::constant(m, 0.3));
    CoefProblem prob = build_problem(m, {atom_state}, k1, P0Field::zeros(m), 1e-2);
    CoefSolution sol = solve_ssn(prob);
    CHECK(sol.gamma(0) == 0.0);
    CHECK(std::abs(sol.c) <= 1e-12);
    CHECK(sol.objective == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("separable toy problem has the closed-form optimum") {
    const double q_a = 0.8, q_c = 1.7, alpha = 0.3;
    CoefProblem prob = toy_diag(q_a, q_c, 2.0 * q_a, 5.0 * q_c, alpha);
    CoefSolution sol = solve_ssn(prob);
    CHECK(sol.gamma(0) == doctest::Approx(2.0 - alpha / q_a).epsilon(1e-12));
    CHECK(sol.c == doctest::Approx(5.0).epsilon(1e-12));
    CHECK(sol.kkt_residual <= 1e-14);

    // large alpha clamps gamma to exactly zero
    CoefProblem clamped = toy_diag(q_a, q_c, 2.0 * q_a, 5.0 * q_c, 2.0 * q_a + 1.0);
    CoefSolution sol2 = solve_ssn(clamped);
    CHECK(sol2.gamma(0) == 0.0);
    CHECK(sol2.c == doctest::Approx(5.0).epsilon(1e-12));
}

TEST_CASE("duplicate columns leave the optimal value unchanged") {
    Mesh m = dd(2);
    FemSystem fem = assemble(m, 0.0);
    P1Field k1 = fem.solve_state(P0Field::constant(m, 1.0));
    P0Field v = P0Field::zeros(m);
    for (int t = 0; t < 6; ++t) v[t] = 1.0;
    P1Field s = fem.solve_state(v);
    P0Field yo = P0Field::zeros(m);
    for (int t = 0; t < m.n_triangles(); ++t) yo[t] = (t < 6) ? 1.0 : -0.2;

    CoefProblem one = build_problem(m, {s}, k1, yo, 1e-3);
    CoefProblem two = build_problem(m, {s, s}, k1, yo, 1e-3);
    CoefSolution sol1 = solve_ssn(one);
    CoefSolution sol2 = solve_ssn(two);
    CHECK(sol2.objective == doctest::Approx(sol1.objective).epsilon(1e-10));
}

TEST_CASE("warm start from the optimum finishes immediately") {
    const double alpha = 0.3;
    CoefProblem prob = toy_diag(0.8, 1.7, 1.6, 8.5, alpha);
    CoefSolution sol = solve_ssn(prob);
    CoefSolution again = solve_ssn(prob, 1e-14, sol);
    CHECK(again.iterations <= 1);
    CHECK(again.gamma(0) == doctest::Approx(sol.gamma(0)).epsilon(1e-14));
}

TEST_CASE("returned point beats random feasible perturbations") {
    std::mt19937 rng(4);
    std::normal_distribution<double> g(0.0, 1.0);
    const int n = 5;
    Eigen::MatrixXd S = Eigen::MatrixXd::NullaryExpr(n + 1, n + 1, [&]() { return g(rng); });
    CoefProblem prob;
    prob.Q = S.transpose() * S + 0.05 * Eigen::MatrixXd::Identity(n + 1, n + 1);
    prob.b = Eigen::VectorXd::NullaryExpr(n + 1, [&]() { return g(rng); });
    prob.yo_sq = 0.0;
    prob.alpha = 0.05;

    CoefSolution sol = solve_ssn(prob);
    Eigen::VectorXd w = sol.packed();
    double best = prob.objective(w);
    for (int it = 0; it < 100; ++it) {
        Eigen::VectorXd d = Eigen::VectorXd::NullaryExpr(n + 1, [&]() { return g(rng); });
        Eigen::VectorXd cand = w + 0.1 * d;
        for (int i = 0; i < n; ++i) cand(i) = std::max(0.0, cand(i));
        CHECK(prob.objective(cand) >= best - 1e-12);
    }

    // complementarity with hard zeros on the active set
    Eigen::VectorXd grad = prob.Q * w - prob.b;
    grad.head(n).array() += prob.alpha;
    for (int i = 0; i < n; ++i) {
        CHECK(sol.gamma(i) >= 0.0);
        CHECK(sol.gamma(i) * std::min(grad(i), sol.gamma(i)) ==
              doctest::Approx(0.0).epsilon(1e-12));
    }
}

TEST_CASE("internal and alpha-scaled formulations share the argmin") {
    std::mt19937 rng(8);
    std::normal_distribution<double> g(0.0, 1.0);
    const int n = 4;
    Eigen::MatrixXd S = Eigen::MatrixXd::NullaryExpr(n + 1, n + 1, [&]() { return g(rng); });
    CoefProblem prob;
    prob.Q = S.transpose() * S + 0.1 * Eigen::MatrixXd::Identity(n + 1, n + 1);
    prob.b = Eigen::VectorXd::NullaryExpr(n + 1, [&]() { return g(rng); });
    prob.yo_sq = 1.0;
    prob.alpha = 0.07;
    CoefSolution sol = solve_ssn(prob);

    // minimize (1/2)|.|^2 + alpha sum gamma by brute projected gradient
    Eigen::VectorXd w = Eigen::VectorXd::Zero(n + 1);
    double step = 0.5 / prob.Q.operatorNorm();
    for (int it = 0; it < 200000; ++it) {
        Eigen::VectorXd grad = prob.Q * w - prob.b;
        grad.head(n).array() += prob.alpha;
        w -= step * grad;
        for (int i = 0; i < n; ++i) w(i) = std::max(0.0, w(i));
    }
    for (int i = 0; i < n; ++i) CHECK(sol.gamma(i) == doctest::Approx(w(i)).epsilon(1e-8));
    CHECK(sol.c == doctest::Approx(w(n)).epsilon(1e-8));
}
