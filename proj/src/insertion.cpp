#include "tvgcg/insertion.hpp"

#include <cmath>
#include <sstream>

#include "tvgcg/error.hpp"
#include "tvgcg/maxflow.hpp"
#include "tvgcg/tvcalc.hpp"

namespace tvgcg {

namespace {

constexpr double kZeroAbs = 1e-12;
constexpr double kZeroRel = 1e-12;
constexpr int kMaxDinkelbachIters = 100;

// |G| <= eps_abs + eps_rel * (1 + Per(E)): exact zeros in theory, not in floats.
bool g_is_zero(double g, double per) {
    return std::abs(g) <= kZeroAbs + kZeroRel * (1.0 + per);
}

double integral_over(const Mesh& mesh, const P0Field& p, const TriSet& set) {
    double s = 0.0;
    for (int t : set.indices) s += p[t] * mesh.areas[t];
    return s;
}

}  // namespace

std::pair<TriSet, double> solve_plambda(const Mesh& mesh, const P0Field& p, double lambda) {
    if (p.size() != mesh.n_triangles()) throw Error("solve_plambda: field size mismatch");
    if (!(lambda >= 0.0)) throw Error("solve_plambda: lambda must be >= 0");

    FlowNetwork net(mesh.n_triangles());
    for (const auto& e : mesh.interior_edges) net.add_edge(e.tri_a, e.tri_b, e.length);
    for (int t = 0; t < mesh.n_triangles(); ++t) {
        double w = lambda * p[t] * mesh.areas[t];
        if (w < 0.0)
            net.add_source_arc(t, -w);
        else if (w > 0.0)
            net.add_sink_arc(t, w);
    }

    CutResult cut = net.max_flow();
    TriSet set(std::move(cut.sink_side));

    // Evaluate j_lambda directly on the returned set; the flow value agrees
    // up to the E-independent constant sum_i max(0, lambda p_i |T_i|).
    double per = perimeter(mesh, set);
    double g = per - lambda * integral_over(mesh, p, set);
    if (g > kZeroAbs + kZeroRel * (1.0 + per))
        throw Error("solve_plambda: positive minimum value, cut tolerance failure");
    return {std::move(set), g};
}

InsertionResult dinkelbach(const Mesh& mesh, const P0Field& p_in) {
    // j_lambda(Omega) = 0 needs int_Omega p = 0 exactly; re-subtract the mean.
    P0Field p = center(mesh, p_in);

    InsertionResult res;
    double lambda = 1.0;
    auto [set, g] = solve_plambda(mesh, p, lambda);
    res.history.push_back({lambda, g});
    if (g_is_zero(g, perimeter(mesh, set))) {
        res.lambda_bar = 1.0;
        res.set = TriSet{};  // certificate: max ratio <= 1
        return res;
    }

    for (int iter = 0; iter < kMaxDinkelbachIters; ++iter) {
        double per = perimeter(mesh, set);
        double integ = integral_over(mesh, p, set);
        if (!(integ > 0.0))
            throw Error("dinkelbach: nonpositive integral with G < 0, theory violated");
        double lambda_next = per / integ;
        if (!(lambda_next < lambda)) {
            std::ostringstream os;
            os << "dinkelbach: lambda failed to decrease (" << lambda << " -> "
               << lambda_next << "), cut tolerance failure";
            throw Error(os.str());
        }

        auto [set_next, g_next] = solve_plambda(mesh, p, lambda_next);
        res.history.push_back({lambda_next, g_next});
        ++res.dinkelbach_iters;
        if (g_is_zero(g_next, perimeter(mesh, set_next))) {
            res.lambda_bar = lambda_next;
            res.set = std::move(set);  // last set with negative value attains the ratio
            return res;
        }
        lambda = lambda_next;
        set = std::move(set_next);
    }
    throw SolverError("dinkelbach: stagnated after 100 iterations");
}

}  // namespace tvgcg
