#pragma once

#include <utility>
#include <vector>

#include "tvgcg/fields.hpp"
#include "tvgcg/mesh.hpp"

namespace tvgcg {

// Outcome of the fractional insertion step max_E int_E p / Per(E).
// An empty set signals the optimality certificate (the maximum ratio is <= 1).
struct InsertionResult {
    double lambda_bar = 1.0;
    TriSet set;
    int dinkelbach_iters = 0;                    // number of lambda updates
    std::vector<std::pair<double, double>> history;  // (lambda_l, G(lambda_l))

    bool certificate() const { return set.empty(); }
};

// Minimizes j_lambda(E) = Per(E) - lambda * int_E p over triangulated subsets
// via a min cut on the dual graph: interior arc weights are shared edge
// lengths, source arcs max(0, -lambda p_i |T_i|), sink arcs
// max(0, lambda p_i |T_i|). Returns the minimizing set (sink side) and the
// value G = j_lambda(E) <= 0. Expects mean(p) = 0.
std::pair<TriSet, double> solve_plambda(const Mesh& mesh, const P0Field& p, double lambda);

// Largest-zero search for the value function G via the Newton-type update
// lambda <- Per(E_lambda) / int_{E_lambda} p, starting at lambda = 1.
// The lambda sequence is strictly decreasing and terminates finitely.
InsertionResult dinkelbach(const Mesh& mesh, const P0Field& p);

}  // namespace tvgcg
