#pragma once

#include <string>
#include <vector>

#include "tvgcg/fields.hpp"
#include "tvgcg/mesh.hpp"
#include "tvgcg/tvcalc.hpp"

namespace tvgcg {

// Gauge of the regular octagon with a vertex at (1,0): fold the direction
// into [0, pi/4] by the dihedral-8 symmetry and evaluate
// cos(t) + (sqrt(2)-1) sin(t), scaled by the input magnitude.
double octagon_phi(Vec2 direction);

// The same anisotropy packaged for tv_phi_p0.
Anisotropy octagon_anisotropy();

// Shortest path between (0,0) and (1, sigma/tau) along mesh edges of the
// n x n double-diagonal mesh on [0,1]^2.
struct GeodesicProblem {
    int n = 4;       // subdivisions, multiple of tau
    int sigma = 0;   // 0 <= sigma <= tau, gcd(sigma, tau) = 1
    int tau = 1;
};

struct GeodesicResult {
    double length = 0.0;           // Dijkstra minimum over the admissible graph
    std::vector<Vec2> path;        // canonical optimal path (staircase), same length
};

// Dijkstra with Euclidean edge weights and lexicographic tie-breaking. For
// sigma > 0 the bottom side ((0,0),(1,0)] and the right side below sigma/tau
// are excluded from the admissible edge set; the degenerate sigma = 0 target
// lies on the bottom side, so no exclusion applies there. The returned path
// is the canonical diagonal/horizontal staircase hugging the chord, asserted
// to attain the Dijkstra minimum.
GeodesicResult discrete_geodesic(const GeodesicProblem& prob);

// True iff every path segment's unit direction is (1,1)/sqrt(2) or (1,0).
bool geodesic_direction_check(const std::vector<Vec2>& path);

// Closed form 4*sqrt(3)*lambda*|c|_1 + lambda*sqrt(c' A c) with
// A = [[11,-7],[-7,11]], for the TV of a two-tent field on equilateral
// triangles of area lambda.
double tent_ball_tv(double lambda, double c1, double c2);

// Equilateral lattice patch (per-triangle area lambda) containing two
// adjacent vertices z1, z2 with full hexagonal neighborhoods.
struct TentPatch {
    Mesh mesh;
    int z1 = -1;
    int z2 = -1;
};
TentPatch build_tent_patch(double lambda);

// TV of c1*g_{z1} + c2*g_{z2} on the patch, evaluated through tv_p1.
double tent_patch_tv(const TentPatch& patch, double c1, double c2);

// Geodesic-vs-anisotropy table for rational directions (sigma, tau).
struct ScanRow {
    double theta = 0.0;   // chord angle atan2(sigma, tau)
    int sigma = 0;
    int tau = 1;
    double length = 0.0;  // geodesic length
    double ratio = 0.0;   // length / |(1, sigma/tau)|
    double phi = 0.0;     // octagon gauge of the chord normal
    double abs_error = 0.0;
};

std::vector<ScanRow> anisotropy_scan(int n, const std::vector<std::pair<int, int>>& directions);
std::string scan_to_csv(const std::vector<ScanRow>& rows);

// Exhaustive enumeration over all 2^n_triangles subsets, usable on meshes
// with at most 20 triangles. Perimeter and integral are accumulated directly
// from the edge and area lists, independently of the max-flow machinery.
struct ExhaustiveScan {
    std::vector<double> per;    // indexed by subset bitmask
    std::vector<double> integ;  // int_E p
};

ExhaustiveScan exhaustive_scan(const Mesh& mesh, const P0Field& p);
double exhaustive_min_jlambda(const ExhaustiveScan& scan, double lambda);

// max over nonempty proper subsets of int_E p / Per(E), with a maximizer.
struct RatioOpt {
    double max_ratio = 0.0;
    unsigned best_mask = 0;
};
RatioOpt exhaustive_max_ratio(const ExhaustiveScan& scan);

}  // namespace tvgcg
