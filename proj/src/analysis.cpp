#include "tvgcg/analysis.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <queue>
#include <sstream>

#include "tvgcg/error.hpp"

namespace tvgcg {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kSqrt2 = 1.41421356237309504880;
}  // namespace

double octagon_phi(Vec2 direction) {
    double r = norm(direction);
    if (!(r > 0.0)) throw Error("octagon_phi: zero direction");
    double theta = std::atan2(std::abs(direction.y), std::abs(direction.x));
    if (theta > kPi / 4.0) theta = kPi / 2.0 - theta;
    return r * (std::cos(theta) + (kSqrt2 - 1.0) * std::sin(theta));
}

Anisotropy octagon_anisotropy() {
    return Anisotropy::make([](Vec2 v) { return octagon_phi(v); });
}

namespace {

void check_problem(const GeodesicProblem& prob) {
    if (prob.tau < 1 || prob.sigma < 0 || prob.sigma > prob.tau)
        throw Error("geodesic: need 0 <= sigma <= tau, tau >= 1");
    if (std::gcd(prob.sigma, prob.tau) != 1)
        throw Error("geodesic: sigma and tau must be coprime");
    if (prob.n < 1 || prob.n % prob.tau != 0)
        throw Error("geodesic: n must be a positive multiple of tau");
}

// Canonical optimal staircase: a diagonal cell step whenever the chord at the
// next column lies strictly above the current height, horizontal otherwise.
// Hugs the chord y = (sigma/tau) x from above, so it avoids the excluded
// boundary segments, and uses sigma*n/tau diagonals in total.
std::vector<Vec2> canonical_path(const GeodesicProblem& prob) {
    const int n = prob.n;
    const double h = 1.0 / n;
    std::vector<Vec2> path;
    path.push_back({0.0, 0.0});
    long long y = 0;  // height in cells
    for (int x = 0; x < n; ++x) {
        bool diagonal = static_cast<long long>(prob.sigma) * (x + 1) > y * prob.tau;
        if (diagonal) {
            path.push_back({(x + 0.5) * h, (y + 0.5) * h});  // through the cell center
            ++y;
        }
        path.push_back({(x + 1) * h, y * h});
    }
    return path;
}

}  // namespace

GeodesicResult discrete_geodesic(const GeodesicProblem& prob) {
    check_problem(prob);
    const int n = prob.n;
    MeshSpec spec;
    spec.kind = MeshKind::DoubleDiagonal;
    spec.n = n;
    spec.domain = {0.0, 1.0, 0.0, 1.0};
    Mesh mesh = build_double_diagonal(spec);

    const double tol = 1e-12;
    const double target_y = static_cast<double>(prob.sigma) / prob.tau;
    auto vertex_at = [&](double x, double y) {
        for (int v = 0; v < mesh.n_vertices(); ++v)
            if (std::abs(mesh.vertices[v].x - x) < tol && std::abs(mesh.vertices[v].y - y) < tol)
                return v;
        throw Error("geodesic: endpoint is not a mesh node");
    };
    const int start = vertex_at(0.0, 0.0);
    const int goal = vertex_at(1.0, target_y);

    // Admissible vertices: for sigma > 0 drop the bottom side except the
    // origin and the right side strictly below the target height.
    std::vector<char> blocked(mesh.n_vertices(), 0);
    if (prob.sigma > 0) {
        for (int v = 0; v < mesh.n_vertices(); ++v) {
            const Vec2 p = mesh.vertices[v];
            if (std::abs(p.y) < tol && p.x > tol) blocked[v] = 1;
            if (std::abs(p.x - 1.0) < tol && p.y > -tol && p.y < target_y - tol)
                blocked[v] = 1;
        }
        blocked[goal] = 0;
    }

    // Vertex graph from triangle edges.
    std::vector<std::vector<std::pair<int, double>>> adj(mesh.n_vertices());
    {
        std::vector<std::pair<int, int>> seen;
        for (const auto& tri : mesh.triangles) {
            for (int e = 0; e < 3; ++e) {
                int a = tri[e], b = tri[(e + 1) % 3];
                if (a > b) std::swap(a, b);
                seen.push_back({a, b});
            }
        }
        std::sort(seen.begin(), seen.end());
        seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
        for (auto [a, b] : seen) {
            if (blocked[a] || blocked[b]) continue;
            double w = norm(mesh.vertices[a] - mesh.vertices[b]);
            adj[a].push_back({b, w});
            adj[b].push_back({a, w});
        }
    }

    std::vector<double> dist(mesh.n_vertices(), std::numeric_limits<double>::infinity());
    using Item = std::pair<double, int>;  // lexicographic: distance, then index
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
    dist[start] = 0.0;
    heap.push({0.0, start});
    while (!heap.empty()) {
        auto [d, v] = heap.top();
        heap.pop();
        if (d > dist[v]) continue;
        for (auto [w, len] : adj[v]) {
            if (dist[v] + len < dist[w]) {
                dist[w] = dist[v] + len;
                heap.push({dist[w], w});
            }
        }
    }
    if (!std::isfinite(dist[goal])) throw Error("geodesic: target unreachable");

    GeodesicResult res;
    res.length = dist[goal];
    res.path = canonical_path(prob);

    double canonical_len = 0.0;
    for (std::size_t i = 0; i + 1 < res.path.size(); ++i)
        canonical_len += norm(res.path[i + 1] - res.path[i]);
    if (std::abs(canonical_len - res.length) > 1e-10)
        throw Error("geodesic: canonical staircase is not optimal, mesh mismatch");
    return res;
}

bool geodesic_direction_check(const std::vector<Vec2>& path) {
    const double tol = 1e-12;
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
        Vec2 d = path[i + 1] - path[i];
        double len = norm(d);
        if (!(len > 0.0)) return false;
        Vec2 u{d.x / len, d.y / len};
        bool horizontal = std::abs(u.x - 1.0) < tol && std::abs(u.y) < tol;
        bool diagonal =
            std::abs(u.x - 1.0 / kSqrt2) < tol && std::abs(u.y - 1.0 / kSqrt2) < tol;
        if (!horizontal && !diagonal) return false;
    }
    return true;
}

double tent_ball_tv(double lambda, double c1, double c2) {
    if (!(lambda > 0.0)) throw Error("tent_ball_tv: lambda must be positive");
    double l1 = std::abs(c1) + std::abs(c2);
    double quad = 11.0 * c1 * c1 - 14.0 * c1 * c2 + 11.0 * c2 * c2;
    return 4.0 * std::sqrt(3.0) * lambda * l1 + lambda * std::sqrt(quad);
}

TentPatch build_tent_patch(double lambda) {
    if (!(lambda > 0.0)) throw Error("tent_patch: lambda must be positive");
    // Side length giving per-triangle area lambda.
    const double s = 2.0 * std::sqrt(lambda) * std::pow(3.0, -0.25);
    const Vec2 e1{s, 0.0};
    const Vec2 e2{0.5 * s, 0.5 * std::sqrt(3.0) * s};

    // 5 x 4 vertex parallelogram; z1 = (2,1), z2 = (3,1) are adjacent interior
    // vertices whose hexagonal neighborhoods are complete.
    const int ni = 5, nj = 4;
    auto id = [&](int i, int j) { return j * ni + i; };
    std::vector<Vec2> verts;
    std::vector<std::array<int, 3>> tris;
    for (int j = 0; j < nj; ++j)
        for (int i = 0; i < ni; ++i)
            verts.push_back(static_cast<double>(i) * e1 + static_cast<double>(j) * e2);
    for (int j = 0; j + 1 < nj; ++j) {
        for (int i = 0; i + 1 < ni; ++i) {
            tris.push_back({id(i, j), id(i + 1, j), id(i, j + 1)});
            tris.push_back({id(i + 1, j), id(i + 1, j + 1), id(i, j + 1)});
        }
    }
    TentPatch patch;
    patch.mesh = make_mesh(std::move(verts), std::move(tris),
                           {0.0, (ni - 1 + 0.5 * (nj - 1)) * s, 0.0, (nj - 1) * e2.y});
    patch.z1 = id(2, 1);
    patch.z2 = id(3, 1);
    return patch;
}

double tent_patch_tv(const TentPatch& patch, double c1, double c2) {
    P1Field y = P1Field::zeros(patch.mesh);
    y[patch.z1] = c1;
    y[patch.z2] = c2;
    return tv_p1(patch.mesh, y);
}

std::vector<ScanRow> anisotropy_scan(int n, const std::vector<std::pair<int, int>>& dirs) {
    std::vector<ScanRow> rows;
    rows.reserve(dirs.size());
    for (auto [sigma, tau] : dirs) {
        GeodesicProblem prob{n, sigma, tau};
        GeodesicResult geo = discrete_geodesic(prob);
        ScanRow row;
        row.theta = std::atan2(static_cast<double>(sigma), static_cast<double>(tau));
        row.sigma = sigma;
        row.tau = tau;
        row.length = geo.length;
        double slope = static_cast<double>(sigma) / tau;
        row.ratio = geo.length / std::sqrt(1.0 + slope * slope);
        row.phi = octagon_phi({static_cast<double>(sigma), -static_cast<double>(tau)});
        row.abs_error = std::abs(row.ratio - row.phi);
        rows.push_back(row);
    }
    return rows;
}

ExhaustiveScan exhaustive_scan(const Mesh& mesh, const P0Field& p) {
    const int nt = mesh.n_triangles();
    if (nt > 20) throw Error("exhaustive_scan: more than 20 triangles");
    if (p.size() != nt) throw Error("exhaustive_scan: field size mismatch");
    const std::size_t count = std::size_t{1} << nt;

    ExhaustiveScan scan;
    scan.per.assign(count, 0.0);
    scan.integ.assign(count, 0.0);
    std::vector<double> w(nt);
    for (int t = 0; t < nt; ++t) w[t] = p[t] * mesh.areas[t];

    for (std::size_t mask = 1; mask < count; ++mask) {
        // reuse the value without the lowest set bit
        int low = std::countr_zero(mask);
        scan.integ[mask] = scan.integ[mask & (mask - 1)] + w[low];
    }
    for (const auto& e : mesh.interior_edges) {
        std::size_t ba = std::size_t{1} << e.tri_a;
        std::size_t bb = std::size_t{1} << e.tri_b;
        for (std::size_t mask = 0; mask < count; ++mask)
            if (((mask & ba) != 0) != ((mask & bb) != 0)) scan.per[mask] += e.length;
    }
    return scan;
}

double exhaustive_min_jlambda(const ExhaustiveScan& scan, double lambda) {
    double best = 0.0;
    for (std::size_t mask = 0; mask < scan.per.size(); ++mask)
        best = std::min(best, scan.per[mask] - lambda * scan.integ[mask]);
    return best;
}

RatioOpt exhaustive_max_ratio(const ExhaustiveScan& scan) {
    RatioOpt opt;
    opt.max_ratio = -std::numeric_limits<double>::infinity();
    for (std::size_t mask = 1; mask + 1 < scan.per.size(); ++mask) {
        double r = scan.integ[mask] / scan.per[mask];
        if (r > opt.max_ratio) {
            opt.max_ratio = r;
            opt.best_mask = static_cast<unsigned>(mask);
        }
    }
    return opt;
}

std::string scan_to_csv(const std::vector<ScanRow>& rows) {
    std::ostringstream os;
    os << "theta,sigma,tau,length,ratio,phi,abs_error\n";
    char buf[256];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, "%.17g,%d,%d,%.17g,%.17g,%.17g,%.17g\n", r.theta,
                      r.sigma, r.tau, r.length, r.ratio, r.phi, r.abs_error);
        os << buf;
    }
    return os.str();
}

}  // namespace tvgcg
