#include "tvgcg/config.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "tvgcg/error.hpp"
#include "tvgcg/fem.hpp"

namespace tvgcg {

namespace {

struct KeyValue {
    std::string value;
    int line = 0;
};

std::string trim(const std::string& s) {
    auto a = s.find_first_not_of(" \t\r");
    auto b = s.find_last_not_of(" \t\r");
    return a == std::string::npos ? "" : s.substr(a, b - a + 1);
}

double parse_double(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        double x = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ConfigError("config: key '" + key + "': not a number: '" + v + "'");
    }
}

long long parse_int(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        long long x = std::stoll(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ConfigError("config: key '" + key + "': not an integer: '" + v + "'");
    }
}

bool parse_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw ConfigError("config: key '" + key + "': not a boolean: '" + v + "'");
}

std::vector<double> parse_doubles(const std::string& key, const std::string& v,
                                  std::size_t count) {
    std::istringstream is(v);
    std::vector<double> out;
    double x;
    while (is >> x) out.push_back(x);
    if (!is.eof() || out.size() != count)
        throw ConfigError("config: key '" + key + "': expected " + std::to_string(count) +
                          " numbers, got '" + v + "'");
    return out;
}

}  // namespace

RunConfig parse_config(const std::string& text) {
    static const std::set<std::string> known = {
        "problem.preset", "problem.alpha",   "problem.c_coeff", "problem.observation",
        "mesh.kind",      "mesh.n",          "mesh.jitter",     "mesh.seed",
        "mesh.domain",    "solver.zeta_tol", "solver.ssn_tol",  "solver.max_iter",
        "output.dir",     "output.write_vtk", "output.write_csv"};

    std::map<std::string, KeyValue> kv;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config: line " + std::to_string(lineno) +
                              ": expected 'section.key = value'");
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        if (key.empty() || val.empty())
            throw ConfigError("config: line " + std::to_string(lineno) + ": empty key or value");
        if (!known.count(key))
            throw ConfigError("config: line " + std::to_string(lineno) + ": unknown key '" +
                              key + "'");
        if (kv.count(key))
            throw ConfigError("config: line " + std::to_string(lineno) + ": duplicate key '" +
                              key + "'");
        kv[key] = {val, lineno};
    }

    RunConfig cfg;
    cfg.mesh.kind = MeshKind::DoubleDiagonal;
    cfg.mesh.n = 32;
    cfg.mesh.domain = {-1.0, 1.0, -1.0, 1.0};

    bool alpha_set = false, c_set = false;
    if (auto it = kv.find("problem.preset"); it != kv.end()) {
        const std::string& p = it->second.value;
        if (p == "castle")
            cfg.preset = Preset::Castle;
        else if (p == "two_spheres")
            cfg.preset = Preset::TwoSpheres;
        else if (p == "custom")
            cfg.preset = Preset::Custom;
        else
            throw ConfigError("config: key 'problem.preset': unknown preset '" + p + "'");
    }
    switch (cfg.preset) {
        case Preset::Castle:
            cfg.alpha = 1e-4;
            cfg.c_coeff = 0.0;
            break;
        case Preset::TwoSpheres:
            cfg.alpha = 1e-5;
            cfg.c_coeff = 0.5;
            break;
        case Preset::Custom:
            break;
    }
    if (auto it = kv.find("problem.alpha"); it != kv.end()) {
        cfg.alpha = parse_double("problem.alpha", it->second.value);
        alpha_set = true;
    }
    if (auto it = kv.find("problem.c_coeff"); it != kv.end()) {
        cfg.c_coeff = parse_double("problem.c_coeff", it->second.value);
        c_set = true;
    }
    if (auto it = kv.find("problem.observation"); it != kv.end()) {
        std::istringstream os(it->second.value);
        std::string kind;
        os >> kind;
        if (kind != "box")
            throw ConfigError("config: key 'problem.observation': unknown kind '" + kind + "'");
        std::string rest;
        std::getline(os, rest);
        auto nums = parse_doubles("problem.observation", trim(rest), 5);
        cfg.has_box = true;
        cfg.box = {nums[0], nums[1], nums[2], nums[3]};
        cfg.box_value = nums[4];
    }
    if (cfg.preset == Preset::Custom) {
        if (!alpha_set) throw ConfigError("config: key 'problem.alpha' required for custom preset");
        if (!c_set) throw ConfigError("config: key 'problem.c_coeff' required for custom preset");
        if (!cfg.has_box)
            throw ConfigError("config: key 'problem.observation' required for custom preset");
    } else if (cfg.has_box) {
        throw ConfigError("config: key 'problem.observation' only valid with custom preset");
    }

    if (auto it = kv.find("mesh.kind"); it != kv.end()) {
        const std::string& k = it->second.value;
        if (k == "double_diagonal")
            cfg.mesh.kind = MeshKind::DoubleDiagonal;
        else if (k == "jittered")
            cfg.mesh.kind = MeshKind::Jittered;
        else
            throw ConfigError("config: key 'mesh.kind': unknown kind '" + k + "'");
    }
    if (auto it = kv.find("mesh.n"); it != kv.end())
        cfg.mesh.n = static_cast<int>(parse_int("mesh.n", it->second.value));
    if (auto it = kv.find("mesh.jitter"); it != kv.end())
        cfg.mesh.jitter = parse_double("mesh.jitter", it->second.value);
    if (auto it = kv.find("mesh.seed"); it != kv.end())
        cfg.mesh.seed = static_cast<std::uint64_t>(parse_int("mesh.seed", it->second.value));
    if (auto it = kv.find("mesh.domain"); it != kv.end()) {
        auto nums = parse_doubles("mesh.domain", it->second.value, 4);
        cfg.mesh.domain = {nums[0], nums[1], nums[2], nums[3]};
    }

    if (auto it = kv.find("solver.zeta_tol"); it != kv.end())
        cfg.zeta_tol = parse_double("solver.zeta_tol", it->second.value);
    if (auto it = kv.find("solver.ssn_tol"); it != kv.end())
        cfg.ssn_tol = parse_double("solver.ssn_tol", it->second.value);
    if (auto it = kv.find("solver.max_iter"); it != kv.end())
        cfg.max_iter = static_cast<int>(parse_int("solver.max_iter", it->second.value));

    if (auto it = kv.find("output.dir"); it != kv.end()) cfg.output_dir = it->second.value;
    if (auto it = kv.find("output.write_vtk"); it != kv.end())
        cfg.write_vtk = parse_bool("output.write_vtk", it->second.value);
    if (auto it = kv.find("output.write_csv"); it != kv.end())
        cfg.write_csv = parse_bool("output.write_csv", it->second.value);

    if (!(cfg.alpha > 0.0)) throw ConfigError("config: key 'problem.alpha' must be > 0");
    if (!(cfg.c_coeff >= 0.0)) throw ConfigError("config: key 'problem.c_coeff' must be >= 0");
    if (cfg.mesh.n < 1) throw ConfigError("config: key 'mesh.n' must be >= 1");
    if (!(cfg.mesh.jitter >= 0.0 && cfg.mesh.jitter < 0.25))
        throw ConfigError("config: key 'mesh.jitter' must lie in [0, 0.25)");
    if (!(cfg.zeta_tol > 0.0)) throw ConfigError("config: key 'solver.zeta_tol' must be > 0");
    if (!(cfg.ssn_tol > 0.0)) throw ConfigError("config: key 'solver.ssn_tol' must be > 0");
    if (cfg.max_iter < 1) throw ConfigError("config: key 'solver.max_iter' must be >= 1");

    if (const char* env = std::getenv("TVGCG_THREADS")) {
        long long t = parse_int("TVGCG_THREADS", env);
        if (t < 1) throw ConfigError("TVGCG_THREADS must be >= 1");
        cfg.threads = static_cast<int>(t);
    }
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("config: cannot open '" + path + "'");
    std::ostringstream os;
    os << f.rdbuf();
    return parse_config(os.str());
}

GcgOptions solver_options(const RunConfig& cfg) {
    GcgOptions opt;
    opt.alpha = cfg.alpha;
    opt.zeta_tol = cfg.zeta_tol;
    opt.ssn_tol = cfg.ssn_tol;
    opt.max_iter = cfg.max_iter;
    return opt;
}

P0Field two_spheres_u0(const Mesh& mesh) {
    const Vec2 c1{1.0 / 3.0, 1.0 / 3.0};
    const Vec2 c2{-1.0 / 3.0, -1.0 / 3.0};
    const double r1sq = 0.15, r2sq = 0.1;
    auto source = [&](Vec2 p) {
        double v = -1.0;
        Vec2 d1 = p - c1;
        if (d1.x * d1.x + d1.y * d1.y < r1sq) v += 1.0;
        Vec2 d2 = p - c2;
        if (d2.x * d2.x + d2.y * d2.y < r2sq) v += 2.0;
        return v;
    };
    // Per-triangle mean over a 16x16 barycentric subdivision (equal-area
    // subtriangles, sampled at their centroids).
    const int m = 16;
    P0Field u = P0Field::zeros(mesh);
    for (int t = 0; t < mesh.n_triangles(); ++t) {
        const auto& tri = mesh.triangles[t];
        Vec2 a = mesh.vertices[tri[0]], b = mesh.vertices[tri[1]], c = mesh.vertices[tri[2]];
        double acc = 0.0;
        int cnt = 0;
        for (int i = 0; i < m; ++i) {
            for (int j = 0; j < m - i; ++j) {
                // upward subtriangle centroid
                double l1 = (i + 1.0 / 3.0) / m, l2 = (j + 1.0 / 3.0) / m;
                acc += source({a.x + l1 * (b.x - a.x) + l2 * (c.x - a.x),
                               a.y + l1 * (b.y - a.y) + l2 * (c.y - a.y)});
                ++cnt;
                if (j < m - i - 1) {  // downward subtriangle centroid
                    double u1 = (i + 2.0 / 3.0) / m, u2 = (j + 2.0 / 3.0) / m;
                    acc += source({a.x + u1 * (b.x - a.x) + u2 * (c.x - a.x),
                                   a.y + u1 * (b.y - a.y) + u2 * (c.y - a.y)});
                    ++cnt;
                }
            }
        }
        u[t] = acc / cnt;
    }
    return u;
}

P0Field box_indicator(const Mesh& mesh, const Rect& box, double value) {
    P0Field u = P0Field::zeros(mesh);
    for (int t = 0; t < mesh.n_triangles(); ++t) {
        Vec2 c = mesh.centroid(t);
        if (c.x > box.x0 && c.x < box.x1 && c.y > box.y0 && c.y < box.y1) u[t] = value;
    }
    return u;
}

Observation make_observation(const RunConfig& cfg, const Mesh& mesh, const FemSystem& fem) {
    switch (cfg.preset) {
        case Preset::Castle:
            return box_indicator(mesh, {-0.5, 0.5, -0.5, 0.5}, 1.0);
        case Preset::TwoSpheres:
            return fem.solve_state(two_spheres_u0(mesh));
        case Preset::Custom:
            return box_indicator(mesh, cfg.box, cfg.box_value);
    }
    throw Error("make_observation: unreachable");
}

}  // namespace tvgcg
