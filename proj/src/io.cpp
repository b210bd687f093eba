#include "tvgcg/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "tvgcg/error.hpp"

namespace tvgcg {

namespace {

std::string fmt(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

std::string vtk_with_cell_data(const Mesh& mesh, const std::string& name, const P0Field& u) {
    if (u.size() != mesh.n_triangles()) throw Error("vtk: cell data size mismatch");
    std::ostringstream os;
    os << to_vtk(mesh);
    os << "CELL_DATA " << mesh.n_triangles() << "\n";
    os << "SCALARS " << name << " double 1\n";
    os << "LOOKUP_TABLE default\n";
    for (double v : u.values) os << fmt(v) << "\n";
    return os.str();
}

std::string vtk_with_point_data(const Mesh& mesh, const std::string& name, const P1Field& y) {
    if (y.size() != mesh.n_vertices()) throw Error("vtk: point data size mismatch");
    std::ostringstream os;
    os << to_vtk(mesh);
    os << "POINT_DATA " << mesh.n_vertices() << "\n";
    os << "SCALARS " << name << " double 1\n";
    os << "LOOKUP_TABLE default\n";
    for (double v : y.values) os << fmt(v) << "\n";
    return os.str();
}

std::string log_to_csv(const std::vector<LogRow>& rows) {
    std::ostringstream os;
    os << "k,J,misfit,tv,sum_gamma,zeta,lambda_bar,n_atoms,dinkelbach_iters,ssn_iters,"
          "wall_ms\n";
    for (const auto& r : rows) {
        os << r.k << "," << fmt(r.j_scaled) << "," << fmt(r.misfit) << "," << fmt(r.tv)
           << "," << fmt(r.sum_gamma) << "," << fmt(r.zeta) << "," << fmt(r.lambda_bar)
           << "," << r.n_atoms << "," << r.dinkelbach_iters << "," << r.ssn_iters << ","
           << fmt(r.wall_ms) << "\n";
    }
    return os.str();
}

std::string atoms_to_csv(const std::vector<Atom>& atoms, const std::vector<double>& gamma) {
    if (atoms.size() != gamma.size()) throw Error("atoms_to_csv: size mismatch");
    std::ostringstream os;
    os << "weight,perimeter,triangle_count\n";
    for (std::size_t i = 0; i < atoms.size(); ++i)
        os << fmt(gamma[i]) << "," << fmt(atoms[i].perim) << "," << atoms[i].set.size()
           << "\n";
    return os.str();
}

void write_file_atomic(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    fs::path target(path);
    std::error_code ec;
    if (target.has_parent_path()) {
        fs::create_directories(target.parent_path(), ec);
        if (ec) throw Error("io: cannot create directory '" + target.parent_path().string() +
                            "': " + ec.message());
    }
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw Error("io: cannot open '" + tmp.string() + "' for writing");
        f << content;
        f.flush();
        if (!f) throw Error("io: write failed for '" + tmp.string() + "'");
    }
    fs::rename(tmp, target, ec);
    if (ec) throw Error("io: rename to '" + path + "' failed: " + ec.message());
}

}  // namespace tvgcg
