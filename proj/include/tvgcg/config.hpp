#pragma once

#include <string>

#include "tvgcg/gcg.hpp"
#include "tvgcg/mesh.hpp"

namespace tvgcg {

enum class Preset { Castle, TwoSpheres, Custom };

// Flat key-value run configuration (section.key = value). Unknown keys are
// rejected; presets fill problem parameters, explicit keys override them.
struct RunConfig {
    Preset preset = Preset::Castle;
    double alpha = 1e-4;
    double c_coeff = 0.0;
    MeshSpec mesh;

    double zeta_tol = 1e-10;
    double ssn_tol = 1e-14;
    int max_iter = 500;

    std::string output_dir = "out";
    bool write_vtk = true;
    bool write_csv = true;

    // Custom observation: scaled box indicator (P0).
    bool has_box = false;
    Rect box;
    double box_value = 1.0;

    int threads = 1;  // TVGCG_THREADS; current operations are sequential
};

RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

GcgOptions solver_options(const RunConfig& cfg);

// Piecewise constant projection of the two-spheres source
// 1_{D1} + 2 1_{D2} - 1 (balls of radius sqrt(0.15) at (1/3,1/3) and
// sqrt(0.1) at -(1/3,1/3)), per-triangle means by barycentric subdivision.
P0Field two_spheres_u0(const Mesh& mesh);

// Indicator of triangles contained in the box (centroid test; exact when the
// box edges lie on mesh lines).
P0Field box_indicator(const Mesh& mesh, const Rect& box, double value);

// Observation for the configured problem: castle uses the P0 indicator of
// (-1/2,1/2)^2, two-spheres the P1 state of the projected source (one PDE
// solve), custom the configured box indicator.
Observation make_observation(const RunConfig& cfg, const Mesh& mesh, const FemSystem& fem);

}  // namespace tvgcg
