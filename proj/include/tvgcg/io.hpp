#pragma once

#include <string>
#include <vector>

#include "tvgcg/fields.hpp"
#include "tvgcg/gcg.hpp"
#include "tvgcg/mesh.hpp"

namespace tvgcg {

// VTK legacy ASCII snapshots of cell or vertex fields.
std::string vtk_with_cell_data(const Mesh& mesh, const std::string& name, const P0Field& u);
std::string vtk_with_point_data(const Mesh& mesh, const std::string& name, const P1Field& y);

// Convergence log; columns
// k,J,misfit,tv,sum_gamma,zeta,lambda_bar,n_atoms,dinkelbach_iters,ssn_iters,wall_ms
// with wall_ms last (excluded from the determinism contract).
std::string log_to_csv(const std::vector<LogRow>& rows);

// One row per final atom: weight, perimeter, triangle count.
std::string atoms_to_csv(const std::vector<Atom>& atoms, const std::vector<double>& gamma);

// Write-through-temporary-and-rename; throws Error on I/O failure.
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace tvgcg
