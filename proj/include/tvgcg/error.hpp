#pragma once

#include <stdexcept>
#include <string>

namespace tvgcg {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Thrown when an iterative solver exhausts its iteration budget.
struct SolverError : Error {
    explicit SolverError(const std::string& msg) : Error(msg) {}
};

// Thrown on malformed or inconsistent run configurations.
struct ConfigError : Error {
    explicit ConfigError(const std::string& msg) : Error(msg) {}
};

}  // namespace tvgcg
