#pragma once

#include <cstdint>
#include <vector>

#include "uwalk/lattice.hpp"

namespace uwalk {

/// E(sigma_0 sigma_v) for every torus vertex v (indexed by vertex index) of
/// the Ising model on the torus multigraph with bond weights 1 + t s s'.
/// Column-to-column transfer matrix along axis 0; d = 1, or d = 2 with
/// L <= 4 (strip width at most 4).
std::vector<double> ising_correlations(const TorusSpec& spec, double tanh_beta);

/// The same by summing over all 2^V spin configurations (V <= 20).
std::vector<double> ising_correlations_brute_force(const TorusSpec& spec, double tanh_beta);

}  // namespace uwalk
