#pragma once

#include <cstdint>

#include "graphmean/graph.hpp"

namespace graphmean {

// Squared distances between labeled graphs on the same vertex set. All three
// are non-negative integers; square roots are taken only at reporting
// boundaries. Computed from degree vectors and sorted edge lists, never by
// materializing n x n matrices.

// sum_{i,j} (l_ij - l'_ij)^2 = sum_i (D_i - D'_i)^2 + 2 |E(g) xor E(h)|
std::int64_t frobenius_sq_laplacian(const Graph& g, const Graph& h);

// sum_{i,j} (a_ij - a'_ij)^2 = 2 |E(g) xor E(h)|
std::int64_t frobenius_sq_adjacency(const Graph& g, const Graph& h);

// |E(g) xor E(h)|
std::int64_t hamming(const Graph& g, const Graph& h);

} // namespace graphmean
