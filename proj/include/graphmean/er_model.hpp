#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "graphmean/graph.hpp"
#include "graphmean/rng.hpp"

namespace graphmean {

// G(n,p) parameters. p must be strictly interior: the degenerate endpoints
// are rejected rather than clamped.
struct ErParams {
    int n;
    double p;
};

void validate(const ErParams& params); // throws InvalidParams

// np is treated as an integer when it is within this distance of one. p is a
// real input, so exactness at representable products (p = 0.5 with even n,
// p = 0.3 with n = 200, ...) must be honored; the tolerance is far below any
// parameter grid in use.
constexpr double kIntegerNpTolerance = 1e-12;

bool np_is_integer(const ErParams& params);

// floor(np), except that products within kIntegerNpTolerance of an integer
// snap to it. This is the m used everywhere a regular reference graph is
// constructed.
int floor_np(const ErParams& params);

// Streams the sampled edges of G(n,p) in lexicographic order. Every one of
// the n(n-1)/2 vertex pairs is included independently with probability p,
// driven by one SplitMix64 stream per call, so identical (params, seed)
// give identical graphs regardless of platform or thread count. Two fixed
// regimes, selected by p alone: at or above kDenseSamplingThreshold each
// slot spends one draw against an exact 64-bit threshold; below it,
// geometric gap skipping jumps between included edges with one draw each.
constexpr double kDenseSamplingThreshold = 0.05;

template <class Emit>
void sample_edges(const ErParams& params, std::uint64_t seed, Emit&& emit) {
    const int n = params.n;
    const std::int64_t total = static_cast<std::int64_t>(n) * (n - 1) / 2;
    SplitMix64 rng(seed);
    if (params.p >= kDenseSamplingThreshold) {
        // ldexp(p, 64) is an exact integer for every double p >= 2^-11, so
        // the inclusion probability is exactly p.
        const std::uint64_t threshold = static_cast<std::uint64_t>(
            std::ldexp(static_cast<long double>(params.p), 64));
        for (int u = 1; u < n; ++u)
            for (int v = u + 1; v <= n; ++v)
                if (rng.next() < threshold) emit(u, v);
        return;
    }
    GeometricSkip skip(params.p);
    // Walk the lexicographic pair list by geometric gaps; (u, row_end) track
    // the row containing the current linear index.
    std::int64_t t = -1;
    int u = 1;
    std::int64_t row_end = n - 1; // one past the last index of row u, 0-based
    for (;;) {
        std::uint64_t gap = skip.next_gap(rng);
        if (gap >= static_cast<std::uint64_t>(total - t)) break;
        t += static_cast<std::int64_t>(gap) + 1;
        if (t >= total) break;
        while (t >= row_end) {
            ++u;
            row_end += n - u;
        }
        int v = u + 1 + static_cast<int>(t - (row_end - (n - u)));
        emit(u, v);
    }
}

Graph sample_gnp(const ErParams& params, std::uint64_t seed);

// Statistics entering the decomposition F_n^2 = m(m+1)n - 2 U_n + W_n
// against an m-regular reference graph:
//   E_n = |edges|,  W_n = sum_i X_i (X_i - 1)   (twice the wedge count),
//   U_n = sum_i sum_{j != i} (m - 1 + m_ij) I_ij,
//   U~_n = sum_i sum_{j != i} (m - np - 1 + m_ij + 2p) I_ij.
struct GraphStats {
    std::int64_t edge_count = 0;
    std::int64_t u_n = 0;
    std::int64_t w_n = 0;
    double u_tilde = 0.0;
};

GraphStats compute_stats(const Graph& g, const Graph& mean_graph, const ErParams& params);

// Squared Frobenius-Laplacian distance to a reference graph; identical to
// frobenius_sq_laplacian and kept as the named quantity of interest.
std::int64_t fn_squared(const Graph& g, const Graph& mean_graph);

// Flat adjacency bitset for repeated O(1) membership tests against a fixed
// reference graph (the constructed mean) in replica loops.
class AdjacencyBits {
public:
    explicit AdjacencyBits(const Graph& g);

    int vertex_count() const { return n_; }
    bool test(int u, int v) const {
        std::size_t idx = static_cast<std::size_t>(u - 1) * n_ + (v - 1);
        return (bits_[idx >> 6] >> (idx & 63)) & 1;
    }

private:
    int n_;
    std::vector<std::uint64_t> bits_;
};

std::int64_t degree_square_sum(const DegreeSequence& degrees);

// fn_squared for a freshly sampled replica without materializing the Graph:
// streams the sample's edges, accumulating degrees and the overlap with the
// reference. Touched vertices are tracked so the cost is O(edges), not O(n).
// mean_adj may be null when the reference is empty; mean_deg_sq_sum is
// degree_square_sum(mean_degrees), precomputed once per reference.
std::int64_t sample_fn_squared(const ErParams& params, std::uint64_t seed,
                               const DegreeSequence& mean_degrees,
                               std::int64_t mean_edge_count,
                               std::int64_t mean_deg_sq_sum,
                               const AdjacencyBits* mean_adj);

} // namespace graphmean
