#include "graphmean/er_model.hpp"

#include <cmath>

#include "graphmean/error.hpp"
#include "graphmean/metric.hpp"
#include "graphmean/rng.hpp"

namespace graphmean {

void validate(const ErParams& params) {
    if (params.n < 2) throw Error("InvalidParams", "n must be at least 2");
    if (!(params.p > 0.0) || !(params.p < 1.0))
        throw Error("InvalidParams", "p must lie strictly inside (0,1)");
}

bool np_is_integer(const ErParams& params) {
    double np = params.n * params.p;
    return std::abs(np - std::round(np)) < kIntegerNpTolerance;
}

int floor_np(const ErParams& params) {
    double np = params.n * params.p;
    if (std::abs(np - std::round(np)) < kIntegerNpTolerance)
        return static_cast<int>(std::llround(np));
    return static_cast<int>(std::floor(np));
}

Graph sample_gnp(const ErParams& params, std::uint64_t seed) {
    validate(params);
    std::vector<Edge> edges;
    sample_edges(params, seed, [&](int u, int v) { edges.emplace_back(u, v); });
    return Graph(params.n, std::move(edges));
}

GraphStats compute_stats(const Graph& g, const Graph& mean_graph, const ErParams& params) {
    validate(params);
    if (g.vertex_count() != params.n || mean_graph.vertex_count() != params.n)
        throw Error("DimensionMismatch", "graph order does not match params.n");
    const int m = floor_np(params);
    for (int i = 1; i <= params.n; ++i)
        if (mean_graph.degree(i) != m)
            throw Error("NotRegular", "mean graph is not floor(np)-regular");

    const double np = params.n * params.p;
    const double p = params.p;
    if (p <= 0.5) {
        // |m - np - 1 + m_ij + 2p| <= 2 because 0 <= np - m < 1; a violation
        // would mean m was computed from the wrong product.
        double lo = m - np - 1.0 + 0.0 + 2.0 * p;
        double hi = m - np - 1.0 + 1.0 + 2.0 * p;
        if (std::abs(lo) > 2.0 || std::abs(hi) > 2.0)
            throw Error("InvalidParams", "U~ coefficient bound violated");
    }

    GraphStats s;
    s.edge_count = g.edge_count();
    std::int64_t common = 0;
    for (const Edge& e : g.edges())
        if (mean_graph.has_edge(e.first, e.second)) ++common;
    std::int64_t w = 0;
    for (int i = 1; i <= params.n; ++i) {
        std::int64_t x = g.degree(i);
        w += x * (x - 1);
    }
    s.w_n = w;
    // Ordered-pair sums count every edge twice.
    s.u_n = 2 * ((m - 1) * s.edge_count + common);
    s.u_tilde = 2.0 * ((m - np - 1.0 + 2.0 * p) * static_cast<double>(s.edge_count) +
                       static_cast<double>(common));
    return s;
}

std::int64_t fn_squared(const Graph& g, const Graph& mean_graph) {
    return frobenius_sq_laplacian(g, mean_graph);
}

AdjacencyBits::AdjacencyBits(const Graph& g) : n_(g.vertex_count()) {
    bits_.assign((static_cast<std::size_t>(n_) * n_ + 63) / 64, 0);
    for (const Edge& e : g.edges()) {
        std::size_t a = static_cast<std::size_t>(e.first - 1) * n_ + (e.second - 1);
        std::size_t b = static_cast<std::size_t>(e.second - 1) * n_ + (e.first - 1);
        bits_[a >> 6] |= std::uint64_t{1} << (a & 63);
        bits_[b >> 6] |= std::uint64_t{1} << (b & 63);
    }
}

std::int64_t degree_square_sum(const DegreeSequence& degrees) {
    std::int64_t s = 0;
    for (int d : degrees) s += static_cast<std::int64_t>(d) * d;
    return s;
}

std::int64_t sample_fn_squared(const ErParams& params, std::uint64_t seed,
                               const DegreeSequence& mean_degrees,
                               std::int64_t mean_edge_count,
                               std::int64_t mean_deg_sq_sum,
                               const AdjacencyBits* mean_adj) {
    const int n = params.n;
    // deg stays all-zero between calls; touched entries are reset below.
    thread_local std::vector<int> deg;
    thread_local std::vector<int> touched;
    if (static_cast<int>(deg.size()) != n) deg.assign(n, 0);
    touched.clear();
    std::int64_t edges = 0;
    std::int64_t common = 0;
    if (mean_adj) {
        sample_edges(params, seed, [&](int u, int v) {
            ++edges;
            if (deg[u - 1]++ == 0) touched.push_back(u - 1);
            if (deg[v - 1]++ == 0) touched.push_back(v - 1);
            common += mean_adj->test(u, v) ? 1 : 0;
        });
    } else {
        sample_edges(params, seed, [&](int u, int v) {
            ++edges;
            if (deg[u - 1]++ == 0) touched.push_back(u - 1);
            if (deg[v - 1]++ == 0) touched.push_back(v - 1);
        });
    }
    std::int64_t deg_part = mean_deg_sq_sum;
    for (int i : touched) {
        std::int64_t d = deg[i] - mean_degrees[i];
        deg_part += d * d - static_cast<std::int64_t>(mean_degrees[i]) * mean_degrees[i];
        deg[i] = 0;
    }
    return deg_part + 2 * (edges + mean_edge_count - 2 * common);
}

} // namespace graphmean
