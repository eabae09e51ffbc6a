#include "graphmean/metric.hpp"

#include "graphmean/error.hpp"

namespace graphmean {

namespace {

void check_same_order(const Graph& g, const Graph& h) {
    if (g.vertex_count() != h.vertex_count())
        throw Error("DimensionMismatch", "graphs have different vertex counts");
}

// |E(g) xor E(h)| by merging the two sorted edge lists.
std::int64_t symmetric_difference(const Graph& g, const Graph& h) {
    const auto& a = g.edges();
    const auto& b = h.edges();
    std::size_t i = 0, j = 0;
    std::int64_t common = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] == b[j]) {
            ++common;
            ++i;
            ++j;
        } else if (a[i] < b[j]) {
            ++i;
        } else {
            ++j;
        }
    }
    return g.edge_count() + h.edge_count() - 2 * common;
}

} // namespace

std::int64_t frobenius_sq_laplacian(const Graph& g, const Graph& h) {
    check_same_order(g, h);
    std::int64_t deg_part = 0;
    for (int i = 1; i <= g.vertex_count(); ++i) {
        std::int64_t d = g.degree(i) - h.degree(i);
        deg_part += d * d;
    }
    return deg_part + 2 * symmetric_difference(g, h);
}

std::int64_t frobenius_sq_adjacency(const Graph& g, const Graph& h) {
    check_same_order(g, h);
    return 2 * symmetric_difference(g, h);
}

std::int64_t hamming(const Graph& g, const Graph& h) {
    check_same_order(g, h);
    return symmetric_difference(g, h);
}

} // namespace graphmean
