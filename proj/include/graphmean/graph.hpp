#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace graphmean {

using Edge = std::pair<int, int>; // (u,v) with 1 <= u < v <= n

using DegreeSequence = std::vector<int>;

// Simple undirected labeled graph on vertices 1..n. Immutable after
// construction; edges are kept sorted lexicographically with u < v.
// The constructor rejects loops, duplicates and out-of-range endpoints.
class Graph {
public:
    Graph(int n, std::vector<Edge> edges);

    static Graph empty(int n) { return Graph(n, {}); }
    static Graph complete(int n);

    int vertex_count() const { return n_; }
    const std::vector<Edge>& edges() const { return edges_; }
    std::int64_t edge_count() const { return static_cast<std::int64_t>(edges_.size()); }

    bool has_edge(int u, int v) const; // order of u,v does not matter
    int degree(int v) const { return degrees_[v - 1]; }
    const DegreeSequence& degrees() const { return degrees_; }

    Graph complement() const;

    bool operator==(const Graph& other) const {
        return n_ == other.n_ && edges_ == other.edges_;
    }

private:
    int n_;
    std::vector<Edge> edges_;
    DegreeSequence degrees_;
};

// Dense integer Laplacian (degree matrix minus adjacency matrix). Only used
// at small n; the metric module never materializes it.
class LaplacianMatrix {
public:
    explicit LaplacianMatrix(const Graph& g);

    int size() const { return n_; }
    std::int64_t at(int i, int j) const { return entries_[(i - 1) * static_cast<std::size_t>(n_) + (j - 1)]; }

private:
    int n_;
    std::vector<std::int64_t> entries_;
};

LaplacianMatrix laplacian(const Graph& g);

// Erdos-Gallai test: d is realizable by a simple graph iff the degree sum is
// even and sum_{i<=k} d_(i) <= k(k-1) + sum_{i>k} min(d_(i), k) for all k.
bool is_graphical(const DegreeSequence& d);

// Deterministic Havel-Hakimi realization: repeatedly connect the vertex with
// the largest residual degree (ties -> lowest index) to the next-highest
// residual vertices (same tie-break). The output realizes d per vertex, i.e.
// degrees(result)[i] == d[i]. Throws NotGraphical when no realization exists.
Graph realize(const DegreeSequence& d);

// Exhaustive enumeration support. Graphs on n vertices are indexed by an
// edge-subset mask over the lexicographic edge list, so mask 0 is the empty
// graph and mask 2^C(n,2)-1 is the complete graph.
constexpr int kMaxEnumVertices = 7;

std::int64_t enumeration_count(int n); // 2^C(n,2); throws TooLarge for n > 7
Graph graph_from_mask(int n, std::uint64_t mask);
void for_each_graph(int n, const std::function<void(const Graph&)>& fn);

// Text format: "n <n> edges <m>" then one "u v" line per edge, 1-indexed,
// u < v, sorted lexicographically.
std::string format_graph(const Graph& g);
Graph parse_graph(std::istream& in);
Graph parse_graph(const std::string& text);

} // namespace graphmean
