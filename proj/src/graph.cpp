#include "graphmean/graph.hpp"

#include <algorithm>
#include <istream>
#include <sstream>

#include "graphmean/error.hpp"

namespace graphmean {

Graph::Graph(int n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
    if (n_ < 1) throw Error("InvalidParams", "graph needs at least one vertex");
    std::sort(edges_.begin(), edges_.end());
    degrees_.assign(n_, 0);
    const Edge* prev = nullptr;
    for (const Edge& e : edges_) {
        if (e.first < 1 || e.second > n_ || e.first >= e.second)
            throw Error("InvalidEdge", "edge (" + std::to_string(e.first) + "," +
                                           std::to_string(e.second) + ") is not 1 <= u < v <= n");
        if (prev && *prev == e)
            throw Error("DuplicateEdge", "edge (" + std::to_string(e.first) + "," +
                                             std::to_string(e.second) + ") listed twice");
        degrees_[e.first - 1]++;
        degrees_[e.second - 1]++;
        prev = &e;
    }
}

Graph Graph::complete(int n) {
    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
    for (int u = 1; u <= n; ++u)
        for (int v = u + 1; v <= n; ++v) edges.emplace_back(u, v);
    return Graph(n, std::move(edges));
}

bool Graph::has_edge(int u, int v) const {
    if (u > v) std::swap(u, v);
    return std::binary_search(edges_.begin(), edges_.end(), Edge{u, v});
}

Graph Graph::complement() const {
    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(n_) * (n_ - 1) / 2 - edges_.size());
    auto it = edges_.begin();
    for (int u = 1; u <= n_; ++u) {
        for (int v = u + 1; v <= n_; ++v) {
            if (it != edges_.end() && *it == Edge{u, v})
                ++it;
            else
                edges.emplace_back(u, v);
        }
    }
    return Graph(n_, std::move(edges));
}

LaplacianMatrix::LaplacianMatrix(const Graph& g) : n_(g.vertex_count()) {
    entries_.assign(static_cast<std::size_t>(n_) * n_, 0);
    for (int i = 1; i <= n_; ++i)
        entries_[(i - 1) * static_cast<std::size_t>(n_) + (i - 1)] = g.degree(i);
    for (const Edge& e : g.edges()) {
        entries_[(e.first - 1) * static_cast<std::size_t>(n_) + (e.second - 1)] = -1;
        entries_[(e.second - 1) * static_cast<std::size_t>(n_) + (e.first - 1)] = -1;
    }
}

LaplacianMatrix laplacian(const Graph& g) { return LaplacianMatrix(g); }

bool is_graphical(const DegreeSequence& d) {
    const int n = static_cast<int>(d.size());
    std::int64_t sum = 0;
    for (int x : d) {
        if (x < 0 || x > n - 1) return false;
        sum += x;
    }
    if (sum % 2 != 0) return false;
    DegreeSequence s(d);
    std::sort(s.begin(), s.end(), std::greater<int>());
    std::vector<std::int64_t> suffix(static_cast<std::size_t>(n) + 1, 0);
    for (int i = n - 1; i >= 0; --i) suffix[i] = suffix[i + 1] + s[i];
    std::int64_t lhs = 0;
    for (int k = 1; k <= n; ++k) {
        lhs += s[k - 1];
        // first index >= k with s[idx] <= k; entries before it contribute k
        auto it = std::partition_point(s.begin() + k, s.end(),
                                       [k](int x) { return x > k; });
        std::int64_t idx = it - s.begin();
        std::int64_t rhs = static_cast<std::int64_t>(k) * (k - 1) +
                           static_cast<std::int64_t>(k) * (idx - k) + suffix[idx];
        if (lhs > rhs) return false;
    }
    return true;
}

Graph realize(const DegreeSequence& d) {
    if (!is_graphical(d))
        throw Error("NotGraphical", "degree sequence has no simple-graph realization");
    const int n = static_cast<int>(d.size());
    std::vector<int> residual(d);
    std::vector<Edge> edges;
    std::vector<int> order(n);
    for (;;) {
        for (int i = 0; i < n; ++i) order[i] = i;
        // Highest residual first, lowest vertex index on ties.
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            if (residual[a] != residual[b]) return residual[a] > residual[b];
            return a < b;
        });
        int v = order[0];
        int need = residual[v];
        if (need == 0) break;
        if (need > n - 1 || residual[order[need]] <= 0)
            throw Error("NotGraphical", "Havel-Hakimi step failed");
        residual[v] = 0;
        for (int t = 1; t <= need; ++t) {
            int u = order[t];
            residual[u]--;
            edges.emplace_back(std::min(u, v) + 1, std::max(u, v) + 1);
        }
    }
    Graph g(n, std::move(edges));
    for (int i = 0; i < n; ++i)
        if (g.degree(i + 1) != d[i]) throw Error("NotGraphical", "realization degree mismatch");
    return g;
}

std::int64_t enumeration_count(int n) {
    if (n < 1 || n > kMaxEnumVertices)
        throw Error("TooLarge", "graph enumeration is capped at n = " +
                                    std::to_string(kMaxEnumVertices));
    int m = n * (n - 1) / 2;
    return std::int64_t{1} << m;
}

Graph graph_from_mask(int n, std::uint64_t mask) {
    std::vector<Edge> edges;
    int bit = 0;
    for (int u = 1; u <= n; ++u)
        for (int v = u + 1; v <= n; ++v, ++bit)
            if (mask & (std::uint64_t{1} << bit)) edges.emplace_back(u, v);
    return Graph(n, std::move(edges));
}

void for_each_graph(int n, const std::function<void(const Graph&)>& fn) {
    std::int64_t count = enumeration_count(n);
    for (std::int64_t mask = 0; mask < count; ++mask)
        fn(graph_from_mask(n, static_cast<std::uint64_t>(mask)));
}

std::string format_graph(const Graph& g) {
    std::ostringstream out;
    out << "n " << g.vertex_count() << " edges " << g.edge_count() << "\n";
    for (const Edge& e : g.edges()) out << e.first << " " << e.second << "\n";
    return out.str();
}

Graph parse_graph(std::istream& in) {
    std::string kw_n, kw_edges;
    int n = 0;
    std::int64_t m = -1;
    if (!(in >> kw_n >> n >> kw_edges >> m) || kw_n != "n" || kw_edges != "edges" || n < 1 || m < 0)
        throw Error("ParseError", "expected header: n <n> edges <m>");
    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(m));
    for (std::int64_t i = 0; i < m; ++i) {
        int u = 0, v = 0;
        if (!(in >> u >> v)) throw Error("ParseError", "truncated edge list");
        if (u < 1 || v > n || u >= v)
            throw Error("ParseError", "bad edge " + std::to_string(u) + " " + std::to_string(v));
        edges.emplace_back(u, v);
    }
    // Graph constructor re-checks duplicates; sortedness is not assumed.
    return Graph(n, std::move(edges));
}

Graph parse_graph(const std::string& text) {
    std::istringstream in(text);
    return parse_graph(in);
}

} // namespace graphmean
