#include "doctest.h"

#include <cmath>

#include "graphmean/er_model.hpp"
#include "graphmean/error.hpp"
#include "graphmean/frechet.hpp"
#include "graphmean/metric.hpp"
#include "graphmean/rng.hpp"

using namespace graphmean;

TEST_CASE("params validation") {
    CHECK_THROWS_AS(validate(ErParams{2, 0.0}), Error);
    CHECK_THROWS_AS(validate(ErParams{2, 1.0}), Error);
    CHECK_THROWS_AS(validate(ErParams{1, 0.5}), Error);
    CHECK_NOTHROW(validate(ErParams{2, 0.5}));
}

TEST_CASE("integer-np detection") {
    CHECK(np_is_integer(ErParams{4, 0.5}));
    CHECK(np_is_integer(ErParams{200, 0.3})); // 200 * fl(0.3) rounds to 60 exactly
    CHECK_FALSE(np_is_integer(ErParams{4, 0.3}));
    CHECK(floor_np(ErParams{4, 0.3}) == 1);
    CHECK(floor_np(ErParams{200, 0.3}) == 60);
    CHECK(floor_np(ErParams{5, 0.1}) == 0);
}

TEST_CASE("sampling is deterministic in the seed") {
    ErParams params{40, 0.2};
    Graph a = sample_gnp(params, 9001);
    Graph b = sample_gnp(params, 9001);
    Graph c = sample_gnp(params, 9002);
    CHECK(a == b);
    CHECK_FALSE(a == c);
}

TEST_CASE("sampled edges are valid and lexicographically ordered") {
    ErParams params{25, 0.35};
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        Graph g = sample_gnp(params, seed);
        for (std::size_t i = 1; i < g.edges().size(); ++i)
            CHECK(g.edges()[i - 1] < g.edges()[i]);
        for (const Edge& e : g.edges()) {
            CHECK(e.first >= 1);
            CHECK(e.first < e.second);
            CHECK(e.second <= 25);
        }
    }
}

TEST_CASE("mean edge count matches the binomial mean") {
    // Binomial mean n(n-1)p/2 = 249750 at n=1000, p=0.5; the sample mean over
    // S draws must land within 3 standard errors.
    ErParams params{1000, 0.5};
    const int samples = 2000;
    double total = 0.0;
    for (int k = 0; k < samples; ++k) {
        std::int64_t edges = 0;
        sample_edges(params, replica_seed(77, static_cast<std::uint64_t>(k)),
                     [&](int, int) { ++edges; });
        total += static_cast<double>(edges);
    }
    double mean = total / samples;
    double se = std::sqrt(249750.0 * 0.5 / samples);
    CHECK(std::abs(mean - 249750.0) < 3.0 * se);
}

TEST_CASE("edge inclusion probability is p at both ends of the slot list") {
    // The first and last slots of the lexicographic order should each be
    // included with probability p.
    ErParams params{12, 0.27};
    const int samples = 20000;
    int first = 0, last = 0;
    for (int k = 0; k < samples; ++k) {
        Graph g = sample_gnp(params, replica_seed(5, static_cast<std::uint64_t>(k)));
        if (g.has_edge(1, 2)) ++first;
        if (g.has_edge(11, 12)) ++last;
    }
    double se = std::sqrt(0.27 * 0.73 / samples);
    CHECK(std::abs(first / static_cast<double>(samples) - 0.27) < 4.0 * se);
    CHECK(std::abs(last / static_cast<double>(samples) - 0.27) < 4.0 * se);
}

TEST_CASE("stats on fixed graphs") {
    ErParams params4{4, 0.3};
    Graph matching(4, {{1, 2}, {3, 4}});
    Graph tri4(4, {{1, 2}, {1, 3}, {2, 3}});
    GraphStats s = compute_stats(tri4, matching, params4);
    CHECK(s.w_n == 6);
    CHECK(s.edge_count == 3);
    GraphStats s0 = compute_stats(Graph::empty(4), matching, params4);
    CHECK(s0.u_n == 0);
    CHECK(s0.w_n == 0);
    CHECK(s0.edge_count == 0);
}

TEST_CASE("stats rejects a non-regular mean graph") {
    ErParams params{4, 0.3};
    Graph path(4, {{1, 2}, {2, 3}, {3, 4}});
    CHECK_THROWS_AS(compute_stats(Graph::empty(4), path, params), Error);
}

TEST_CASE("decomposition identity on all graphs at n = 4") {
    ErParams params{4, 0.3};
    const int m = floor_np(params);
    Graph mean = construct_mean(params); // perfect matching
    for_each_graph(4, [&](const Graph& g) {
        GraphStats s = compute_stats(g, mean, params);
        std::int64_t lhs = static_cast<std::int64_t>(m) * (m + 1) * 4 - 2 * s.u_n + s.w_n;
        CHECK(lhs == fn_squared(g, mean));
    });
}

TEST_CASE("u-tilde identity on all graphs for n <= 5 and random graphs at n = 50") {
    // F_n^2 - m(m+1)n = -2 U~_n - 4(n-2) p E_n + W_n
    auto check_graph = [](const Graph& g, const Graph& mean, const ErParams& params) {
        GraphStats s = compute_stats(g, mean, params);
        int m = floor_np(params);
        double lhs = static_cast<double>(fn_squared(g, mean)) -
                     static_cast<double>(m) * (m + 1) * params.n;
        double rhs = -2.0 * s.u_tilde -
                     4.0 * (params.n - 2) * params.p * static_cast<double>(s.edge_count) +
                     static_cast<double>(s.w_n);
        CHECK(std::abs(lhs - rhs) < 1e-9);
    };

    ErParams p4{4, 0.3};
    Graph mean4 = construct_mean(p4);
    for_each_graph(4, [&](const Graph& g) { check_graph(g, mean4, p4); });

    ErParams p5{5, 0.45};
    Graph mean5 = construct_mean(p5);
    for_each_graph(5, [&](const Graph& g) { check_graph(g, mean5, p5); });

    ErParams p50{50, 0.3};
    Graph mean50 = construct_mean(p50);
    for (std::uint64_t seed = 0; seed < 1000; ++seed)
        check_graph(sample_gnp(p50, replica_seed(3, seed)), mean50, p50);
}

TEST_CASE("w_n is even and equals twice the wedge count, n <= 5") {
    struct Cell {
        int n;
        double p;
        DegreeSequence mean_degrees;
    };
    // p chosen so floor(np)-regular reference graphs exist.
    for (const Cell& cell : {Cell{3, 0.7, {2, 2, 2}}, Cell{4, 0.45, {1, 1, 1, 1}},
                             Cell{5, 0.45, {2, 2, 2, 2, 2}}}) {
        ErParams params{cell.n, cell.p};
        Graph mean = realize(cell.mean_degrees);
        const int n = cell.n;
        for_each_graph(n, [&](const Graph& g) {
            std::int64_t wedges = 0;
            for (int i = 1; i <= n; ++i)
                for (int j = 1; j <= n; ++j)
                    for (int k = j + 1; k <= n; ++k) {
                        if (j == i || k == i) continue;
                        if (g.has_edge(i, j) && g.has_edge(i, k)) ++wedges;
                    }
            GraphStats s = compute_stats(g, mean, params);
            CHECK(s.w_n % 2 == 0);
            CHECK(s.w_n == 2 * wedges);
        });
    }
}

TEST_CASE("sample_fn_squared equals fn_squared of the materialized sample") {
    for (double p : {0.25, 0.01}) { // one per sampling regime
        ErParams params{60, p};
        Graph mean = construct_mean(params);
        AdjacencyBits adj(mean);
        const AdjacencyBits* adj_ptr = mean.edge_count() > 0 ? &adj : nullptr;
        std::int64_t deg_sq = degree_square_sum(mean.degrees());
        for (std::uint64_t seed = 1; seed <= 50; ++seed) {
            Graph g = sample_gnp(params, seed);
            std::int64_t direct = fn_squared(g, mean);
            std::int64_t streamed = sample_fn_squared(params, seed, mean.degrees(),
                                                      mean.edge_count(), deg_sq, adj_ptr);
            CHECK(direct == streamed);
        }
    }
}
