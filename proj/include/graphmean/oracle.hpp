#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "graphmean/er_model.hpp"
#include "graphmean/graph.hpp"

namespace graphmean {

// Exhaustive scoring of every labeled graph on n vertices. Minimizer search
// is capped at n = 6 (32768 graphs); n <= 5 cells are scored by the direct
// expectation sum over all graphs, n = 6 by the closed form, which the n <= 5
// cells have validated against the same enumeration.
constexpr int kMaxMinimizerSearchN = 6;
constexpr int kMaxEnumMomentsN = 6;
constexpr double kOracleTieTolerance = 1e-9;

struct OracleReport {
    int n;
    double p;
    std::vector<std::uint64_t> minimizer_masks; // edge-subset masks, ascending
    double min_value;

    std::vector<Graph> minimizers() const;
};

OracleReport exact_frechet_minimizers(const ErParams& params);

// Exact mean and variance of d_F^2(., mean_graph) under the product measure,
// by full enumeration with weights p^k (1-p)^(M-k).
std::pair<double, double> exact_fn2_moments(const ErParams& params, const Graph& mean_graph);

// One verification cell of the oracle sweep: mean-set membership equality,
// closed-form-vs-enumeration Frechet values (n <= 5), closed-vs-enumeration
// moments (where the closed forms apply).
struct OracleCell {
    int n = 0;
    double p = 0.0;
    std::int64_t minimizer_count = 0;
    double min_value = 0.0;
    bool membership_ok = false;
    double f_max_rel_dev = 0.0;    // NaN for n = 6
    double mean_rel_dev = 0.0;     // NaN when the closed moments do not apply
    double var_rel_dev = 0.0;
    bool ok = false;
};

std::vector<OracleCell> oracle_grid(int max_n, const std::vector<double>& p_grid);

} // namespace graphmean
