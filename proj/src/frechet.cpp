#include "graphmean/frechet.hpp"

#include <cmath>
#include <memory>

#include "graphmean/error.hpp"
#include "graphmean/stats.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace graphmean {

std::string MeanSetSpec::case_name() const {
    switch (case_tag) {
        case MeanCase::IntegerNP: return "IntegerNP";
        case MeanCase::EvenRegular: return "EvenRegular";
        case MeanCase::OddAdjusted: return "OddAdjusted";
    }
    return "?";
}

std::string MeanSetSpec::admissible_description() const {
    switch (case_tag) {
        case MeanCase::IntegerNP:
            return "every degree in {" + std::to_string(m - 1) + "," + std::to_string(m) +
                   "} with even degree sum";
        case MeanCase::EvenRegular:
            return "every degree equal to " + std::to_string(m);
        case MeanCase::OddAdjusted: {
            std::string opts;
            if (allow_plus && allow_minus)
                opts = std::to_string(m + 1) + " or " + std::to_string(m - 1);
            else if (allow_plus)
                opts = std::to_string(m + 1);
            else
                opts = std::to_string(m - 1);
            return "every degree equal to " + std::to_string(m) +
                   " except one vertex of degree " + opts;
        }
    }
    return "?";
}

MeanSetSpec mean_set_spec(const ErParams& params) {
    validate(params);
    MeanSetSpec spec{};
    spec.m = floor_np(params);
    if (np_is_integer(params)) {
        spec.case_tag = MeanCase::IntegerNP;
        spec.frac_np = 0.0;
        spec.allow_plus = spec.allow_minus = false;
        return spec;
    }
    double np = params.n * params.p;
    spec.frac_np = np - spec.m;
    bool even = (static_cast<std::int64_t>(params.n) * spec.m) % 2 == 0;
    if (even) {
        spec.case_tag = MeanCase::EvenRegular;
        spec.allow_plus = spec.allow_minus = false;
    } else {
        spec.case_tag = MeanCase::OddAdjusted;
        double off = spec.frac_np - 0.5;
        spec.allow_plus = off >= -kHalfFracTolerance;
        spec.allow_minus = off <= kHalfFracTolerance;
    }
    return spec;
}

Graph construct_mean(const ErParams& params) {
    MeanSetSpec spec = mean_set_spec(params);
    DegreeSequence d(params.n, spec.m);
    switch (spec.case_tag) {
        case MeanCase::EvenRegular:
            break;
        case MeanCase::OddAdjusted:
            // Exceptional vertex pinned at index n; frac = 1/2 picks m+1.
            d[params.n - 1] = spec.allow_plus ? spec.m + 1 : spec.m - 1;
            break;
        case MeanCase::IntegerNP:
            if ((static_cast<std::int64_t>(params.n) * spec.m) % 2 != 0) d[params.n - 1] = spec.m - 1;
            break;
    }
    return realize(d);
}

bool is_frechet_mean(const Graph& g, const ErParams& params) {
    validate(params);
    if (g.vertex_count() != params.n)
        throw Error("DimensionMismatch", "graph order does not match params.n");
    MeanSetSpec spec = mean_set_spec(params);
    const DegreeSequence& d = g.degrees();
    switch (spec.case_tag) {
        case MeanCase::IntegerNP:
            // The degree sum of a concrete graph is even automatically.
            for (int x : d)
                if (x != spec.m && x != spec.m - 1) return false;
            return true;
        case MeanCase::EvenRegular:
            for (int x : d)
                if (x != spec.m) return false;
            return true;
        case MeanCase::OddAdjusted: {
            int exceptional = 0;
            bool ok = true;
            for (int x : d) {
                if (x == spec.m) continue;
                ++exceptional;
                bool fits = (spec.allow_plus && x == spec.m + 1) ||
                            (spec.allow_minus && x == spec.m - 1);
                ok = ok && fits;
            }
            return ok && exceptional == 1;
        }
    }
    return false;
}

double frechet_value_closed(const Graph& g, const ErParams& params) {
    validate(params);
    if (g.vertex_count() != params.n)
        throw Error("DimensionMismatch", "graph order does not match params.n");
    const double n = params.n;
    const double p = params.p;
    const double np = n * p;
    double value = 2.0 * n * (n - 1.0) * p + n * (n - 1.0) * (n - 2.0) * p * p;
    for (int i = 1; i <= params.n; ++i) {
        double di = g.degree(i);
        value += di * di - (2.0 * np - 1.0) * di;
    }
    return value;
}

McEstimate frechet_value_mc(const Graph& g, const ErParams& params,
                            std::int64_t replicas, std::uint64_t seed) {
    validate(params);
    if (replicas < 2) throw Error("InvalidParams", "replicas must be at least 2");
    if (g.vertex_count() != params.n)
        throw Error("DimensionMismatch", "graph order does not match params.n");

    std::unique_ptr<AdjacencyBits> adj;
    if (g.edge_count() > 0) adj = std::make_unique<AdjacencyBits>(g);
    const std::int64_t deg_sq = degree_square_sum(g.degrees());
    std::vector<double> vals(static_cast<std::size_t>(replicas));
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (std::int64_t k = 0; k < replicas; ++k) {
        std::int64_t d2 = sample_fn_squared(params, replica_seed(seed, static_cast<std::uint64_t>(k)),
                                            g.degrees(), g.edge_count(), deg_sq, adj.get());
        vals[static_cast<std::size_t>(k)] = static_cast<double>(d2);
    }
    SampleMoments m = sample_moments(vals);
    return {m.mean, std::sqrt(m.variance / static_cast<double>(replicas))};
}

} // namespace graphmean
