#pragma once

#include <cstdint>
#include <string>

#include "graphmean/er_model.hpp"
#include "graphmean/graph.hpp"

namespace graphmean {

// The three shapes the Frechet mean set can take:
//   IntegerNP:   np integer; degrees may mix m-1 and m (even sum).
//   EvenRegular: np non-integer, n*floor(np) even; every degree is m.
//   OddAdjusted: np non-integer, n*floor(np) odd; all degrees m except one
//                vertex at m+1 (frac > 1/2), m-1 (frac < 1/2), or either
//                (frac exactly 1/2).
enum class MeanCase { IntegerNP, EvenRegular, OddAdjusted };

// {np} counts as exactly 1/2 within this distance. The Frechet values of the
// two exceptional-degree options differ by 4|{np} - 1/2|, so this matches a
// 1e-9 tie on f-values.
constexpr double kHalfFracTolerance = 2.5e-10;

struct MeanSetSpec {
    MeanCase case_tag;
    int m;             // floor(np) (equals np itself in the IntegerNP case)
    double frac_np;    // fractional part {np}; 0 in the IntegerNP case
    bool allow_plus;   // OddAdjusted: exceptional degree m+1 admissible
    bool allow_minus;  // OddAdjusted: exceptional degree m-1 admissible

    std::string case_name() const;
    std::string admissible_description() const;
};

MeanSetSpec mean_set_spec(const ErParams& params);

// One canonical member of the mean set, fixed deterministically:
//   EvenRegular -> realize(all m)
//   OddAdjusted -> exceptional vertex at index n (m+1 when frac >= 1/2,
//                  m-1 when frac < 1/2), then realize
//   IntegerNP   -> all m when n*m is even, otherwise vertex n at m-1
Graph construct_mean(const ErParams& params);

// Membership in the full mean set (degree test of the applicable case).
bool is_frechet_mean(const Graph& g, const ErParams& params);

// Closed form of the expected squared distance to G(n,p):
//   f(g) = 2n(n-1)p + n(n-1)(n-2)p^2 + sum_i [D_i^2 - (2np-1) D_i]
double frechet_value_closed(const Graph& g, const ErParams& params);

struct McEstimate {
    double estimate;
    double std_error;
};

// Monte Carlo estimate of the same expectation from `replicas` independent
// samples. Replica k uses replica_seed(seed, k); the reduction order is
// fixed, so the result does not depend on the thread count.
McEstimate frechet_value_mc(const Graph& g, const ErParams& params,
                            std::int64_t replicas, std::uint64_t seed);

} // namespace graphmean
