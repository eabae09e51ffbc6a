#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "graphmean/er_model.hpp"

namespace graphmean {

// Closed-form first and second moments of F_n^2 = d_F^2(G(n,p), R) against
// an m-regular reference R, together with the intermediate moments of
// (U_n, W_n). Valid for any m-regular R; the derivation only uses that every
// row of R's adjacency matrix sums to m.
struct MomentReport {
    double mean_fn2;
    double var_fn2;
    double e_un;
    double e_wn;
    double var_un;
    double var_wn;
    double cov_unwn;
};

// Engine form, for a reference of regularity degree m.
MomentReport moments_for_regular_mean(const ErParams& params, int m);

// The standing-assumption form: requires np non-integer and n*floor(np)
// even, i.e. the setting in which every floor(np)-regular graph is a Frechet
// mean. Throws UnsupportedCase otherwise.
MomentReport moments(const ErParams& params);

// Mean-graph-free second moments used by the Stein diagnostics.
double var_en(const ErParams& params);       // C(n,2) p(1-p)
double var_wn(const ErParams& params);       // 2n(n-1)(n-2) p^2 (1-p) [1+(4n-9)p]
double cov_wn_en(const ErParams& params);    // 2n(n-1)(n-2) p^2 (1-p)

// The constant a with E[F_n^2] ~ a n^2 p(1-p): 2 when np(1-p) -> 0,
// 2 + ((c - floor c)^2 + floor c)/c when np(1-p) -> c > 0, 3 when it
// diverges (pass +infinity).
double a_constant(double np1p_limit);

enum class RegimeTag { Vanishing, PoissonWindow, VerySparse, Sparse, Dense };

std::string regime_name(RegimeTag tag);

// Limit-law descriptor for a sparsity schedule p(n). Fields that a regime
// does not define are NaN.
struct Regime {
    RegimeTag tag;
    double limit_param;   // lambda (PoissonWindow) or c (Sparse)
    double a;             // the constant a, when defined
    double fn2_variance;  // limiting variance of (F_n^2 - E)/fn2_scaling
    std::string fn2_scaling;
    double fn_variance;   // limiting variance of (F_n - sqrt(E))/fn_scaling
    std::string fn_scaling;
    std::string limit_law;
    std::vector<double> probe_np1p;
    std::vector<double> probe_n2p1p;
};

// Classifies by evaluating n p(1-p) and n^2 p(1-p) along increasing probe
// sizes: monotone growth past kTrendUpper reads as divergence, decay below
// kTrendLower as a zero limit, relative spread within kTrendStable as a
// finite limit. Throws Ambiguous when no pattern fits.
constexpr double kTrendUpper = 10.0;
constexpr double kTrendLower = 0.1;
constexpr double kTrendStable = 0.05;

template <class Schedule>
Regime classify_regime(Schedule&& p_of_n, const std::vector<std::int64_t>& probes);

namespace detail {
Regime classify_regime_impl(const std::vector<double>& u, const std::vector<double>& v);
}

template <class Schedule>
Regime classify_regime(Schedule&& p_of_n, const std::vector<std::int64_t>& probes) {
    std::vector<double> u, v;
    u.reserve(probes.size());
    v.reserve(probes.size());
    for (std::int64_t n : probes) {
        double p = p_of_n(n);
        double q = static_cast<double>(n) * p * (1.0 - p);
        u.push_back(q);
        v.push_back(static_cast<double>(n) * q);
    }
    return detail::classify_regime_impl(u, v);
}

// Asymptotic equivalent of Var(F_n^2) in the applicable regime. For Sparse
// with integer c the ratio Var/n has two distinct subsequential limits
// (2c(4+c) and 2c(16+c)), so no single number is returned: IntegerC.
double asymptotic_variance(const ErParams& params, RegimeTag regime);

// Law of 2 sqrt(K), K ~ Poisson(lambda/2): the distributional limit of F_n
// when n^2 p(1-p) -> lambda.
struct PoissonSqrtLaw {
    double lambda;

    double pmf(int k) const;            // P(K = k)
    double support_value(int k) const;  // 2 sqrt(k)
    double cdf(double x) const;         // P(2 sqrt(K) <= x)
};

PoissonSqrtLaw poisson_limit_params(double lambda);

} // namespace graphmean
