#include "graphmean/mc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>

#include "graphmean/error.hpp"
#include "graphmean/frechet.hpp"
#include "graphmean/moments.hpp"
#include "graphmean/rng.hpp"
#include "graphmean/stats.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace graphmean {

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
}

std::string test_name(TestKind t) {
    switch (t) {
        case TestKind::MomentsCheck: return "moments";
        case TestKind::PoissonLimit: return "poisson";
        case TestKind::NormalLimit: return "normal";
        case TestKind::SqrtNormalLimit: return "sqrt-normal";
        case TestKind::LLNCheck: return "lln";
        case TestKind::RatioCheck: return "ratio";
    }
    return "?";
}

TestKind test_from_name(const std::string& name) {
    if (name == "moments") return TestKind::MomentsCheck;
    if (name == "poisson") return TestKind::PoissonLimit;
    if (name == "normal") return TestKind::NormalLimit;
    if (name == "sqrt-normal") return TestKind::SqrtNormalLimit;
    if (name == "lln") return TestKind::LLNCheck;
    if (name == "ratio") return TestKind::RatioCheck;
    throw Error("InvalidFlag", "unknown test: " + name);
}

namespace {

// Closed-form moments against the canonical mean; requires it to be regular.
MomentReport closed_moments(const ErParams& params, const Graph& mean_graph) {
    int m = mean_graph.degree(1);
    for (int i = 2; i <= params.n; ++i)
        if (mean_graph.degree(i) != m)
            throw Error("UnsupportedCase",
                        "the canonical mean graph is not regular for these parameters; "
                        "closed-form moments are unavailable");
    return moments_for_regular_mean(params, m);
}

// Square-root-law shape for one (n,p): which centering/scaling applies, picked by
// the magnitude of np(1-p).
struct SqrtLawShape {
    double scale;     // divide F_n - sqrt(E) by this
    double var_ref;   // variance of the limiting normal
};

SqrtLawShape sqrt_law_shape(const ErParams& params) {
    double u = static_cast<double>(params.n) * params.p * (1.0 - params.p);
    if (u > kTrendUpper) return {std::sqrt(u), 1.0 / 6.0};
    if (u < kTrendLower) return {1.0, 1.0};
    double c = u;
    if (std::abs(c - std::round(c)) < 1e-9)
        throw Error("UnsupportedCase",
                    "np(1-p) sits at an integer c; the sqrt-normal limit is not unique there");
    double fc = std::floor(c);
    double b = 4.0 * (c - fc + 1.0) * (c - fc + 1.0) + c;
    return {1.0, c * b / (2.0 * ((c - fc) * (c - fc) + fc + 2.0 * c))};
}

double infer_a(const ErParams& params) {
    double u = static_cast<double>(params.n) * params.p * (1.0 - params.p);
    if (u > kTrendUpper) return 3.0;
    if (u < kTrendLower) return 2.0;
    return a_constant(u);
}

} // namespace

SimResult run(const SimConfig& config) {
    validate(config.params);
    if (config.replicas < 2) throw Error("InvalidParams", "replicas must be at least 2");
    const ErParams& params = config.params;
    const std::int64_t r = config.replicas;
    const double rd = static_cast<double>(r);

    const Graph mean_graph = construct_mean(params);
    std::unique_ptr<AdjacencyBits> mean_adj;
    if (mean_graph.edge_count() > 0) mean_adj = std::make_unique<AdjacencyBits>(mean_graph);
    const std::int64_t mean_deg_sq = degree_square_sum(mean_graph.degrees());

    SimResult res;
    res.closed_mean = res.closed_var = res.p_value = kNaN;
    res.ks_critical = res.other_bin_mass = res.frac_zero = kNaN;
    res.ratio_mean = res.ratio_target = res.var_rel_dev = kNaN;
    res.mean_z_score = res.var_z_score = kNaN;

    res.samples.resize(static_cast<std::size_t>(r));
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (std::int64_t k = 0; k < r; ++k) {
        std::int64_t fn2 =
            sample_fn_squared(params, replica_seed(config.seed, static_cast<std::uint64_t>(k)),
                              mean_graph.degrees(), mean_graph.edge_count(), mean_deg_sq,
                              mean_adj.get());
        res.samples[static_cast<std::size_t>(k)] = static_cast<double>(fn2);
    }

    SampleMoments emp = sample_moments(res.samples);
    res.emp_mean = emp.mean;
    res.emp_var = emp.variance;
    res.standardized.resize(res.samples.size());

    switch (config.test) {
        case TestKind::MomentsCheck: {
            MomentReport closed = closed_moments(params, mean_graph);
            res.closed_mean = closed.mean_fn2;
            res.closed_var = closed.var_fn2;
            double sd = std::sqrt(closed.var_fn2);
            for (std::size_t i = 0; i < res.samples.size(); ++i)
                res.standardized[i] = (res.samples[i] - closed.mean_fn2) / sd;
            double se_mean = std::sqrt(closed.var_fn2 / rd);
            double se_var = std::sqrt(std::max(0.0, emp.fourth_central -
                                                        emp.variance * emp.variance) /
                                      rd);
            res.mean_z_score = (res.emp_mean - closed.mean_fn2) / se_mean;
            res.var_z_score = (res.emp_var - closed.var_fn2) / se_var;
            res.test_stat = std::max(std::abs(res.mean_z_score), std::abs(res.var_z_score));
            res.p_value = 2.0 * (1.0 - normal_cdf(res.test_stat));
            res.pass = std::abs(res.mean_z_score) < 3.0 && std::abs(res.var_z_score) < 3.0;
            break;
        }
        case TestKind::NormalLimit: {
            MomentReport closed = closed_moments(params, mean_graph);
            res.closed_mean = closed.mean_fn2;
            res.closed_var = closed.var_fn2;
            double sd = std::sqrt(closed.var_fn2);
            for (std::size_t i = 0; i < res.samples.size(); ++i)
                res.standardized[i] = (res.samples[i] - closed.mean_fn2) / sd;
            res.test_stat = ks_statistic(res.standardized, [](double x) { return normal_cdf(x); });
            res.ks_critical = kKsCriticalScale / std::sqrt(rd);
            res.p_value = ks_pvalue(res.test_stat, res.samples.size());
            res.pass = res.test_stat < res.ks_critical;
            break;
        }
        case TestKind::SqrtNormalLimit: {
            MomentReport closed = closed_moments(params, mean_graph);
            res.closed_mean = closed.mean_fn2;
            res.closed_var = closed.var_fn2;
            SqrtLawShape shape = sqrt_law_shape(params);
            double center = std::sqrt(closed.mean_fn2);
            for (std::size_t i = 0; i < res.samples.size(); ++i)
                res.standardized[i] = (std::sqrt(res.samples[i]) - center) / shape.scale;
            double sigma = std::sqrt(shape.var_ref);
            res.test_stat =
                ks_statistic(res.standardized, [sigma](double x) { return normal_cdf(x, sigma); });
            res.ks_critical = kKsCriticalScale / std::sqrt(rd);
            res.p_value = ks_pvalue(res.test_stat, res.samples.size());
            SampleMoments std_emp = sample_moments(res.standardized);
            res.var_rel_dev = std::abs(std_emp.variance / shape.var_ref - 1.0);
            res.pass = res.test_stat < res.ks_critical && res.var_rel_dev <= kSqrtLawVarianceRelTol;
            break;
        }
        case TestKind::PoissonLimit: {
            double lambda = config.lambda > 0.0
                                ? config.lambda
                                : static_cast<double>(params.n) * params.n * params.p *
                                      (1.0 - params.p);
            double mu = 0.5 * lambda;
            for (std::size_t i = 0; i < res.samples.size(); ++i)
                res.standardized[i] = res.samples[i] / 4.0;
            // Tail bin starts at the largest k whose upper tail still expects
            // at least 5 replicas.
            int tail_start = 1;
            for (int k = 1; k < 400; ++k) {
                if (rd * (1.0 - poisson_cdf(k - 1, mu)) >= 5.0)
                    tail_start = k;
                else
                    break;
            }
            std::vector<double> observed(static_cast<std::size_t>(tail_start) + 1, 0.0);
            std::int64_t other = 0;
            for (double x : res.samples) {
                std::int64_t xi = static_cast<std::int64_t>(x);
                if (xi % 4 != 0) {
                    ++other;
                    continue;
                }
                std::int64_t k = xi / 4;
                if (k >= tail_start)
                    observed.back() += 1.0;
                else
                    observed[static_cast<std::size_t>(k)] += 1.0;
            }
            double chi2 = 0.0;
            for (int k = 0; k <= tail_start; ++k) {
                double pk = k < tail_start ? poisson_pmf(k, mu)
                                           : 1.0 - poisson_cdf(tail_start - 1, mu);
                double expect = rd * pk;
                double diff = observed[static_cast<std::size_t>(k)] - expect;
                chi2 += diff * diff / expect;
            }
            res.test_stat = chi2;
            res.p_value = chi_square_pvalue(chi2, tail_start);
            res.other_bin_mass = static_cast<double>(other) / rd;
            res.pass = res.p_value > kChiSquareLevel && res.other_bin_mass < kOtherBinMassLimit;
            break;
        }
        case TestKind::LLNCheck: {
            std::int64_t zeros = 0;
            for (std::size_t i = 0; i < res.samples.size(); ++i) {
                res.standardized[i] = res.samples[i];
                if (res.samples[i] == 0.0) ++zeros;
            }
            res.frac_zero = static_cast<double>(zeros) / rd;
            res.test_stat = res.frac_zero;
            res.pass = res.frac_zero > kLlnZeroFraction;
            break;
        }
        case TestKind::RatioCheck: {
            double scale = std::sqrt(static_cast<double>(params.n) * params.n * params.p *
                                     (1.0 - params.p));
            for (std::size_t i = 0; i < res.samples.size(); ++i)
                res.standardized[i] = std::sqrt(res.samples[i]) / scale;
            res.ratio_mean = pairwise_sum(res.standardized) / rd;
            double a = infer_a(params);
            res.ratio_target = std::sqrt(a);
            double u = static_cast<double>(params.n) * params.p * (1.0 - params.p);
            double tol = u > kTrendUpper ? kRatioTolDense : kRatioTolSparse;
            res.test_stat = std::abs(res.ratio_mean / res.ratio_target - 1.0);
            res.pass = res.test_stat <= tol;
            break;
        }
    }
    return res;
}

double ratio_check(const SimConfig& config) {
    SimConfig c = config;
    c.test = TestKind::RatioCheck;
    return run(c).ratio_mean;
}

} // namespace graphmean
