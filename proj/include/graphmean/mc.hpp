#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "graphmean/er_model.hpp"

namespace graphmean {

// Distributional tests the harness can run against replicated F_n^2 draws.
//   MomentsCheck    empirical mean/variance vs the closed forms
//   PoissonLimit    chi-square of F_n^2/4 counts vs Poisson(lambda/2)
//   NormalLimit     KS of (F_n^2 - E)/sqrt(Var) vs N(0,1)
//   SqrtNormalLimit KS of the F_n - sqrt(E[F_n^2]) law of the matching regime
//   LLNCheck        fraction of replicas with F_n = 0
//   RatioCheck      mean of F_n/sqrt(n^2 p(1-p)) vs sqrt(a)
enum class TestKind { MomentsCheck, PoissonLimit, NormalLimit, SqrtNormalLimit, LLNCheck, RatioCheck };

std::string test_name(TestKind t);
TestKind test_from_name(const std::string& name); // throws InvalidFlag

struct SimConfig {
    ErParams params;
    std::int64_t replicas;
    std::uint64_t seed;
    TestKind test;
    double lambda = 0.0; // PoissonLimit reference; 0 means use n^2 p(1-p)
};

// KS verdicts use the 1% asymptotic critical value 1.63/sqrt(R).
constexpr double kKsCriticalScale = 1.63;
constexpr double kChiSquareLevel = 0.01;
constexpr double kOtherBinMassLimit = 0.01;
constexpr double kLlnZeroFraction = 0.98;
constexpr double kRatioTolDense = 0.02;
constexpr double kRatioTolSparse = 0.05;
constexpr double kSqrtLawVarianceRelTol = 0.10;

// Everything a test run produces. Centering and scaling always come from the
// closed forms, never from empirical moments. Fields a test does not define
// are NaN.
struct SimResult {
    std::vector<double> samples;      // F_n^2 per replica
    std::vector<double> standardized; // per-test transform of each sample
    double emp_mean = 0.0;
    double emp_var = 0.0;
    double closed_mean = 0.0;
    double closed_var = 0.0;
    double test_stat = 0.0;
    double p_value = 0.0;
    bool pass = false;
    // diagnostics
    double ks_critical = 0.0;
    double other_bin_mass = 0.0;
    double frac_zero = 0.0;
    double ratio_mean = 0.0;
    double ratio_target = 0.0;
    double var_rel_dev = 0.0;
    double mean_z_score = 0.0;
    double var_z_score = 0.0;
};

// Draws `replicas` independent G(n,p) samples (replica k seeded with
// replica_seed(seed, k)), measures F_n^2 against the canonical mean graph,
// and evaluates the configured test. Reductions run in fixed order, so the
// result is bitwise identical for any thread count.
SimResult run(const SimConfig& config);

// Mean of F_n / sqrt(n^2 p (1-p)) over replicas (RatioCheck's statistic).
double ratio_check(const SimConfig& config);

} // namespace graphmean
