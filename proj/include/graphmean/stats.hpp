#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

namespace graphmean {

// Kahan-Babuska compensated accumulator.
class KahanSum {
public:
    void add(double x) {
        double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

// Sum in a fixed pairwise tree over the index order of v. Used wherever a
// reduction must not depend on thread count or scheduling.
double pairwise_sum(const std::vector<double>& v);

struct SampleMoments {
    double mean = 0.0;
    double variance = 0.0;   // unbiased (n-1 denominator)
    double fourth_central = 0.0;
};

SampleMoments sample_moments(const std::vector<double>& v);

double normal_cdf(double x);                    // N(0,1)
double normal_cdf(double x, double sigma);      // N(0,sigma^2)

// One-sample Kolmogorov-Smirnov statistic against a reference CDF.
// Sorts a copy of the sample internally.
double ks_statistic(const std::vector<double>& sample,
                    const std::function<double(double)>& cdf);

// Asymptotic p-value for the one-sample KS statistic d with sample size r,
// via the Kolmogorov series 2*sum (-1)^(k-1) exp(-2 k^2 lambda^2).
double ks_pvalue(double d, std::size_t r);

double poisson_pmf(int k, double mu);
double poisson_cdf(int k, double mu);

// Regularized upper incomplete gamma Q(a,x); chi-square tail probability is
// Q(df/2, x/2).
double gamma_q(double a, double x);
double chi_square_pvalue(double stat, int dof);

} // namespace graphmean
