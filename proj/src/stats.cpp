#include "graphmean/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "graphmean/error.hpp"

namespace graphmean {

namespace {

double pairwise_range(const double* v, std::size_t count) {
    if (count <= 8) {
        double s = 0.0;
        for (std::size_t i = 0; i < count; ++i) s += v[i];
        return s;
    }
    std::size_t half = count / 2;
    return pairwise_range(v, half) + pairwise_range(v + half, count - half);
}

} // namespace

double pairwise_sum(const std::vector<double>& v) {
    return v.empty() ? 0.0 : pairwise_range(v.data(), v.size());
}

SampleMoments sample_moments(const std::vector<double>& v) {
    SampleMoments m;
    if (v.empty()) return m;
    const std::size_t r = v.size();
    m.mean = pairwise_sum(v) / static_cast<double>(r);
    std::vector<double> d2(r), d4(r);
    for (std::size_t i = 0; i < r; ++i) {
        double d = v[i] - m.mean;
        d2[i] = d * d;
        d4[i] = d2[i] * d2[i];
    }
    double s2 = pairwise_sum(d2);
    m.variance = r > 1 ? s2 / static_cast<double>(r - 1) : 0.0;
    m.fourth_central = pairwise_sum(d4) / static_cast<double>(r);
    return m;
}

double normal_cdf(double x) {
    return 0.5 * std::erfc(-x / std::sqrt(2.0));
}

double normal_cdf(double x, double sigma) {
    return normal_cdf(x / sigma);
}

double ks_statistic(const std::vector<double>& sample,
                    const std::function<double(double)>& cdf) {
    if (sample.empty()) throw Error("EmptySample", "ks_statistic requires a non-empty sample");
    std::vector<double> s(sample);
    std::sort(s.begin(), s.end());
    const double r = static_cast<double>(s.size());
    double d = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        double f = cdf(s[i]);
        double lo = f - static_cast<double>(i) / r;
        double hi = static_cast<double>(i + 1) / r - f;
        d = std::max(d, std::max(lo, hi));
    }
    return d;
}

double ks_pvalue(double d, std::size_t r) {
    double sr = std::sqrt(static_cast<double>(r));
    double lambda = (sr + 0.12 + 0.11 / sr) * d;
    double sum = 0.0;
    double sign = 1.0;
    for (int k = 1; k <= 100; ++k) {
        double term = std::exp(-2.0 * k * k * lambda * lambda);
        sum += sign * term;
        sign = -sign;
        if (term < 1e-16) break;
    }
    double p = 2.0 * sum;
    return std::min(1.0, std::max(0.0, p));
}

double poisson_pmf(int k, double mu) {
    if (k < 0) return 0.0;
    return std::exp(-mu + k * std::log(mu) - std::lgamma(k + 1.0));
}

double poisson_cdf(int k, double mu) {
    if (k < 0) return 0.0;
    double sum = 0.0;
    for (int j = 0; j <= k; ++j) sum += poisson_pmf(j, mu);
    return std::min(1.0, sum);
}

namespace {

// Series expansion of P(a,x), valid for x < a+1.
double gamma_p_series(double a, double x) {
    double ap = a;
    double sum = 1.0 / a;
    double del = sum;
    for (int i = 0; i < 500; ++i) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::abs(del) < std::abs(sum) * 1e-15) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Continued fraction for Q(a,x), valid for x >= a+1 (modified Lentz).
double gamma_q_cf(double a, double x) {
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 500; ++i) {
        double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 1e-15) break;
    }
    return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

} // namespace

double gamma_q(double a, double x) {
    if (x < 0.0 || a <= 0.0) throw Error("InvalidParams", "gamma_q requires x >= 0, a > 0");
    if (x == 0.0) return 1.0;
    if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
    return gamma_q_cf(a, x);
}

double chi_square_pvalue(double stat, int dof) {
    return gamma_q(0.5 * dof, 0.5 * stat);
}

} // namespace graphmean
