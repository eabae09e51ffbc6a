#include "graphmean/moments.hpp"

#include <cmath>
#include <limits>

#include "graphmean/error.hpp"
#include "graphmean/stats.hpp"

namespace graphmean {

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
}

MomentReport moments_for_regular_mean(const ErParams& params, int m) {
    validate(params);
    const double n = params.n;
    const double p = params.p;
    const double q = 1.0 - p;
    const double np = n * p;
    const double md = m;

    MomentReport r{};
    r.e_un = (md * n - n + 1.0) * np;
    r.e_wn = n * (n - 1.0) * (n - 2.0) * p * p;
    r.var_un = 2.0 * np * q * (n * (md - 1.0) * (md - 1.0) + md * md + md - 1.0);
    r.var_wn = 2.0 * n * (n - 1.0) * (n - 2.0) * p * p * q * (1.0 + (4.0 * n - 9.0) * p);
    r.cov_unwn = 4.0 * n * (n - 2.0) * p * p * q * (md * n - n + 1.0);
    r.mean_fn2 = (np - md) * (np - md - 1.0) * n + (3.0 * n - 2.0) * np * q;
    double s = np - md + 1.0 - 3.0 * p;
    double t = 2.0 * np - 2.0 * md - 1.0;
    r.var_fn2 = 2.0 * np * q * (4.0 * s * s * n + (n * n + n + 18.0) * p * q + t * t - 5.0);
    return r;
}

MomentReport moments(const ErParams& params) {
    validate(params);
    if (np_is_integer(params))
        throw Error("UnsupportedCase", "moments requires np to be non-integer");
    int m = floor_np(params);
    if ((static_cast<std::int64_t>(params.n) * m) % 2 != 0)
        throw Error("UnsupportedCase", "moments requires n*floor(np) to be even");
    return moments_for_regular_mean(params, m);
}

double var_en(const ErParams& params) {
    const double n = params.n;
    return 0.5 * n * (n - 1.0) * params.p * (1.0 - params.p);
}

double var_wn(const ErParams& params) {
    const double n = params.n;
    const double p = params.p;
    return 2.0 * n * (n - 1.0) * (n - 2.0) * p * p * (1.0 - p) * (1.0 + (4.0 * n - 9.0) * p);
}

double cov_wn_en(const ErParams& params) {
    const double n = params.n;
    const double p = params.p;
    return 2.0 * n * (n - 1.0) * (n - 2.0) * p * p * (1.0 - p);
}

double a_constant(double np1p_limit) {
    if (np1p_limit < 0.0 || std::isnan(np1p_limit))
        throw Error("InvalidParams", "limit of np(1-p) must be 0, positive, or +infinity");
    if (np1p_limit == 0.0) return 2.0;
    if (std::isinf(np1p_limit)) return 3.0;
    double c = np1p_limit;
    double fc = std::floor(c);
    double frac = c - fc;
    return 2.0 + (frac * frac + fc) / c;
}

std::string regime_name(RegimeTag tag) {
    switch (tag) {
        case RegimeTag::Vanishing: return "Vanishing";
        case RegimeTag::PoissonWindow: return "PoissonWindow";
        case RegimeTag::VerySparse: return "VerySparse";
        case RegimeTag::Sparse: return "Sparse";
        case RegimeTag::Dense: return "Dense";
    }
    return "?";
}

namespace {

bool strictly_increasing(const std::vector<double>& v) {
    for (std::size_t i = 1; i < v.size(); ++i)
        if (!(v[i] > v[i - 1])) return false;
    return true;
}

bool strictly_decreasing(const std::vector<double>& v) {
    for (std::size_t i = 1; i < v.size(); ++i)
        if (!(v[i] < v[i - 1])) return false;
    return true;
}

bool stabilized(const std::vector<double>& v) {
    double last = v.back();
    if (last <= 0.0) return false;
    for (double x : v)
        if (std::abs(x / last - 1.0) > kTrendStable) return false;
    return true;
}

bool is_integer_c(double c) {
    return std::abs(c - std::round(c)) < 1e-9;
}

} // namespace

namespace detail {

Regime classify_regime_impl(const std::vector<double>& u, const std::vector<double>& v) {
    if (u.size() < 3) throw Error("InvalidParams", "need at least 3 probe sizes");
    Regime r{};
    r.limit_param = kNaN;
    r.a = kNaN;
    r.fn2_variance = kNaN;
    r.fn_variance = kNaN;
    r.probe_np1p = u;
    r.probe_n2p1p = v;

    if (strictly_decreasing(v) && v.back() < kTrendLower) {
        r.tag = RegimeTag::Vanishing;
        r.limit_law = "n^2 p(1-p) -> 0: F_n -> 0 in probability";
        return r;
    }
    if (stabilized(v)) {
        r.tag = RegimeTag::PoissonWindow;
        r.limit_param = v.back();
        r.limit_law = "n^2 p(1-p) -> lambda: F_n -> 2 sqrt(Poi(lambda/2)) in distribution";
        return r;
    }
    if (strictly_increasing(v) && v.back() > kTrendUpper) {
        if (strictly_decreasing(u) && u.back() < kTrendLower) {
            r.tag = RegimeTag::VerySparse;
            r.a = 2.0;
            r.fn2_variance = 8.0;
            r.fn2_scaling = "sqrt(n^2 p(1-p))";
            r.fn_variance = 1.0;
            r.fn_scaling = "1";
            r.limit_law =
                "np(1-p) -> 0, n^2 p(1-p) -> inf: (F_n^2 - E[F_n^2])/sqrt(n^2 p(1-p)) -> N(0,8); "
                "F_n - sqrt(E[F_n^2]) -> N(0,1)";
            return r;
        }
        if (stabilized(u)) {
            r.tag = RegimeTag::Sparse;
            double c = u.back();
            r.limit_param = c;
            r.a = a_constant(c);
            if (!is_integer_c(c)) {
                double fc = std::floor(c);
                double b = 4.0 * (c - fc + 1.0) * (c - fc + 1.0) + c;
                r.fn2_variance = 2.0 * c * b;
                r.fn2_scaling = "sqrt(n)";
                r.fn_variance = c * b / (2.0 * ((c - fc) * (c - fc) + fc + 2.0 * c));
                r.fn_scaling = "1";
                r.limit_law =
                    "np(1-p) -> c: (F_n^2 - E[F_n^2])/sqrt(n) -> N(0, 2c[4(c-floor(c)+1)^2+c]); "
                    "F_n - sqrt(E[F_n^2]) -> N(0, c[4(c-floor(c)+1)^2+c] / "
                    "(2[(c-floor(c))^2+floor(c)+2c]))";
            } else {
                r.limit_law =
                    "np(1-p) -> integer c: Var(F_n^2)/n has no unique limit; normalization "
                    "depends on how np approaches c";
            }
            return r;
        }
        if (strictly_increasing(u) && u.back() > kTrendUpper) {
            r.tag = RegimeTag::Dense;
            r.a = 3.0;
            r.fn2_variance = 2.0;
            r.fn2_scaling = "sqrt(n^3 p^2 (1-p)^2)";
            r.fn_variance = 1.0 / 6.0;
            r.fn_scaling = "sqrt(n p(1-p))";
            r.limit_law =
                "np(1-p) -> inf: (F_n^2 - E[F_n^2])/sqrt(n^3 p^2 (1-p)^2) -> N(0,2); "
                "(F_n - sqrt(E[F_n^2]))/sqrt(n p(1-p)) -> N(0,1/6)";
            return r;
        }
    }
    throw Error("Ambiguous", "probe values show no stable trend; widen the probe range");
}

} // namespace detail

double asymptotic_variance(const ErParams& params, RegimeTag regime) {
    validate(params);
    const double n = params.n;
    const double p = params.p;
    const double q = 1.0 - p;
    switch (regime) {
        case RegimeTag::VerySparse:
            return 8.0 * n * n * p * q;
        case RegimeTag::Sparse: {
            double c = n * p * q;
            if (is_integer_c(c))
                throw Error("IntegerC",
                            "Var(F_n^2)/n has no unique limit when np(1-p) -> integer c");
            double fc = std::floor(c);
            return 2.0 * c * (4.0 * (c - fc + 1.0) * (c - fc + 1.0) + c) * n;
        }
        case RegimeTag::Dense:
            return 2.0 * n * n * n * p * p * q * q;
        default:
            throw Error("UnsupportedCase",
                        "asymptotic variance is defined for VerySparse, Sparse and Dense");
    }
}

double PoissonSqrtLaw::pmf(int k) const { return poisson_pmf(k, 0.5 * lambda); }

double PoissonSqrtLaw::support_value(int k) const { return 2.0 * std::sqrt(static_cast<double>(k)); }

double PoissonSqrtLaw::cdf(double x) const {
    if (x < 0.0) return 0.0;
    double half = x / 2.0;
    int k = static_cast<int>(std::floor(half * half + 1e-12));
    return poisson_cdf(k, 0.5 * lambda);
}

PoissonSqrtLaw poisson_limit_params(double lambda) {
    if (!(lambda > 0.0)) throw Error("InvalidParams", "lambda must be positive");
    return PoissonSqrtLaw{lambda};
}

} // namespace graphmean
