#include "graphmean/stein.hpp"

#include <cmath>

#include "graphmean/error.hpp"
#include "graphmean/moments.hpp"
#include "graphmean/rng.hpp"
#include "graphmean/stats.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace graphmean {

EdgeOrder::EdgeOrder(int n) : n_(n) {
    if (n < 2) throw Error("InvalidParams", "edge order needs n >= 2");
    count_ = static_cast<std::int64_t>(n) * (n - 1) / 2;
}

std::pair<int, int> EdgeOrder::pair_of(std::int64_t s) const {
    if (s < 1 || s > count_) throw Error("OutOfRange", "edge index out of range");
    // i(s) = min{ t : s <= t(2n-t-1)/2 }, binary search over the monotone
    // row-boundary function.
    int lo = 1, hi = n_ - 1;
    while (lo < hi) {
        int mid = lo + (hi - lo) / 2;
        std::int64_t boundary = static_cast<std::int64_t>(mid) * (2 * n_ - mid - 1) / 2;
        if (s <= boundary)
            hi = mid;
        else
            lo = mid + 1;
    }
    int i = lo;
    std::int64_t j = s + i - static_cast<std::int64_t>(2 * n_ - i) * (i - 1) / 2;
    return {i, static_cast<int>(j)};
}

std::int64_t EdgeOrder::index_of(int i, int j) const {
    if (i < 1 || j <= i || j > n_) throw Error("OutOfRange", "not a vertex pair with i < j <= n");
    return static_cast<std::int64_t>(i - 1) * (2 * n_ - i) / 2 + (j - i);
}

PairedSample sample_paired(const ErParams& params, std::uint64_t seed) {
    validate(params);
    EdgeOrder order(params.n);
    const std::size_t total = static_cast<std::size_t>(order.count());
    PairedSample sample;
    sample.params = params;
    sample.z.resize(total);
    sample.z_prime.resize(total);
    SplitMix64 rng(seed);
    for (std::size_t s = 0; s < total; ++s) sample.z[s] = rng.next_unit() < params.p ? 1 : 0;
    for (std::size_t s = 0; s < total; ++s) sample.z_prime[s] = rng.next_unit() < params.p ? 1 : 0;
    return sample;
}

namespace {

// Degrees of the indicator vector, walking slots in row order.
std::vector<int> degrees_of(const std::vector<std::uint8_t>& z, int n) {
    std::vector<int> deg(n, 0);
    std::size_t s = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j, ++s)
            if (z[s]) {
                deg[i]++;
                deg[j]++;
            }
    return deg;
}

void check_sample(const PairedSample& sample) {
    std::size_t total =
        static_cast<std::size_t>(sample.params.n) * (sample.params.n - 1) / 2;
    if (sample.z.size() != total || sample.z_prime.size() != total)
        throw Error("LengthMismatch", "indicator vectors do not have length n(n-1)/2");
}

} // namespace

double h_value(const std::vector<std::uint8_t>& z, const ErParams& params) {
    validate(params);
    const int n = params.n;
    if (z.size() != static_cast<std::size_t>(n) * (n - 1) / 2)
        throw Error("LengthMismatch", "indicator vector does not have length n(n-1)/2");
    std::vector<int> deg = degrees_of(z, n);
    std::int64_t w = 0, e = 0;
    for (int d : deg) {
        w += static_cast<std::int64_t>(d) * (d - 1);
        e += d;
    }
    e /= 2;
    return 0.5 * static_cast<double>(w) -
           2.0 * (n - 2) * params.p * static_cast<double>(e);
}

double delta_h(const PairedSample& sample, std::int64_t s) {
    check_sample(sample);
    const int n = sample.params.n;
    const double p = sample.params.p;
    EdgeOrder order(n);
    auto [i, j] = order.pair_of(s);
    double diff = static_cast<double>(sample.z[s - 1]) - sample.z_prime[s - 1];
    if (diff == 0.0) return 0.0;
    double sum = 0.0;
    for (int k = 1; k <= n; ++k) {
        if (k == i || k == j) continue;
        int zik = sample.z[order.index_of(std::min(i, k), std::max(i, k)) - 1];
        int zjk = sample.z[order.index_of(std::min(j, k), std::max(j, k)) - 1];
        sum += zik + zjk - 2.0 * p;
    }
    return diff * sum;
}

double delta_h_prefix(const PairedSample& sample, std::int64_t s) {
    check_sample(sample);
    const int n = sample.params.n;
    const double p = sample.params.p;
    EdgeOrder order(n);
    auto [i, j] = order.pair_of(s);
    double diff = static_cast<double>(sample.z[s - 1]) - sample.z_prime[s - 1];
    if (diff == 0.0) return 0.0;
    double sum = 0.0;
    for (int l = 1; l <= n; ++l) {
        if (l == i || l == j) continue;
        // Slot (i,l) precedes (i,j) iff l < j; slot (j,l) precedes iff l < i.
        std::int64_t il = order.index_of(std::min(i, l), std::max(i, l)) - 1;
        std::int64_t jl = order.index_of(std::min(j, l), std::max(j, l)) - 1;
        int a = l < j ? sample.z_prime[il] : sample.z[il];
        int b = l < i ? sample.z_prime[jl] : sample.z[jl];
        sum += a + b - 2.0 * p;
    }
    return diff * sum;
}

double delta_h_direct(const PairedSample& sample, std::int64_t s) {
    check_sample(sample);
    std::vector<std::uint8_t> flipped(sample.z);
    flipped[s - 1] = sample.z_prime[s - 1];
    return h_value(sample.z, sample.params) - h_value(flipped, sample.params);
}

double delta_h_prefix_direct(const PairedSample& sample, std::int64_t s) {
    check_sample(sample);
    std::vector<std::uint8_t> base(sample.z);
    for (std::int64_t t = 0; t < s - 1; ++t) base[t] = sample.z_prime[t];
    std::vector<std::uint8_t> next(base);
    next[s - 1] = sample.z_prime[s - 1];
    return h_value(base, sample.params) - h_value(next, sample.params);
}

double h_variance_exact(const ErParams& params) {
    validate(params);
    const double n = params.n;
    const double p = params.p;
    // Var(h) = [Var(W) + 16(n-2)^2 p^2 Var(E) - 8(n-2) p Cov(W,E)] / 4.
    return (var_wn(params) + 16.0 * (n - 2.0) * (n - 2.0) * p * p * var_en(params) -
            8.0 * (n - 2.0) * p * cov_wn_en(params)) /
           4.0;
}

namespace {

// Row-prefix counts for one indicator vector: pref[v][t] = #{l <= t, l != v
// adjacent to v}, 1-based t, pref[v][0] = 0.
struct PrefixCounts {
    int n;
    std::vector<std::int32_t> data; // (n+1) entries per vertex row

    std::int32_t at(int v, int t) const {
        return data[static_cast<std::size_t>(v - 1) * (n + 1) + t];
    }
};

PrefixCounts build_prefix(const std::vector<std::uint8_t>& z, int n) {
    PrefixCounts pc{n, std::vector<std::int32_t>(static_cast<std::size_t>(n) * (n + 1), 0)};
    std::vector<std::uint8_t> adj(static_cast<std::size_t>(n) * n, 0);
    std::size_t s = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j, ++s)
            if (z[s]) {
                adj[static_cast<std::size_t>(i) * n + j] = 1;
                adj[static_cast<std::size_t>(j) * n + i] = 1;
            }
    for (int v = 0; v < n; ++v) {
        std::int32_t run = 0;
        std::size_t row = static_cast<std::size_t>(v) * n;
        std::size_t out = static_cast<std::size_t>(v) * (n + 1);
        for (int t = 1; t <= n; ++t) {
            run += adj[row + (t - 1)];
            pc.data[out + t] = run;
        }
    }
    return pc;
}

} // namespace

VStats v_statistics(const PairedSample& sample, double sigma_sq) {
    check_sample(sample);
    if (!(sigma_sq > 0.0)) throw Error("DegenerateVariance", "sigma^2 must be positive");
    const int n = sample.params.n;
    const double p = sample.params.p;
    const double shift = 2.0 * (n - 2) * p;
    EdgeOrder order(n);
    const std::int64_t total = order.count();

    PrefixCounts pref = build_prefix(sample.z, n);
    PrefixCounts pref_prime = build_prefix(sample.z_prime, n);

    constexpr std::int64_t kChunk = 8192;
    const std::int64_t chunks = (total + kChunk - 1) / kChunk;
    std::vector<double> part_v(static_cast<std::size_t>(chunks), 0.0);
    std::vector<double> part_vstar(static_cast<std::size_t>(chunks), 0.0);

#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (std::int64_t c = 0; c < chunks; ++c) {
        double acc_v = 0.0, acc_vstar = 0.0;
        std::int64_t lo = c * kChunk;
        std::int64_t hi = std::min(total, lo + kChunk);
        auto [i, j] = order.pair_of(lo + 1);
        for (std::int64_t s = lo; s < hi; ++s) {
            int zs = sample.z[s];
            int zps = sample.z_prime[s];
            if (zs != zps) {
                double diff = static_cast<double>(zs) - zps;
                std::int32_t xi = pref.at(i, n);
                std::int32_t xj = pref.at(j, n);
                double d1 = diff * (xi + xj - 2 * zs - shift);
                std::int32_t before =
                    pref_prime.at(i, i - 1) + pref_prime.at(j, i - 1) +
                    (pref_prime.at(i, j - 1) - pref_prime.at(i, i)) +
                    (pref.at(j, j - 1) - pref.at(j, i));
                std::int32_t after = (xi - pref.at(i, j)) + (xj - pref.at(j, j));
                double d2 = diff * (before + after - shift);
                acc_v += d1 * d2;
                acc_vstar += d1 * std::abs(d2);
            }
            if (++j > n) {
                ++i;
                j = i + 1;
            }
        }
        part_v[static_cast<std::size_t>(c)] = acc_v;
        part_vstar[static_cast<std::size_t>(c)] = acc_vstar;
    }

    double sum_v = pairwise_sum(part_v);
    double sum_vstar = pairwise_sum(part_vstar);
    return {sum_v / (2.0 * sigma_sq), sum_vstar / sigma_sq};
}

VStats v_statistics_reference(const PairedSample& sample, double sigma_sq) {
    check_sample(sample);
    if (!(sigma_sq > 0.0)) throw Error("DegenerateVariance", "sigma^2 must be positive");
    EdgeOrder order(sample.params.n);
    KahanSum sum_v, sum_vstar;
    for (std::int64_t s = 1; s <= order.count(); ++s) {
        double d1 = delta_h(sample, s);
        double d2 = delta_h_prefix(sample, s);
        sum_v.add(d1 * d2);
        sum_vstar.add(d1 * std::abs(d2));
    }
    return {sum_v.value() / (2.0 * sigma_sq), sum_vstar.value() / sigma_sq};
}

SteinReport stein_check(const ErParams& params, std::uint64_t seed,
                        std::int64_t replicas, std::int64_t diag_replicas) {
    validate(params);
    if (replicas < 2) throw Error("InvalidParams", "replicas must be at least 2");
    SteinReport report;
    report.sigma_sq = h_variance_exact(params);
    if (!(report.sigma_sq > 0.0))
        throw Error("DegenerateVariance", "Var(h) vanishes for n = 2");
    report.diag_replicas = std::min(replicas, diag_replicas);

    EdgeOrder order(params.n);
    std::vector<double> v_vals(static_cast<std::size_t>(replicas));
    std::vector<double> vstar_vals(static_cast<std::size_t>(replicas));
    double tele_max = 0.0, dev_max = 0.0, dev_prefix_max = 0.0;

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) \
    reduction(max : tele_max, dev_max, dev_prefix_max)
#endif
    for (std::int64_t r = 0; r < replicas; ++r) {
        PairedSample sample =
            sample_paired(params, replica_seed(seed, static_cast<std::uint64_t>(r)));
        VStats vs = v_statistics(sample, report.sigma_sq);
        v_vals[static_cast<std::size_t>(r)] = vs.v_n;
        vstar_vals[static_cast<std::size_t>(r)] = vs.v_n_star;
        if (r < report.diag_replicas) {
            KahanSum tele;
            for (std::int64_t s = 1; s <= order.count(); ++s) {
                tele.add(delta_h_prefix(sample, s));
                dev_max = std::max(dev_max, std::abs(delta_h(sample, s) - delta_h_direct(sample, s)));
                dev_prefix_max =
                    std::max(dev_prefix_max,
                             std::abs(delta_h_prefix(sample, s) - delta_h_prefix_direct(sample, s)));
            }
            double residual = tele.value() - (h_value(sample.z, params) -
                                              h_value(sample.z_prime, params));
            tele_max = std::max(tele_max, std::abs(residual));
        }
    }

    report.telescoping_residual_max = tele_max;
    report.delta_dev_max = dev_max;
    report.delta_prefix_dev_max = dev_prefix_max;
    SampleMoments mv = sample_moments(v_vals);
    SampleMoments ms = sample_moments(vstar_vals);
    report.v_n_mean = mv.mean;
    report.v_n_se = std::sqrt(mv.variance / static_cast<double>(replicas));
    report.v_n_star_mean = ms.mean;
    report.v_n_star_se = std::sqrt(ms.variance / static_cast<double>(replicas));
    return report;
}

} // namespace graphmean
