#include "graphmean/oracle.hpp"

#include <bit>
#include <cmath>
#include <limits>

#include "graphmean/error.hpp"
#include "graphmean/frechet.hpp"
#include "graphmean/metric.hpp"
#include "graphmean/moments.hpp"
#include "graphmean/stats.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace graphmean {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Per-mask degree table plus helpers shared by every p on the same n.
struct EnumTables {
    int n;
    int m_slots;
    std::int64_t count;
    std::vector<std::int8_t> degs; // count * n entries

    explicit EnumTables(int n_in) : n(n_in) {
        m_slots = n * (n - 1) / 2;
        count = std::int64_t{1} << m_slots;
        degs.assign(static_cast<std::size_t>(count) * n, 0);
        for (std::int64_t mask = 0; mask < count; ++mask) {
            std::int8_t* d = &degs[static_cast<std::size_t>(mask) * n];
            int bit = 0;
            for (int u = 0; u < n; ++u)
                for (int v = u + 1; v < n; ++v, ++bit)
                    if (mask & (std::int64_t{1} << bit)) {
                        d[u]++;
                        d[v]++;
                    }
        }
    }

    const std::int8_t* deg(std::int64_t mask) const {
        return &degs[static_cast<std::size_t>(mask) * n];
    }

    int dist_sq(std::int64_t a, std::int64_t b) const {
        const std::int8_t* da = deg(a);
        const std::int8_t* db = deg(b);
        int s = 0;
        for (int v = 0; v < n; ++v) {
            int d = da[v] - db[v];
            s += d * d;
        }
        return s + 2 * std::popcount(static_cast<std::uint64_t>(a ^ b));
    }
};

// p^k (1-p)^(M-k) for k = 0..M, by exponent counting.
std::vector<double> mask_weights(int m_slots, double p) {
    std::vector<double> w(static_cast<std::size_t>(m_slots) + 1);
    for (int k = 0; k <= m_slots; ++k)
        w[static_cast<std::size_t>(k)] = std::pow(p, k) * std::pow(1.0 - p, m_slots - k);
    return w;
}

// Direct-expectation Frechet value of every graph: f[g] = sum_h d^2(g,h) P(h).
std::vector<double> direct_frechet_values(const EnumTables& t, double p) {
    std::vector<double> w = mask_weights(t.m_slots, p);
    std::vector<double> f(static_cast<std::size_t>(t.count));
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (std::int64_t g = 0; g < t.count; ++g) {
        KahanSum acc;
        for (std::int64_t h = 0; h < t.count; ++h)
            acc.add(t.dist_sq(g, h) *
                    w[static_cast<std::size_t>(std::popcount(static_cast<std::uint64_t>(h)))]);
        f[static_cast<std::size_t>(g)] = acc.value();
    }
    return f;
}

std::vector<double> closed_frechet_values(const EnumTables& t, const ErParams& params) {
    const double n = t.n;
    const double p = params.p;
    const double np = n * p;
    const double c = 2.0 * n * (n - 1.0) * p + n * (n - 1.0) * (n - 2.0) * p * p;
    std::vector<double> f(static_cast<std::size_t>(t.count));
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (std::int64_t g = 0; g < t.count; ++g) {
        const std::int8_t* d = t.deg(g);
        double v = c;
        for (int i = 0; i < t.n; ++i)
            v += static_cast<double>(d[i]) * d[i] - (2.0 * np - 1.0) * d[i];
        f[static_cast<std::size_t>(g)] = v;
    }
    return f;
}

OracleReport minimizers_from_values(const ErParams& params, const std::vector<double>& f) {
    OracleReport report;
    report.n = params.n;
    report.p = params.p;
    double best = f[0];
    for (double x : f) best = std::min(best, x);
    report.min_value = best;
    for (std::int64_t g = 0; g < static_cast<std::int64_t>(f.size()); ++g)
        if (f[static_cast<std::size_t>(g)] <= best + kOracleTieTolerance)
            report.minimizer_masks.push_back(static_cast<std::uint64_t>(g));
    return report;
}

} // namespace

std::vector<Graph> OracleReport::minimizers() const {
    std::vector<Graph> out;
    out.reserve(minimizer_masks.size());
    for (std::uint64_t mask : minimizer_masks) out.push_back(graph_from_mask(n, mask));
    return out;
}

OracleReport exact_frechet_minimizers(const ErParams& params) {
    validate(params);
    if (params.n > kMaxMinimizerSearchN)
        throw Error("TooLarge", "minimizer search is capped at n = 6");
    EnumTables t(params.n);
    std::vector<double> f =
        params.n <= 5 ? direct_frechet_values(t, params.p) : closed_frechet_values(t, params);
    return minimizers_from_values(params, f);
}

std::pair<double, double> exact_fn2_moments(const ErParams& params, const Graph& mean_graph) {
    validate(params);
    if (params.n > kMaxEnumMomentsN)
        throw Error("TooLarge", "enumeration moments are capped at n = 6");
    if (mean_graph.vertex_count() != params.n)
        throw Error("DimensionMismatch", "mean graph order does not match params.n");
    EnumTables t(params.n);
    std::vector<double> w = mask_weights(t.m_slots, params.p);

    // Mean-graph mask in the same slot order.
    std::uint64_t mean_mask = 0;
    int bit = 0;
    for (int u = 1; u <= params.n; ++u)
        for (int v = u + 1; v <= params.n; ++v, ++bit)
            if (mean_graph.has_edge(u, v)) mean_mask |= std::uint64_t{1} << bit;

    KahanSum first, second, total_w;
    for (std::int64_t g = 0; g < t.count; ++g) {
        double weight =
            w[static_cast<std::size_t>(std::popcount(static_cast<std::uint64_t>(g)))];
        double d2 = t.dist_sq(g, static_cast<std::int64_t>(mean_mask));
        first.add(weight * d2);
        second.add(weight * d2 * d2);
        total_w.add(weight);
    }
    if (std::abs(total_w.value() - 1.0) > 1e-12)
        throw Error("InvalidParams", "enumeration probabilities do not sum to 1");
    double mean = first.value();
    return {mean, second.value() - mean * mean};
}

std::vector<OracleCell> oracle_grid(int max_n, const std::vector<double>& p_grid) {
    if (max_n < 2 || max_n > kMaxMinimizerSearchN)
        throw Error("TooLarge", "oracle sweep supports 2 <= max-n <= 6");
    std::vector<OracleCell> cells;
    for (int n = 2; n <= max_n; ++n) {
        EnumTables t(n);
        for (double p : p_grid) {
            ErParams params{n, p};
            OracleCell cell;
            cell.n = n;
            cell.p = p;
            cell.f_max_rel_dev = kNaN;
            cell.mean_rel_dev = kNaN;
            cell.var_rel_dev = kNaN;

            std::vector<double> closed = closed_frechet_values(t, params);
            std::vector<double> f;
            if (n <= 5) {
                f = direct_frechet_values(t, p);
                double worst = 0.0;
                for (std::int64_t g = 0; g < t.count; ++g) {
                    double a = f[static_cast<std::size_t>(g)];
                    double b = closed[static_cast<std::size_t>(g)];
                    worst = std::max(worst, std::abs(a - b) / std::max(1.0, std::abs(a)));
                }
                cell.f_max_rel_dev = worst;
            } else {
                f = closed;
            }

            OracleReport report = minimizers_from_values(params, f);
            cell.minimizer_count = static_cast<std::int64_t>(report.minimizer_masks.size());
            cell.min_value = report.min_value;

            // The mean-set membership test must coincide with the argmin set.
            bool match = true;
            std::size_t idx = 0;
            MeanSetSpec spec = mean_set_spec(params);
            for (std::int64_t g = 0; g < t.count && match; ++g) {
                const std::int8_t* d = t.deg(g);
                bool member = false;
                switch (spec.case_tag) {
                    case MeanCase::IntegerNP: {
                        member = true;
                        for (int i = 0; i < n; ++i)
                            member = member && (d[i] == spec.m || d[i] == spec.m - 1);
                        break;
                    }
                    case MeanCase::EvenRegular: {
                        member = true;
                        for (int i = 0; i < n; ++i) member = member && d[i] == spec.m;
                        break;
                    }
                    case MeanCase::OddAdjusted: {
                        int exceptional = 0;
                        bool fits = true;
                        for (int i = 0; i < n; ++i) {
                            if (d[i] == spec.m) continue;
                            ++exceptional;
                            fits = fits && ((spec.allow_plus && d[i] == spec.m + 1) ||
                                            (spec.allow_minus && d[i] == spec.m - 1));
                        }
                        member = fits && exceptional == 1;
                        break;
                    }
                }
                bool is_min = idx < report.minimizer_masks.size() &&
                              report.minimizer_masks[idx] == static_cast<std::uint64_t>(g);
                if (is_min) ++idx;
                if (member != is_min) match = false;
            }
            cell.membership_ok = match && idx == report.minimizer_masks.size();

            // Closed moments vs enumeration moments, where the closed form
            // applies (np non-integer, n floor(np) even).
            bool moments_ok = true;
            if (!np_is_integer(params) &&
                (static_cast<std::int64_t>(n) * floor_np(params)) % 2 == 0) {
                MomentReport closed_m = moments(params);
                auto [em, ev] = exact_fn2_moments(params, construct_mean(params));
                cell.mean_rel_dev = std::abs(closed_m.mean_fn2 - em) / std::max(1.0, std::abs(em));
                cell.var_rel_dev = std::abs(closed_m.var_fn2 - ev) / std::max(1.0, std::abs(ev));
                moments_ok = cell.mean_rel_dev <= 1e-9 && cell.var_rel_dev <= 1e-9;
            }

            bool f_ok = n > 5 || cell.f_max_rel_dev <= 1e-9;
            cell.ok = cell.membership_ok && f_ok && moments_ok;
            cells.push_back(cell);
        }
    }
    return cells;
}

} // namespace graphmean
