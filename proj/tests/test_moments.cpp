#include "doctest.h"

#include <cmath>
#include <limits>
#include <vector>

#include "graphmean/er_model.hpp"
#include "graphmean/error.hpp"
#include "graphmean/frechet.hpp"
#include "graphmean/moments.hpp"
#include "graphmean/oracle.hpp"
#include "graphmean/stats.hpp"

using namespace graphmean;

namespace {

// Exact enumeration moments of (U_n, W_n, E_n, F_n^2) against a regular mean.
struct EnumMoments {
    double e_un, e_wn, var_un, var_wn, cov_unwn;
    double var_en, cov_wn_en;
    double mean_fn2, var_fn2;
};

EnumMoments enumerate_moments(const ErParams& params, const Graph& mean) {
    const int slots = params.n * (params.n - 1) / 2;
    KahanSum eu, ew, ee, euu, eww, eee, euw, ewe, ef, eff;
    for_each_graph(params.n, [&](const Graph& g) {
        double w = std::pow(params.p, static_cast<double>(g.edge_count())) *
                   std::pow(1.0 - params.p, static_cast<double>(slots - g.edge_count()));
        GraphStats s = compute_stats(g, mean, params);
        double u = static_cast<double>(s.u_n);
        double wn = static_cast<double>(s.w_n);
        double en = static_cast<double>(s.edge_count);
        double f = static_cast<double>(fn_squared(g, mean));
        eu.add(w * u);
        ew.add(w * wn);
        ee.add(w * en);
        euu.add(w * u * u);
        eww.add(w * wn * wn);
        eee.add(w * en * en);
        euw.add(w * u * wn);
        ewe.add(w * wn * en);
        ef.add(w * f);
        eff.add(w * f * f);
    });
    EnumMoments m{};
    m.e_un = eu.value();
    m.e_wn = ew.value();
    m.var_un = euu.value() - m.e_un * m.e_un;
    m.var_wn = eww.value() - m.e_wn * m.e_wn;
    m.cov_unwn = euw.value() - m.e_un * m.e_wn;
    double e_en = ee.value();
    m.var_en = eee.value() - e_en * e_en;
    m.cov_wn_en = ewe.value() - m.e_wn * e_en;
    m.mean_fn2 = ef.value();
    m.var_fn2 = eff.value() - m.mean_fn2 * m.mean_fn2;
    return m;
}

bool close_rel(double a, double b, double tol) {
    return std::abs(a - b) <= tol * std::max(1.0, std::max(std::abs(a), std::abs(b)));
}

} // namespace

TEST_CASE("moments at n = 4, p = 0.3") {
    MomentReport r = moments(ErParams{4, 0.3});
    CHECK(r.mean_fn2 == doctest::Approx(7.76).epsilon(1e-12));
    CHECK(r.var_fn2 == doctest::Approx(8.0304).epsilon(1e-12));
    CHECK(close_rel(r.var_fn2, 4.0 * r.var_un + r.var_wn - 4.0 * r.cov_unwn, 1e-12));
}

TEST_CASE("moments requires the standing assumptions") {
    CHECK_THROWS_AS(moments(ErParams{4, 0.5}), Error); // np integer
    CHECK_THROWS_AS(moments(ErParams{3, 0.4}), Error); // n*floor(np) odd
}

TEST_CASE("closed moments match exact enumeration, n <= 5") {
    struct Cell {
        int n;
        double p;
    };
    for (const Cell& cell : {Cell{4, 0.3}, Cell{4, 0.7}, Cell{5, 0.45}, Cell{5, 0.55}}) {
        ErParams params{cell.n, cell.p};
        MomentReport closed = moments(params);
        EnumMoments exact = enumerate_moments(params, construct_mean(params));
        CHECK(close_rel(closed.e_un, exact.e_un, 1e-9));
        CHECK(close_rel(closed.e_wn, exact.e_wn, 1e-9));
        CHECK(close_rel(closed.var_un, exact.var_un, 1e-9));
        CHECK(close_rel(closed.var_wn, exact.var_wn, 1e-9));
        CHECK(close_rel(closed.cov_unwn, exact.cov_unwn, 1e-9));
        CHECK(close_rel(closed.mean_fn2, exact.mean_fn2, 1e-9));
        CHECK(close_rel(closed.var_fn2, exact.var_fn2, 1e-9));
        CHECK(close_rel(var_en(params), exact.var_en, 1e-9));
        CHECK(close_rel(cov_wn_en(params), exact.cov_wn_en, 1e-9));
    }
}

TEST_CASE("regular-mean engine also covers integer np") {
    // np = 2 at (4, 0.5); the 2-regular canonical mean is a Frechet mean and
    // the closed forms remain exact for it.
    ErParams params{4, 0.5};
    Graph mean = construct_mean(params);
    REQUIRE(mean.degree(1) == 2);
    MomentReport closed = moments_for_regular_mean(params, 2);
    EnumMoments exact = enumerate_moments(params, mean);
    CHECK(close_rel(closed.mean_fn2, exact.mean_fn2, 1e-9));
    CHECK(close_rel(closed.var_fn2, exact.var_fn2, 1e-9));
    CHECK(close_rel(closed.var_un, exact.var_un, 1e-9));
    CHECK(close_rel(closed.cov_unwn, exact.cov_unwn, 1e-9));
}

TEST_CASE("mean-graph independence of the F_n^2 law parameters") {
    // Two non-isomorphic 2-regular means at n = 6, p = 0.4: the 6-cycle and
    // two disjoint triangles give identical enumeration moments.
    ErParams params{6, 0.4};
    Graph cycle(6, {{1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {1, 6}});
    Graph triangles(6, {{1, 2}, {1, 3}, {2, 3}, {4, 5}, {4, 6}, {5, 6}});
    auto [m1, v1] = exact_fn2_moments(params, cycle);
    auto [m2, v2] = exact_fn2_moments(params, triangles);
    CHECK(close_rel(m1, m2, 1e-9));
    CHECK(close_rel(v1, v2, 1e-9));
    MomentReport closed = moments(params);
    CHECK(close_rel(closed.mean_fn2, m1, 1e-9));
    CHECK(close_rel(closed.var_fn2, v1, 1e-9));
}

TEST_CASE("a_constant") {
    CHECK(a_constant(0.0) == 2.0);
    CHECK(a_constant(std::numeric_limits<double>::infinity()) == 3.0);
    CHECK(a_constant(1.5) == doctest::Approx(2.0 + (0.25 + 1.0) / 1.5).epsilon(1e-15));
    CHECK(a_constant(0.25) == doctest::Approx(2.0 + 0.0625 / 0.25).epsilon(1e-15));
    CHECK_THROWS_AS(a_constant(-1.0), Error);
}

TEST_CASE("mean ratio approaches a = 3 along constant p") {
    double prev = 0.0;
    for (int n : {1000, 10000, 100000}) {
        ErParams params{n, 0.3};
        MomentReport r = moments_for_regular_mean(params, floor_np(params));
        double ratio = r.mean_fn2 / (static_cast<double>(n) * n * 0.3 * 0.7);
        CHECK(ratio > prev);
        prev = ratio;
        if (n == 100000) CHECK(std::abs(ratio / 3.0 - 1.0) < 0.02);
    }
}

TEST_CASE("asymptotic_variance") {
    CHECK(asymptotic_variance(ErParams{1000, 0.5}, RegimeTag::Dense) ==
          doctest::Approx(1.25e8).epsilon(1e-12));
    // c = 1.5: 2c[4(c - floor c + 1)^2 + c] n = 31.5 n
    CHECK(asymptotic_variance(ErParams{1000000, 1.5e-6}, RegimeTag::Sparse) ==
          doctest::Approx(31.5e6).epsilon(1e-3));
    // integer c has no universal constant
    int n = 1000000;
    double p = (1.0 - std::sqrt(1.0 - 8.0 / n)) / 2.0; // np(1-p) = 2
    CHECK_THROWS_AS(asymptotic_variance(ErParams{n, p}, RegimeTag::Sparse), Error);
    CHECK_THROWS_AS(asymptotic_variance(ErParams{100, 0.3}, RegimeTag::PoissonWindow), Error);
}

TEST_CASE("asymptotic variance tracks the exact variance along each regime") {
    // dense: constant p
    for (int n : {2000, 20000, 200000}) {
        ErParams params{n, 0.3};
        double exact = moments_for_regular_mean(params, floor_np(params)).var_fn2;
        double asym = asymptotic_variance(params, RegimeTag::Dense);
        if (n == 200000) CHECK(std::abs(asym / exact - 1.0) < 0.05);
    }
    // very sparse: p = n^{-3/2}
    for (int n : {10000, 100000, 1000000}) {
        ErParams params{n, std::pow(static_cast<double>(n), -1.5)};
        double exact = moments_for_regular_mean(params, floor_np(params)).var_fn2;
        double asym = asymptotic_variance(params, RegimeTag::VerySparse);
        if (n == 1000000) CHECK(std::abs(asym / exact - 1.0) < 0.05);
    }
    // sparse: p = 1.5/n
    for (int n : {10000, 100000, 1000000}) {
        ErParams params{n, 1.5 / static_cast<double>(n)};
        double exact = moments_for_regular_mean(params, floor_np(params)).var_fn2;
        double asym = asymptotic_variance(params, RegimeTag::Sparse);
        if (n == 1000000) CHECK(std::abs(asym / exact - 1.0) < 0.05);
    }
}

TEST_CASE("classify_regime") {
    std::vector<std::int64_t> probes{1000, 10000, 100000};
    Regime dense = classify_regime([](std::int64_t) { return 0.3; }, probes);
    CHECK(dense.tag == RegimeTag::Dense);
    CHECK(dense.a == 3.0);
    CHECK(dense.fn2_variance == 2.0);
    CHECK(dense.fn_variance == doctest::Approx(1.0 / 6.0));

    Regime poisson = classify_regime(
        [](std::int64_t n) { return 4.0 / (static_cast<double>(n) * n); }, probes);
    CHECK(poisson.tag == RegimeTag::PoissonWindow);
    CHECK(poisson.limit_param == doctest::Approx(4.0).epsilon(1e-6));

    Regime very_sparse = classify_regime(
        [](std::int64_t n) { return std::pow(static_cast<double>(n), -1.5); }, probes);
    CHECK(very_sparse.tag == RegimeTag::VerySparse);
    CHECK(very_sparse.a == 2.0);
    CHECK(very_sparse.fn2_variance == 8.0);

    Regime sparse = classify_regime(
        [](std::int64_t n) { return 1.5 / static_cast<double>(n); }, probes);
    CHECK(sparse.tag == RegimeTag::Sparse);
    CHECK(sparse.limit_param == doctest::Approx(1.5).epsilon(1e-3));
    CHECK(sparse.a == doctest::Approx(2.0 + 1.25 / 1.5).epsilon(1e-3));
    CHECK(sparse.fn2_variance == doctest::Approx(31.5).epsilon(1e-3));
    CHECK(sparse.fn_variance == doctest::Approx(15.75 / 8.5).epsilon(1e-3));

    Regime vanishing = classify_regime(
        [](std::int64_t n) {
            double nn = static_cast<double>(n);
            return 1.0 / (nn * nn * nn);
        },
        probes);
    CHECK(vanishing.tag == RegimeTag::Vanishing);

    std::vector<std::int64_t> small_probes{10, 11, 12};
    CHECK_THROWS_AS(classify_regime(
                        [](std::int64_t n) { return n % 2 == 0 ? 0.5 : 0.25; }, small_probes),
                    Error);
    CHECK_THROWS_AS(classify_regime([](std::int64_t) { return 0.3; },
                                    std::vector<std::int64_t>{1000, 10000}),
                    Error);
}

TEST_CASE("poisson limit law") {
    PoissonSqrtLaw law = poisson_limit_params(4.0);
    CHECK(law.pmf(0) == doctest::Approx(std::exp(-2.0)).epsilon(1e-12));
    CHECK(law.pmf(1) == doctest::Approx(2.0 * std::exp(-2.0)).epsilon(1e-12));
    double total = 0.0;
    for (int k = 0; k <= 200; ++k) total += law.pmf(k);
    CHECK(std::abs(total - 1.0) < 1e-12);
    CHECK(law.support_value(4) == doctest::Approx(4.0));
    CHECK(law.cdf(-0.5) == 0.0);
    CHECK(law.cdf(0.0) == doctest::Approx(std::exp(-2.0)).epsilon(1e-12));
    CHECK(law.cdf(2.0) == doctest::Approx(3.0 * std::exp(-2.0)).epsilon(1e-12));
    CHECK_THROWS_AS(poisson_limit_params(0.0), Error);
}
