#include "doctest.h"

#include <cmath>

#include "graphmean/er_model.hpp"
#include "graphmean/error.hpp"
#include "graphmean/rng.hpp"
#include "graphmean/stats.hpp"
#include "graphmean/stein.hpp"

using namespace graphmean;

TEST_CASE("edge order bijection") {
    EdgeOrder o4(4);
    CHECK(o4.count() == 6);
    CHECK(o4.pair_of(1) == std::pair<int, int>{1, 2});
    CHECK(o4.pair_of(4) == std::pair<int, int>{2, 3});
    CHECK(o4.pair_of(6) == std::pair<int, int>{3, 4});
    CHECK(EdgeOrder(3).pair_of(3) == std::pair<int, int>{2, 3});
    CHECK_THROWS_AS(o4.pair_of(0), Error);
    CHECK_THROWS_AS(o4.pair_of(7), Error);

    for (int n = 2; n <= 50; ++n) {
        EdgeOrder order(n);
        std::int64_t expect = 1;
        for (int i = 1; i <= n; ++i)
            for (int j = i + 1; j <= n; ++j, ++expect) {
                REQUIRE(order.index_of(i, j) == expect);
                REQUIRE(order.pair_of(expect) == std::pair<int, int>{i, j});
            }
    }
}

TEST_CASE("h values") {
    ErParams p3{3, 0.4};
    CHECK(h_value({0, 0, 0}, p3) == 0.0);
    // triangle: W = 6 wedges (ordered), E = 3: h = 3 - 2*1*0.4*3 = 0.6
    CHECK(h_value({1, 1, 1}, p3) == doctest::Approx(0.6).epsilon(1e-12));
    // complete graph on 4 vertices at p = 1/2: W/2 = 12, 2(n-2)pE = 2*2*0.5*6
    ErParams p4{4, 0.5};
    CHECK(h_value({1, 1, 1, 1, 1, 1}, p4) == doctest::Approx(0.0));
    CHECK_THROWS_AS(h_value({1, 0}, p3), Error);
}

TEST_CASE("delta_h hand example") {
    // Z empty, Z' complete, n = 3, p = 0.5, s = 1 -> (0-1)(0+0-1) = 1
    PairedSample sample{ErParams{3, 0.5}, {0, 0, 0}, {1, 1, 1}};
    CHECK(delta_h(sample, 1) == doctest::Approx(1.0));
    CHECK(delta_h(sample, 1) == doctest::Approx(delta_h_direct(sample, 1)));
}

TEST_CASE("delta_h vanishes when the coordinates agree") {
    PairedSample sample{ErParams{3, 0.4}, {1, 0, 1}, {1, 1, 0}};
    CHECK(delta_h(sample, 1) == 0.0);
    CHECK(delta_h_prefix(sample, 1) == 0.0);
}

TEST_CASE("difference formulas match brute-force h differences, n = 30") {
    for (double p : {0.1, 0.5}) {
        ErParams params{30, p};
        for (std::uint64_t seed = 1; seed <= 5; ++seed) {
            PairedSample sample = sample_paired(params, seed);
            EdgeOrder order(30);
            for (std::int64_t s = 1; s <= order.count(); ++s) {
                REQUIRE(std::abs(delta_h(sample, s) - delta_h_direct(sample, s)) <= 1e-9);
                REQUIRE(std::abs(delta_h_prefix(sample, s) -
                                 delta_h_prefix_direct(sample, s)) <= 1e-9);
            }
        }
    }
}

TEST_CASE("delta_h_prefix at s = 1 equals delta_h") {
    ErParams params{20, 0.3};
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        PairedSample sample = sample_paired(params, seed);
        CHECK(delta_h_prefix(sample, 1) == doctest::Approx(delta_h(sample, 1)).epsilon(1e-12));
    }
}

TEST_CASE("telescoping sum equals h(Z) - h(Z')") {
    for (double p : {0.1, 0.5}) {
        ErParams params{20, p};
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            PairedSample sample = sample_paired(params, seed);
            EdgeOrder order(20);
            KahanSum total;
            for (std::int64_t s = 1; s <= order.count(); ++s)
                total.add(delta_h_prefix(sample, s));
            double expect = h_value(sample.z, params) - h_value(sample.z_prime, params);
            REQUIRE(std::abs(total.value() - expect) <= 1e-9);
        }
    }
}

TEST_CASE("exact h variance") {
    // combination of the (W,E) moments collapses to n(n-1)(n-2)p^2(1-p)^2/2
    for (int n : {3, 10, 100, 2000}) {
        for (double p : {0.1, 0.3, 0.5}) {
            ErParams params{n, p};
            double direct = h_variance_exact(params);
            double collapsed = 0.5 * n * (n - 1.0) * (n - 2.0) * p * p * (1.0 - p) * (1.0 - p);
            CHECK(std::abs(direct / collapsed - 1.0) < 1e-11);
        }
    }
    // against the asymptotic n^3 p^2 (1-p)^2 / 2 at n = 2000
    ErParams params{2000, 0.3};
    double asym = 0.5 * std::pow(2000.0, 3) * 0.09 * 0.49;
    CHECK(std::abs(h_variance_exact(params) / asym - 1.0) < 0.1);
}

TEST_CASE("exact h variance matches enumeration, n <= 5") {
    for (int n : {4, 5}) {
        for (double p : {0.3, 0.6}) {
            ErParams params{n, p};
            const int slots = n * (n - 1) / 2;
            KahanSum eh, ehh;
            for (std::int64_t mask = 0; mask < (std::int64_t{1} << slots); ++mask) {
                std::vector<std::uint8_t> z(static_cast<std::size_t>(slots));
                int ones = 0;
                for (int b = 0; b < slots; ++b) {
                    z[static_cast<std::size_t>(b)] = (mask >> b) & 1;
                    ones += z[static_cast<std::size_t>(b)];
                }
                double w = std::pow(p, ones) * std::pow(1.0 - p, slots - ones);
                double h = h_value(z, params);
                eh.add(w * h);
                ehh.add(w * h * h);
            }
            double var = ehh.value() - eh.value() * eh.value();
            REQUIRE(std::abs(var - h_variance_exact(params)) <=
                    1e-9 * std::max(1.0, var));
        }
    }
}

TEST_CASE("v_statistics matches the serial reference") {
    ErParams params{30, 0.3};
    double sigma_sq = h_variance_exact(params);
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        PairedSample sample = sample_paired(params, seed);
        VStats fast = v_statistics(sample, sigma_sq);
        VStats ref = v_statistics_reference(sample, sigma_sq);
        CHECK(std::abs(fast.v_n - ref.v_n) <= 1e-9 * std::max(1.0, std::abs(ref.v_n)));
        CHECK(std::abs(fast.v_n_star - ref.v_n_star) <=
              1e-9 * std::max(1.0, std::abs(ref.v_n_star)));
    }
}

TEST_CASE("identical copies give zero v statistics") {
    ErParams params{15, 0.4};
    PairedSample sample = sample_paired(params, 3);
    sample.z_prime = sample.z;
    VStats vs = v_statistics(sample, h_variance_exact(params));
    CHECK(vs.v_n == 0.0);
    CHECK(vs.v_n_star == 0.0);
}

TEST_CASE("degenerate variance is rejected") {
    PairedSample sample{ErParams{3, 0.4}, {0, 0, 0}, {0, 0, 0}};
    CHECK_THROWS_AS(v_statistics(sample, 0.0), Error);
}

TEST_CASE("mean of V_n is near 1 and mean of V_n* near 0") {
    ErParams params{50, 0.3};
    SteinReport report = stein_check(params, 11, 2000, 2);
    CHECK(std::abs(report.v_n_mean - 1.0) < 4.0 * report.v_n_se);
    CHECK(std::abs(report.v_n_star_mean) < 4.0 * report.v_n_star_se);
    CHECK(report.telescoping_residual_max <= 1e-9);
    CHECK(report.delta_dev_max <= 1e-9);
    CHECK(report.delta_prefix_dev_max <= 1e-9);
}

TEST_CASE("V statistics concentrate as n grows") {
    const int replicas = 300;
    auto var_at = [&](int n) {
        ErParams params{n, 0.3};
        double sigma_sq = h_variance_exact(params);
        std::vector<double> vals(replicas);
        for (int r = 0; r < replicas; ++r) {
            PairedSample sample =
                sample_paired(params, replica_seed(17, static_cast<std::uint64_t>(r)));
            vals[static_cast<std::size_t>(r)] = v_statistics(sample, sigma_sq).v_n;
        }
        return sample_moments(vals).variance;
    };
    CHECK(var_at(200) < var_at(50));
}
