// Compares the serial reference paths against the OpenMP kernels:
//   - replica sweep of F_n^2 samples (mc::run inner loop)
//   - V-statistic sweep (prefix-sum kernel vs term-by-term reference)
//   - exhaustive Frechet scoring (oracle enumeration)
// Usage: graphmean_bench [threads]

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <vector>

#include "graphmean/er_model.hpp"
#include "graphmean/frechet.hpp"
#include "graphmean/mc.hpp"
#include "graphmean/oracle.hpp"
#include "graphmean/rng.hpp"
#include "graphmean/stein.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace graphmean;

namespace {

double now_seconds() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

double time_replica_sweep_serial(const ErParams& params, std::int64_t replicas) {
    Graph mean = construct_mean(params);
    AdjacencyBits adj(mean);
    const AdjacencyBits* adj_ptr = mean.edge_count() > 0 ? &adj : nullptr;
    std::int64_t deg_sq = degree_square_sum(mean.degrees());
    double t0 = now_seconds();
    double sink = 0.0;
    for (std::int64_t k = 0; k < replicas; ++k)
        sink += static_cast<double>(sample_fn_squared(
            params, replica_seed(1, static_cast<std::uint64_t>(k)), mean.degrees(),
            mean.edge_count(), deg_sq, adj_ptr));
    double dt = now_seconds() - t0;
    std::printf("  serial sweep      %8.3fs (checksum %.0f)\n", dt, sink);
    return dt;
}

double time_replica_sweep_omp(const ErParams& params, std::int64_t replicas) {
    SimConfig config{params, replicas, 1, TestKind::MomentsCheck, 0.0};
    double t0 = now_seconds();
    SimResult res = run(config);
    double dt = now_seconds() - t0;
    std::printf("  omp sweep         %8.3fs (mean %.3f)\n", dt, res.emp_mean);
    return dt;
}

void bench_vstats(int n, double p, int reps) {
    ErParams params{n, p};
    double sigma_sq = h_variance_exact(params);
    std::vector<PairedSample> samples;
    for (int r = 0; r < reps; ++r)
        samples.push_back(sample_paired(params, replica_seed(2, static_cast<std::uint64_t>(r))));

    double t0 = now_seconds();
    double sink = 0.0;
    for (const PairedSample& s : samples) sink += v_statistics_reference(s, sigma_sq).v_n;
    double t_ref = now_seconds() - t0;

    t0 = now_seconds();
    double sink2 = 0.0;
    for (const PairedSample& s : samples) sink2 += v_statistics(s, sigma_sq).v_n;
    double t_fast = now_seconds() - t0;

    std::printf("v-statistics n=%d, %d samples\n", n, reps);
    std::printf("  reference O(Nn)   %8.3fs (sum %.6f)\n", t_ref, sink);
    std::printf("  prefix-sum O(N)   %8.3fs (sum %.6f)  speedup %.1fx\n", t_fast, sink2,
                t_ref / t_fast);
}

} // namespace

int main(int argc, char** argv) {
#ifdef _OPENMP
    if (argc > 1) omp_set_num_threads(std::atoi(argv[1]));
    std::printf("OpenMP enabled, max threads %d\n", omp_get_max_threads());
#else
    (void)argc;
    (void)argv;
    std::printf("OpenMP not available; all paths run serially\n");
#endif

    ErParams dense{1000, 0.3};
    std::printf("replica sweep n=%d p=%.2f, 2000 replicas\n", dense.n, dense.p);
    double ts = time_replica_sweep_serial(dense, 2000);
    double tp = time_replica_sweep_omp(dense, 2000);
    std::printf("  speedup %.2fx\n", ts / tp);

    bench_vstats(120, 0.3, 50);

    std::printf("oracle sweep n=5, 19 p values\n");
    double t0 = now_seconds();
    std::vector<double> grid;
    for (int k = 1; k <= 19; ++k) grid.push_back(k * 0.05);
    std::vector<OracleCell> cells = oracle_grid(5, grid);
    std::printf("  %zu cells          %8.3fs\n", cells.size(), now_seconds() - t0);
    return 0;
}
