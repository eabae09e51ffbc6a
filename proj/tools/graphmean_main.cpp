// Command-line front end: mean-set, moments, regime, sample, simulate,
// stein-check, oracle. Reports are JSON (CSV for per-replica simulate dumps);
// exit status 0 = success, 1 = usage/precondition error, 2 = verification
// failure.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "graphmean/error.hpp"
#include "graphmean/frechet.hpp"
#include "graphmean/graph.hpp"
#include "graphmean/json_writer.hpp"
#include "graphmean/mc.hpp"
#include "graphmean/moments.hpp"
#include "graphmean/oracle.hpp"
#include "graphmean/stein.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

constexpr const char* kVersion = "1.0.0";
constexpr int kSchemaVersion = 1;

using namespace graphmean;

void write_output(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << "\n";
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw Error("IoError", "cannot open output file: " + out_path);
    out << text;
}

void apply_threads(int threads) {
#ifdef _OPENMP
    if (threads > 0) omp_set_num_threads(threads);
#else
    (void)threads;
#endif
}

std::vector<std::int64_t> parse_probes(const std::string& csv) {
    std::vector<std::int64_t> probes;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) probes.push_back(std::stoll(item));
    }
    return probes;
}

std::vector<double> parse_grid(const std::string& spec) {
    // "start:stop:step"
    double start = 0, stop = 0, step = 0;
    if (std::sscanf(spec.c_str(), "%lf:%lf:%lf", &start, &stop, &step) != 3 || step <= 0)
        throw Error("InvalidFlag", "p-grid must be start:stop:step");
    std::vector<double> grid;
    for (int k = 0;; ++k) {
        double p = start + k * step;
        if (p > stop + 1e-12) break;
        grid.push_back(p);
    }
    return grid;
}

std::string mean_set_json(const ErParams& params) {
    MeanSetSpec spec = mean_set_spec(params);
    JsonWriter w;
    w.begin_object();
    w.key("schema_version").value(kSchemaVersion);
    w.key("n").value(params.n);
    w.key("p").value(params.p);
    w.key("case").value(spec.case_name());
    w.key("m").value(spec.m);
    w.key("frac_np").value(spec.frac_np);
    w.key("admissible").value(spec.admissible_description());
    if (spec.case_tag == MeanCase::OddAdjusted) {
        w.key("exceptional_vertex").value(params.n);
        w.key("exceptional_degree_options").begin_array();
        if (spec.allow_plus) w.value(spec.m + 1);
        if (spec.allow_minus) w.value(spec.m - 1);
        w.end_array();
    }
    w.end_object();
    return w.str();
}

std::string moments_json(const ErParams& params, const MomentReport& r) {
    JsonWriter w;
    w.begin_object();
    w.key("schema_version").value(kSchemaVersion);
    w.key("n").value(params.n);
    w.key("p").value(params.p);
    w.key("mean_fn2").value(r.mean_fn2);
    w.key("var_fn2").value(r.var_fn2);
    w.key("e_un").value(r.e_un);
    w.key("e_wn").value(r.e_wn);
    w.key("var_un").value(r.var_un);
    w.key("var_wn").value(r.var_wn);
    w.key("cov_unwn").value(r.cov_unwn);
    w.end_object();
    return w.str();
}

std::string regime_json(const Regime& r, const std::vector<std::int64_t>& probes) {
    JsonWriter w;
    w.begin_object();
    w.key("schema_version").value(kSchemaVersion);
    w.key("tag").value(regime_name(r.tag));
    w.key("limit_param").value(r.limit_param);
    w.key("a_constant").value(r.a);
    w.key("fn2_limit_scaling").value(r.fn2_scaling.empty() ? std::string("n/a") : r.fn2_scaling);
    w.key("fn2_limit_variance").value(r.fn2_variance);
    w.key("fn_limit_scaling").value(r.fn_scaling.empty() ? std::string("n/a") : r.fn_scaling);
    w.key("fn_limit_variance").value(r.fn_variance);
    w.key("limit_law").value(r.limit_law);
    w.key("probes").begin_array();
    for (std::int64_t n : probes) w.value(n);
    w.end_array();
    w.key("np1p").begin_array();
    for (double x : r.probe_np1p) w.value(x);
    w.end_array();
    w.key("n2p1p").begin_array();
    for (double x : r.probe_n2p1p) w.value(x);
    w.end_array();
    w.end_object();
    return w.str();
}

std::string simulate_json(const SimConfig& config, const SimResult& res) {
    JsonWriter w;
    w.begin_object();
    w.key("schema_version").value(kSchemaVersion);
    w.key("config").begin_object();
    w.key("n").value(config.params.n);
    w.key("p").value(config.params.p);
    w.key("replicas").value(config.replicas);
    w.key("seed").value_u64(config.seed);
    w.key("test").value(test_name(config.test));
    if (config.test == TestKind::PoissonLimit) w.key("lambda").value(config.lambda);
    w.end_object();
    w.key("closed_mean").value(res.closed_mean);
    w.key("closed_var").value(res.closed_var);
    w.key("emp_mean").value(res.emp_mean);
    w.key("emp_var").value(res.emp_var);
    w.key("test_stat").value(res.test_stat);
    w.key("p_value").value(res.p_value);
    w.key("verdict").value(res.pass ? "pass" : "fail");
    w.key("details").begin_object();
    w.key("ks_critical").value(res.ks_critical);
    w.key("other_bin_mass").value(res.other_bin_mass);
    w.key("frac_zero").value(res.frac_zero);
    w.key("ratio_mean").value(res.ratio_mean);
    w.key("ratio_target").value(res.ratio_target);
    w.key("var_rel_dev").value(res.var_rel_dev);
    w.key("mean_z_score").value(res.mean_z_score);
    w.key("var_z_score").value(res.var_z_score);
    w.end_object();
    w.end_object();
    return w.str();
}

std::string simulate_csv(const SimResult& res) {
    std::string out = "replica,fn2,standardized\n";
    char buf[96];
    for (std::size_t i = 0; i < res.samples.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%zu,%.17g,%.17g\n", i, res.samples[i],
                      res.standardized[i]);
        out += buf;
    }
    return out;
}

std::string stein_json(const ErParams& params, std::uint64_t seed, std::int64_t replicas,
                       const SteinReport& r, bool pass) {
    JsonWriter w;
    w.begin_object();
    w.key("schema_version").value(kSchemaVersion);
    w.key("config").begin_object();
    w.key("n").value(params.n);
    w.key("p").value(params.p);
    w.key("seed").value_u64(seed);
    w.key("replicas").value(replicas);
    w.key("diag_replicas").value(r.diag_replicas);
    w.end_object();
    w.key("sigma_sq").value(r.sigma_sq);
    w.key("telescoping_residual_max").value(r.telescoping_residual_max);
    w.key("delta_dev_max").value(r.delta_dev_max);
    w.key("delta_prefix_dev_max").value(r.delta_prefix_dev_max);
    w.key("v_n_mean").value(r.v_n_mean);
    w.key("v_n_se").value(r.v_n_se);
    w.key("v_n_star_mean").value(r.v_n_star_mean);
    w.key("v_n_star_se").value(r.v_n_star_se);
    w.key("verdict").value(pass ? "pass" : "fail");
    w.end_object();
    return w.str();
}

std::string oracle_json(const std::vector<OracleCell>& cells, bool all_ok) {
    JsonWriter w;
    w.begin_object();
    w.key("schema_version").value(kSchemaVersion);
    w.key("cells").begin_array();
    for (const OracleCell& c : cells) {
        w.begin_object();
        w.key("n").value(c.n);
        w.key("p").value(c.p);
        w.key("minimizer_count").value(c.minimizer_count);
        w.key("min_value").value(c.min_value);
        w.key("membership_ok").value(c.membership_ok);
        w.key("f_max_rel_dev").value(c.f_max_rel_dev);
        w.key("mean_rel_dev").value(c.mean_rel_dev);
        w.key("var_rel_dev").value(c.var_rel_dev);
        w.key("ok").value(c.ok);
        w.end_object();
    }
    w.end_array();
    w.key("verdict").value(all_ok ? "pass" : "fail");
    w.end_object();
    return w.str();
}

std::string oracle_text(const std::vector<OracleCell>& cells, bool all_ok) {
    std::string out;
    char buf[160];
    for (const OracleCell& c : cells) {
        std::snprintf(buf, sizeof(buf),
                      "n=%d p=%.2f %s minimizers=%lld f_dev=%.3g mean_dev=%.3g var_dev=%.3g\n",
                      c.n, c.p, c.ok ? "ok  " : "FAIL", static_cast<long long>(c.minimizer_count),
                      c.f_max_rel_dev, c.mean_rel_dev, c.var_rel_dev);
        out += buf;
    }
    out += all_ok ? "verdict: pass\n" : "verdict: fail\n";
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Frechet means of G(n,p) under the Laplacian Frobenius distance"};
    app.set_version_flag("--version", std::string("graphmean ") + kVersion + " (schema " +
                                          std::to_string(kSchemaVersion) + ")");
    app.require_subcommand(1);

    int threads = 0;
    app.add_option("--threads", threads, "worker threads (default: hardware)");

    // mean-set
    auto* cmd_mean = app.add_subcommand("mean-set", "describe the Frechet mean set");
    int ms_n = 0;
    double ms_p = 0.0;
    std::string ms_emit, ms_out;
    bool ms_json = false;
    cmd_mean->add_option("--n", ms_n, "vertex count")->required();
    cmd_mean->add_option("--p", ms_p, "edge probability")->required();
    cmd_mean->add_option("--emit-graph", ms_emit, "write the canonical mean graph here");
    cmd_mean->add_option("--out", ms_out, "write the JSON report here");
    cmd_mean->add_flag("--json", ms_json, "JSON output (always on)");

    // moments
    auto* cmd_moments = app.add_subcommand("moments", "closed-form moments of F_n^2");
    int mo_n = 0;
    double mo_p = 0.0;
    std::string mo_out;
    bool mo_json = false;
    cmd_moments->add_option("--n", mo_n, "vertex count")->required();
    cmd_moments->add_option("--p", mo_p, "edge probability")->required();
    cmd_moments->add_option("--out", mo_out, "write the JSON report here");
    cmd_moments->add_flag("--json", mo_json, "JSON output (always on)");

    // regime
    auto* cmd_regime = app.add_subcommand("regime", "classify a sparsity schedule p(n)");
    std::string rg_schedule, rg_probes = "1000,10000,100000", rg_out;
    double rg_param = 0.0;
    cmd_regime->add_option("--schedule", rg_schedule,
                           "constant | c-over-n | lambda-over-n2 | power-law")
        ->required();
    cmd_regime->add_option("--param", rg_param, "schedule parameter")->required();
    cmd_regime->add_option("--probes", rg_probes, "comma-separated probe sizes");
    cmd_regime->add_option("--out", rg_out, "write the JSON report here");

    // sample
    auto* cmd_sample = app.add_subcommand("sample", "draw one G(n,p) graph");
    int sa_n = 0;
    double sa_p = 0.0;
    std::uint64_t sa_seed = 0;
    std::string sa_out;
    cmd_sample->add_option("--n", sa_n, "vertex count")->required();
    cmd_sample->add_option("--p", sa_p, "edge probability")->required();
    cmd_sample->add_option("--seed", sa_seed, "RNG seed")->required();
    cmd_sample->add_option("--out", sa_out, "write the graph here");

    // simulate
    auto* cmd_sim = app.add_subcommand("simulate", "replicated F_n^2 simulation and tests");
    int si_n = 0;
    double si_p = 0.0, si_lambda = 0.0;
    std::int64_t si_replicas = 0;
    std::uint64_t si_seed = 0;
    std::string si_test, si_out;
    cmd_sim->add_option("--n", si_n, "vertex count")->required();
    cmd_sim->add_option("--p", si_p, "edge probability")->required();
    cmd_sim->add_option("--replicas", si_replicas, "number of replicas")->required();
    cmd_sim->add_option("--seed", si_seed, "RNG seed")->required();
    cmd_sim->add_option("--test", si_test, "moments | poisson | normal | sqrt-normal | lln | ratio")
        ->required();
    cmd_sim->add_option("--lambda", si_lambda, "Poisson reference lambda");
    cmd_sim->add_option("--out", si_out, "report path (.csv for per-replica rows)");

    // stein-check
    auto* cmd_stein = app.add_subcommand("stein-check", "difference-operator diagnostics");
    int st_n = 0;
    double st_p = 0.0;
    std::int64_t st_replicas = 1000, st_diag = 2;
    std::uint64_t st_seed = 0;
    std::string st_out;
    cmd_stein->add_option("--n", st_n, "vertex count")->required();
    cmd_stein->add_option("--p", st_p, "edge probability")->required();
    cmd_stein->add_option("--seed", st_seed, "RNG seed")->required();
    cmd_stein->add_option("--replicas", st_replicas, "paired samples for V statistics");
    cmd_stein->add_option("--diag-replicas", st_diag,
                          "samples receiving brute-force identity checks");
    cmd_stein->add_option("--out", st_out, "write the JSON report here");

    // oracle
    auto* cmd_oracle = app.add_subcommand("oracle", "exhaustive verification sweep");
    int or_max_n = 6;
    std::string or_grid = "0.05:0.95:0.05", or_out;
    bool or_json = false;
    cmd_oracle->add_option("--max-n", or_max_n, "largest n to sweep (<= 6)");
    cmd_oracle->add_option("--p-grid", or_grid, "start:stop:step");
    cmd_oracle->add_flag("--json", or_json, "JSON output");
    cmd_oracle->add_option("--out", or_out, "write the report here");

    CLI11_PARSE(app, argc, argv);

    try {
        apply_threads(threads);

        if (cmd_mean->parsed()) {
            ErParams params{ms_n, ms_p};
            std::string report = mean_set_json(params);
            if (!ms_emit.empty()) {
                std::ofstream out(ms_emit, std::ios::binary);
                if (!out) throw Error("IoError", "cannot open " + ms_emit);
                out << format_graph(construct_mean(params));
            }
            write_output(report, ms_out);
            return 0;
        }

        if (cmd_moments->parsed()) {
            ErParams params{mo_n, mo_p};
            write_output(moments_json(params, moments(params)), mo_out);
            return 0;
        }

        if (cmd_regime->parsed()) {
            std::vector<std::int64_t> probes = parse_probes(rg_probes);
            double x = rg_param;
            Regime regime = [&] {
                if (rg_schedule == "constant")
                    return classify_regime([x](std::int64_t) { return x; }, probes);
                if (rg_schedule == "c-over-n")
                    return classify_regime(
                        [x](std::int64_t n) { return x / static_cast<double>(n); }, probes);
                if (rg_schedule == "lambda-over-n2")
                    return classify_regime(
                        [x](std::int64_t n) {
                            return x / (static_cast<double>(n) * static_cast<double>(n));
                        },
                        probes);
                if (rg_schedule == "power-law")
                    return classify_regime(
                        [x](std::int64_t n) { return std::pow(static_cast<double>(n), -x); },
                        probes);
                throw Error("InvalidFlag", "unknown schedule: " + rg_schedule);
            }();
            write_output(regime_json(regime, probes), rg_out);
            return 0;
        }

        if (cmd_sample->parsed()) {
            ErParams params{sa_n, sa_p};
            write_output(format_graph(sample_gnp(params, sa_seed)), sa_out);
            return 0;
        }

        if (cmd_sim->parsed()) {
            SimConfig config{ErParams{si_n, si_p}, si_replicas, si_seed,
                             test_from_name(si_test), si_lambda};
            SimResult res = run(config);
            bool csv = si_out.size() > 4 && si_out.substr(si_out.size() - 4) == ".csv";
            write_output(csv ? simulate_csv(res) : simulate_json(config, res), si_out);
            return res.pass ? 0 : 2;
        }

        if (cmd_stein->parsed()) {
            ErParams params{st_n, st_p};
            SteinReport report = stein_check(params, st_seed, st_replicas, st_diag);
            bool pass = std::abs(report.v_n_mean - 1.0) <= 3.0 * report.v_n_se &&
                        std::abs(report.v_n_star_mean) <= 3.0 * report.v_n_star_se &&
                        report.telescoping_residual_max <= 1e-9 &&
                        report.delta_dev_max <= 1e-9 && report.delta_prefix_dev_max <= 1e-9;
            write_output(stein_json(params, st_seed, st_replicas, report, pass), st_out);
            return pass ? 0 : 2;
        }

        if (cmd_oracle->parsed()) {
            std::vector<OracleCell> cells = oracle_grid(or_max_n, parse_grid(or_grid));
            bool all_ok = true;
            for (const OracleCell& c : cells) all_ok = all_ok && c.ok;
            write_output(or_json ? oracle_json(cells, all_ok) : oracle_text(cells, all_ok),
                         or_out);
            return all_ok ? 0 : 2;
        }
    } catch (const Error& e) {
        JsonWriter w;
        w.begin_object();
        w.key("code").value(e.code());
        w.key("message").value(std::string(e.what()));
        w.end_object();
        std::cout << w.str() << "\n";
        return 1;
    } catch (const std::exception& e) {
        JsonWriter w;
        w.begin_object();
        w.key("code").value("InternalError");
        w.key("message").value(std::string(e.what()));
        w.end_object();
        std::cout << w.str() << "\n";
        return 1;
    }
    return 0;
}
