#include "wks/commands.hpp"
#include "wks/errors.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <map>

namespace {

constexpr int exit_usage = 2;
constexpr int exit_data = 3;

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Weighted Kolmogorov-Smirnov gene set enrichment test"};
    app.require_subcommand(1);

    wks::EstimateOptions est;
    auto* estimate = app.add_subcommand("estimate-cdf", "Monte-Carlo estimate of the null CDF");
    estimate->add_option("-w,--weights", est.weights_file, "gene<TAB>weight file")->required()->check(CLI::ExistingFile);
    estimate->add_flag("--rank-transform", est.rank_transform, "replace weights by their ranks");
    estimate->add_option("-m,--m", est.m, "discretization intervals (default: number of genes)");
    estimate->add_option("--nsim", est.nsim, "number of trajectories")->capture_default_str();
    estimate->add_option("--seed", est.seed, "random seed")->capture_default_str();
    estimate->add_option("-o,--out", est.out_cache, "cache file to write")->required();

    wks::TestOptions tst;
    std::string side = "two";
    bool raw_perm = false;
    std::size_t max_size = 0;
    std::string cache;
    auto* test = app.add_subcommand("test", "test gene sets against a weight vector");
    test->add_option("-w,--weights", tst.weights_file, "gene<TAB>weight file")->required()->check(CLI::ExistingFile);
    test->add_option("-g,--gmt", tst.gmt_file, "gene set file (GMT)")->required()->check(CLI::ExistingFile);
    test->add_option("-c,--cache", cache, "null CDF cache from estimate-cdf")->check(CLI::ExistingFile);
    test->add_flag("--rank-transform", tst.rank_transform, "replace weights by their ranks");
    test->add_option("-m,--m", tst.m, "discretization intervals for inline simulation");
    test->add_option("--nsim", tst.nsim, "trajectories for inline simulation")->capture_default_str();
    test->add_option("--nperm", tst.nperm, "GSEA permutations per set")->capture_default_str();
    test->add_option("--seed", tst.seed, "random seed")->capture_default_str();
    test->add_option("--one-sided", side, "two, up or down")
        ->check(CLI::IsMember({"two", "up", "down"}))->capture_default_str();
    test->add_flag("--raw-perm-pvalue", raw_perm, "GSEA p = count/nperm instead of (count+1)/(nperm+1)");
    test->add_option("--min-size", tst.min_set_size, "skip sets with fewer resolved genes")->capture_default_str();
    test->add_option("--max-size", max_size, "skip sets with more resolved genes");
    test->add_option("-o,--out", tst.out_report, "report TSV (- for stdout)")->default_str("-");
    std::string steps;
    test->add_option("--steps", steps, "write per-set step functions as CSV");

    wks::ValidateOptions val;
    std::string sampling = "iid";
    std::string vcache;
    auto* validate = app.add_subcommand("validate", "goodness-of-fit scan of the asymptotic null");
    validate->add_option("-w,--weights", val.weights_file, "gene<TAB>weight file (default: synthetic rank profile)")->check(CLI::ExistingFile);
    validate->add_option("--genes", val.genes, "size of the synthetic rank profile")->capture_default_str();
    validate->add_flag("--rank-transform", val.rank_transform, "replace weights by their ranks");
    validate->add_option("-c,--cache", vcache, "null CDF cache")->check(CLI::ExistingFile);
    validate->add_option("-m,--m", val.m, "discretization intervals");
    validate->add_option("--nsim", val.nsim, "trajectories")->capture_default_str();
    validate->add_option("-n,--sizes", val.n_grid, "gene-set sizes (default 5..1100 step 5)");
    validate->add_option("--reps", val.reps, "gene sets per size")->capture_default_str();
    validate->add_option("--sampling", sampling, "iid_uniform or without_replacement")
        ->check(CLI::IsMember({"iid", "iid_uniform", "wor", "without_replacement"}))->capture_default_str();
    validate->add_option("--seed", val.seed, "random seed")->capture_default_str();
    validate->add_option("-o,--out", val.out_csv, "CSV output (- for stdout)")->default_str("-");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : exit_usage;
    }
    if (val.out_csv.empty()) val.out_csv = "-";
    if (tst.out_report.empty()) tst.out_report = "-";

    try {
        if (*estimate) {
            wks::run_estimate(est, std::cerr);
        } else if (*test) {
            static const std::map<std::string, wks::Sidedness> sides{
                {"two", wks::Sidedness::two}, {"up", wks::Sidedness::up}, {"down", wks::Sidedness::down}};
            tst.side = sides.at(side);
            if (raw_perm) tst.correction = wks::PermCorrection::raw;
            if (max_size > 0) tst.max_set_size = max_size;
            if (!cache.empty()) tst.cache_file = cache;
            if (!steps.empty()) tst.out_steps = steps;
            wks::run_test(tst, std::cerr);
        } else if (*validate) {
            val.sampling = wks::parse_sampling(sampling);
            if (!vcache.empty()) val.cache_file = vcache;
            wks::run_validate(val, std::cerr);
        }
    } catch (const wks::InvalidParameter& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const wks::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_data;
    }
    return 0;
}
