#include "wks/commands.hpp"

#include "wks/errors.hpp"
#include "wks/multiple_testing.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <ostream>

namespace wks {

namespace {

// Keeps GSEA permutation streams apart from trajectory streams (tag 0).
constexpr std::uint64_t gsea_stream_tag = 0x6773656100000001ULL;

template <class Fn>
void with_output(const std::string& path, Fn&& fn) {
    if (path.empty() || path == "-") {
        fn(std::cout);
        std::cout.flush();
        return;
    }
    std::ofstream out(path);
    if (!out) throw Error("cannot open " + path + " for writing");
    fn(out);
    if (!out) throw Error("failed writing " + path);
}

} // namespace

WeightProfile load_profile(const std::string& weights_file, bool rank) {
    auto v = load_weight_vector_file(weights_file);
    if (rank) v = rank_transform(v);
    try {
        return build_profile(v);
    } catch (const NonPositiveWeight& e) {
        throw NonPositiveWeight(e.gene() + " in " + weights_file);
    }
}

NullCdf run_estimate(const EstimateOptions& opt, std::ostream& log) {
    const auto profile = load_profile(opt.weights_file, opt.rank_transform);
    SimConfig cfg{opt.m == 0 ? profile.size() : opt.m, opt.nsim, opt.seed};
    cfg.validate();
    auto null = estimate_cdf(profile, cfg);
    save_null_cdf(opt.out_cache, null);
    log << "genes\t" << profile.size() << "\nm\t" << cfg.m << "\nnsim\t" << cfg.nsim
        << "\nseed\t" << cfg.seed << "\nq50\t" << quantile(null.maxima, 0.5) << "\nq95\t"
        << quantile(null.maxima, 0.95) << "\nq99\t" << quantile(null.maxima, 0.99) << '\n';
    return null;
}

std::uint64_t set_seed(std::uint64_t seed, const std::string& name) {
    return mix_key(seed, hash_name(name), gsea_stream_tag);
}

TestSummary test_gene_sets(const WeightProfile& profile, const NullCdf& null,
                           const std::vector<GeneSet>& sets, const TestOptions& opt) {
    if (null.weight_fingerprint != profile.fingerprint()) throw CdfProfileMismatch();

    TestSummary summary;
    std::vector<ResolvedGeneSet> resolved;
    for (const auto& s : sets) {
        try {
            auto r = resolve(s.name, s.members, profile, s.description);
            if (r.n() < opt.min_set_size || (opt.max_set_size && r.n() > *opt.max_set_size)) {
                ++summary.skipped_size;
                continue;
            }
            resolved.push_back(std::move(r));
        } catch (const EmptyIntersection&) {
            ++summary.skipped_empty;
        }
    }

    auto& rows = summary.rows;
    rows.resize(resolved.size());
    const auto count = static_cast<std::int64_t>(resolved.size());
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t i = 0; i < count; ++i) {
        const auto& set = resolved[i];
        const auto sc = score(set, profile);
        auto& row = rows[i];
        row.name = set.name;
        row.n_resolved = set.n();
        row.dropped = set.dropped;
        row.t_star = sided_statistic(sc, opt.side);
        row.p_wks = wks_pvalue(sc, null, profile, opt.side);
        row.t_classic = sc.t_classic;
        row.p_gsea = gsea_pvalue(set.n(), profile, sc.t_classic, opt.nperm,
                                 set_seed(opt.seed, set.name), opt.correction);
    }

    if (!rows.empty()) {
        std::vector<double> pw, pg;
        for (const auto& r : rows) {
            pw.push_back(r.p_wks);
            pg.push_back(r.p_gsea);
        }
        const auto aw = benjamini_yekutieli(pw);
        const auto ag = benjamini_yekutieli(pg);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            rows[i].p_wks_by = aw[i];
            rows[i].p_gsea_by = ag[i];
        }
    }

    if (opt.out_steps)
        with_output(*opt.out_steps, [&](std::ostream& out) { write_steps(out, profile, resolved); });
    return summary;
}

void write_report(std::ostream& out, const std::vector<ReportRow>& rows) {
    out << "name\tn_resolved\tdropped\tt_star\tp_wks\tp_wks_BY\tt_classic\tp_gsea\tp_gsea_BY\n";
    const auto old = out.precision(17);
    for (const auto& r : rows) {
        out << r.name << '\t' << r.n_resolved << '\t' << r.dropped << '\t' << r.t_star << '\t'
            << r.p_wks << '\t' << r.p_wks_by << '\t' << r.t_classic << '\t' << r.p_gsea << '\t'
            << r.p_gsea_by << '\n';
    }
    out.precision(old);
}

void write_steps(std::ostream& out, const WeightProfile& profile,
                 const std::vector<ResolvedGeneSet>& sets) {
    out << "set,t,S_n,G,identity\n";
    const auto old = out.precision(17);
    for (const auto& set : sets) {
        const auto f = cumulative_proportion(set, profile);
        out << set.name << ",0,0,0,0\n";
        for (std::size_t i = 0; i < f.jump_ts.size(); ++i) {
            const double t = f.jump_ts[i];
            out << set.name << ',' << t << ',' << f.values_after[i] << ','
                << profile.cumulative_at(set.positions[i]) << ',' << t << '\n';
        }
    }
    out.precision(old);
}

TestSummary run_test(const TestOptions& opt, std::ostream& log) {
    const auto profile = load_profile(opt.weights_file, opt.rank_transform);
    NullCdf null;
    if (opt.cache_file) {
        null = load_null_cdf(*opt.cache_file);
        if (null.weight_fingerprint != profile.fingerprint()) throw CdfProfileMismatch();
    } else {
        SimConfig cfg{opt.m == 0 ? profile.size() : opt.m, opt.nsim, opt.seed};
        null = estimate_cdf(profile, cfg);
    }
    const auto sets = load_gmt_file(opt.gmt_file);
    auto summary = test_gene_sets(profile, null, sets, opt);
    with_output(opt.out_report, [&](std::ostream& out) { write_report(out, summary.rows); });
    if (summary.skipped_empty > 0)
        log << "warning: " << summary.skipped_empty
            << " gene set(s) share no gene with the profile and were skipped\n";
    if (summary.skipped_size > 0)
        log << "warning: " << summary.skipped_size
            << " gene set(s) outside the size filter were skipped\n";
    return summary;
}

std::vector<ValidationRow> run_validate(const ValidateOptions& opt, std::ostream& log) {
    const auto profile = opt.weights_file.empty()
                             ? rank_profile(opt.genes)
                             : load_profile(opt.weights_file, opt.rank_transform);
    NullCdf null;
    if (opt.cache_file) {
        null = load_null_cdf(*opt.cache_file);
        if (null.weight_fingerprint != profile.fingerprint()) throw CdfProfileMismatch();
    } else {
        SimConfig cfg{opt.m == 0 ? profile.size() : opt.m, opt.nsim, opt.seed};
        null = estimate_cdf(profile, cfg);
    }
    auto grid = opt.n_grid;
    if (grid.empty())
        for (std::size_t n = 5; n <= 1100; n += 5) grid.push_back(n);
    const auto rows = convergence_scan(profile, null, grid, opt.reps, opt.sampling, opt.seed);
    with_output(opt.out_csv, [&](std::ostream& out) { write_validation_csv(out, rows); });
    log << "validated " << rows.size() << " gene-set sizes, " << opt.reps << " reps each ("
        << to_string(opt.sampling) << ")\n";
    return rows;
}

} // namespace wks
