#pragma once

#include "wks/gmt.hpp"
#include "wks/limiting_cdf.hpp"
#include "wks/statistic.hpp"
#include "wks/validation.hpp"
#include "wks/weights.hpp"

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace wks {

inline constexpr std::size_t default_nperm = 10000;
inline constexpr std::size_t default_test_nsim = 100000;
inline constexpr std::size_t default_validate_nsim = 20000;
inline constexpr std::size_t default_reps = 1500;

/// Loads the weights file, rank-transforming first when asked.
WeightProfile load_profile(const std::string& weights_file, bool rank);

struct EstimateOptions {
    std::string weights_file;
    bool rank_transform = false;
    std::size_t m = 0; ///< 0 means m = N
    std::size_t nsim = default_test_nsim;
    std::uint64_t seed = 1;
    std::string out_cache;
};

/// Estimates the null CDF, writes the cache and prints a summary to `log`.
NullCdf run_estimate(const EstimateOptions& opt, std::ostream& log);

struct TestOptions {
    std::string weights_file;
    std::string gmt_file;
    std::optional<std::string> cache_file; ///< inline simulation when absent
    bool rank_transform = false;
    std::size_t m = 0;
    std::size_t nsim = default_test_nsim;
    std::size_t nperm = default_nperm;
    std::uint64_t seed = 1;
    Sidedness side = Sidedness::two;
    PermCorrection correction = PermCorrection::add_one;
    std::size_t min_set_size = 1;
    std::optional<std::size_t> max_set_size;
    std::string out_report; ///< "-" for stdout
    std::optional<std::string> out_steps;
};

struct ReportRow {
    std::string name;
    std::size_t n_resolved = 0;
    std::size_t dropped = 0;
    double t_star = 0.0;
    double p_wks = 1.0;
    double p_wks_by = 1.0;
    double t_classic = 0.0;
    double p_gsea = 1.0;
    double p_gsea_by = 1.0;
};

struct TestSummary {
    std::vector<ReportRow> rows;
    std::size_t skipped_empty = 0;
    std::size_t skipped_size = 0;
};

/// Per-set permutation seed: depends only on the global seed and the set name.
std::uint64_t set_seed(std::uint64_t seed, const std::string& name);

/// Scores every set against the profile and null, then BY-adjusts both
/// p-value columns over the tested sets. Rows follow input order.
TestSummary test_gene_sets(const WeightProfile& profile, const NullCdf& null,
                           const std::vector<GeneSet>& sets, const TestOptions& opt);

/// Header: name n_resolved dropped t_star p_wks p_wks_BY t_classic p_gsea p_gsea_BY
void write_report(std::ostream& out, const std::vector<ReportRow>& rows);

/// Long-format step functions: `set,t,S_n,G,identity`, one row per jump plus t = 0.
void write_steps(std::ostream& out, const WeightProfile& profile,
                 const std::vector<ResolvedGeneSet>& sets);

TestSummary run_test(const TestOptions& opt, std::ostream& log);

struct ValidateOptions {
    std::string weights_file;         ///< empty: synthetic rank profile of `genes` genes
    std::size_t genes = 18638;
    bool rank_transform = false;
    std::optional<std::string> cache_file;
    std::size_t m = 0;
    std::size_t nsim = default_validate_nsim;
    std::vector<std::size_t> n_grid;
    std::size_t reps = default_reps;
    Sampling sampling = Sampling::iid_uniform;
    std::uint64_t seed = 1;
    std::string out_csv; ///< "-" for stdout
};

std::vector<ValidationRow> run_validate(const ValidateOptions& opt, std::ostream& log);

} // namespace wks
