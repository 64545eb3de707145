#pragma once

#include "wks/limiting_cdf.hpp"
#include "wks/rng.hpp"
#include "wks/weights.hpp"

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace wks {

enum class Sampling { iid_uniform, without_replacement };

std::string to_string(Sampling s);
/// Accepts "iid", "iid_uniform", "wor", "without_replacement".
Sampling parse_sampling(const std::string& name);

struct ValidationRow {
    std::size_t n = 0;
    std::size_t reps = 0;
    Sampling sampling = Sampling::iid_uniform;
    double ks_stat = 0.0;
    double ks_pvalue = 1.0;
};

struct KsResult {
    double stat = 0.0;
    double pvalue = 1.0;
};

/// T*_n for one gene set drawn under H0.
///
/// iid_uniform draws n points on [0,1] and looks weights up in the gene cell
/// containing each point; without_replacement draws n distinct ranks.
double simulate_null_statistic(const WeightProfile& profile, std::size_t n, Sampling sampling,
                               Xoshiro256& rng);

/// `reps` null statistics; replicate r of size n has its own substream keyed
/// by (seed, n, r), so results do not depend on thread count.
std::vector<double> null_statistic_sample(const WeightProfile& profile, std::size_t n,
                                          std::size_t reps, Sampling sampling,
                                          std::uint64_t seed);

/// One-sample KS of `sample` against the step CDF of the null maxima, with
/// the asymptotic p-value 1 - K(sqrt(reps) D).
KsResult ks_goodness_of_fit(std::span<const double> sample, const NullCdf& null);

struct TwoSampleKs {
    double d = 0.0;
    double d_plus = 0.0;  ///< sup (F_a - F_b)
    double d_minus = 0.0; ///< sup (F_b - F_a)
    double pvalue = 1.0;        ///< two-sided, asymptotic
    double pvalue_plus = 1.0;   ///< one-sided for d_plus, exp(-2 m n/(m+n) d_plus^2)
};

TwoSampleKs two_sample_ks(std::span<const double> a, std::span<const double> b);

std::vector<ValidationRow> convergence_scan(const WeightProfile& profile, const NullCdf& null,
                                            std::span<const std::size_t> n_grid,
                                            std::size_t reps, Sampling sampling,
                                            std::uint64_t seed);

/// Header `n,reps,sampling,ks_stat,ks_pvalue,neglog10_p`.
void write_validation_csv(std::ostream& out, std::span<const ValidationRow> rows);

} // namespace wks
