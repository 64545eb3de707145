#pragma once

#include "wks/limiting_cdf.hpp"
#include "wks/weights.hpp"

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace wks {

/// A gene set reduced to the genes present in a profile.
struct ResolvedGeneSet {
    std::string name;
    std::string description;
    std::vector<std::size_t> positions; ///< strictly increasing ranks into the profile
    std::size_t dropped = 0;            ///< absent members plus duplicates

    std::size_t n() const { return positions.size(); }
};

/// S_n(t): right-continuous, 0 before the first jump.
struct StepFunction {
    std::vector<double> jump_ts;
    std::vector<double> values_after;
    double value_before_first = 0.0;
};

struct SupResult {
    double sup_abs = 0.0;
    double sup_signed = 0.0; ///< sup_t (f - h), >= 0 since f = h at t = 0
    double inf_signed = 0.0; ///< inf_t (f - h), <= 0
};

struct ScorePair {
    double t_star = 0.0;
    double t_classic = 0.0;
    double sup_signed = 0.0;
    double inf_signed = 0.0;
    std::size_t n = 0;
};

enum class Sidedness { two, up, down };
enum class PermCorrection { raw, add_one };

ResolvedGeneSet resolve(const std::string& name, const std::vector<std::string>& members,
                        const WeightProfile& profile, std::string description = {});

StepFunction cumulative_proportion(const ResolvedGeneSet& set, const WeightProfile& profile);

/// Exact sup of |f - h| for a step function f and a continuous non-decreasing h
/// given at the jumps of f. On [x_{i-1}, x_i) f is flat and h rises, so the
/// extremes are f(x_i) - h(x_i) and f(x_{i-1}) - h(x_i).
SupResult sup_step_vs_continuous(const StepFunction& f, std::span<const double> h_at_jumps);

namespace detail {

/// Scan of the jump-point formula without materializing the step function.
/// `height(i)` is the (unnormalized) jump of f at its i-th jump, `h(i)` the
/// continuous function at that jump; f is normalized by the sum of heights.
template <class Height, class H>
SupResult sup_scan(std::size_t jumps, double total, Height height, H h) {
    SupResult r;
    double before = 0.0;
    double running = 0.0;
    for (std::size_t i = 0; i < jumps; ++i) {
        running += height(i);
        const double after = running / total;
        const double hi = h(i);
        r.sup_signed = std::max(r.sup_signed, after - hi);
        r.inf_signed = std::min(r.inf_signed, before - hi);
        before = after;
    }
    r.sup_abs = std::max(r.sup_signed, -r.inf_signed);
    return r;
}

/// sup |S_n - G| (wks = true) or sup |S_n - t| for sorted positions.
SupResult discrete_sup(std::span<const std::size_t> positions, const WeightProfile& profile,
                       bool wks);

} // namespace detail

/// T*_n = sqrt(n) sup |S_n - G| with signed extrema.
ScorePair wks_statistic(const ResolvedGeneSet& set, const WeightProfile& profile);

/// T_n = sup |S_n(t) - t|.
double gsea_statistic(const ResolvedGeneSet& set, const WeightProfile& profile);

/// Both statistics for one set.
ScorePair score(const ResolvedGeneSet& set, const WeightProfile& profile);

/// Monte-Carlo p-value of T_n over `nperm` uniform n-subsets of the N ranks.
double gsea_pvalue(std::size_t n, const WeightProfile& profile, double observed,
                   std::size_t nperm, std::uint64_t seed,
                   PermCorrection correction = PermCorrection::add_one);

/// Statistic used for `side`: two-sided T*_n, or sqrt(n) times the signed sup/inf.
double sided_statistic(const ScorePair& score, Sidedness side);

/// Conservative WKS p-value; the null must come from the same profile.
double wks_pvalue(const ScorePair& score, const NullCdf& null, const WeightProfile& profile,
                  Sidedness side = Sidedness::two);

/// Draws a uniform n-subset of {0..N-1} (Floyd's algorithm), sorted ascending.
/// `stamp` has N entries and `generation` a fresh value per call.
void sample_subset(Xoshiro256& rng, std::size_t n, std::size_t N,
                   std::vector<std::uint32_t>& stamp, std::uint32_t generation,
                   std::vector<std::size_t>& out);

} // namespace wks
