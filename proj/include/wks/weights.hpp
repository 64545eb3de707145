#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <istream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace wks {

struct GeneWeight {
    std::string gene_id;
    double raw_weight = 0.0;
};

/// Genome-wide numeric data indexed by gene, in input order.
struct GeneVector {
    std::vector<GeneWeight> entries;
    std::string source_label;
};

/// Parses `gene_id<TAB>value` lines. `#` lines and blank lines are skipped,
/// CRLF endings are accepted. Line numbers in errors are 1-based.
GeneVector load_weight_vector(std::istream& in, std::string source_label = {});
GeneVector load_weight_vector_file(const std::string& path);

/// Replaces raw weights by ranks: largest gets N, smallest gets 1. Ties go to
/// the earlier entry. Output keeps input order.
GeneVector rank_transform(const GeneVector& v);

/// Ranked, normalized weights g(i/N) and their cumulative G.
///
/// Gene `i` (0-based) sits at t = (i+1)/N. Between grid points G is taken as
/// the linear interpolation of its prefix sums, i.e. g is the step density
/// w[i]*N on ((i)/N, (i+1)/N].
class WeightProfile {
public:
    WeightProfile() = default;

    std::size_t size() const { return w_.size(); }
    const std::vector<std::string>& gene_ids() const { return gene_ids_; }
    const std::vector<double>& w() const { return w_; }
    const std::vector<double>& cumulative() const { return cum_; }

    /// Rank position (0-based) of a gene, or -1 when absent.
    std::ptrdiff_t index_of(const std::string& gene_id) const;

    /// G at the right end of gene `i`'s cell, i.e. G((i+1)/N).
    double cumulative_at(std::size_t i) const { return cum_[i]; }

    /// G(t) for arbitrary t in [0,1], linear between grid points.
    double cumulative_at_t(double t) const;

    /// Weight of the gene whose cell contains t (index ceil(t*N) - 1, clamped).
    std::size_t gene_at_t(double t) const;

    /// Density values g(t_i) = w[i]*N, the input to the trajectory simulator.
    std::vector<double> density() const;

    /// 64-bit FNV-1a hash of the bit patterns of w.
    std::uint64_t fingerprint() const;

    friend WeightProfile build_profile(const GeneVector& v);

private:
    std::vector<std::string> gene_ids_;
    std::vector<double> w_;
    std::vector<double> cum_;
    std::unordered_map<std::string, std::size_t> index_;
};

/// Sorts by descending raw weight (stable), normalizes to unit sum and
/// accumulates. Throws NonPositiveWeight on any weight <= 0.
WeightProfile build_profile(const GeneVector& v);

/// Profile with weights N, N-1, ..., 1 under synthetic gene ids "g0".."g{N-1}";
/// the discrete counterpart of g1(x) = 2(1-x).
WeightProfile rank_profile(std::size_t n_genes);

/// Profile with all weights equal.
WeightProfile constant_profile(std::size_t n_genes);

enum class WeightKind { constant, rank_linear, gk_family };

/// Closed-form weight function on [0,1] integrating to 1.
class AnalyticWeight {
public:
    /// gk_family with k = 0 is the constant function; rank_linear is g1.
    static AnalyticWeight make(WeightKind kind, int k = 0);

    WeightKind kind() const { return kind_; }
    int k() const { return k_; }
    double operator()(double t) const;

    /// g evaluated at t_i = i/m, i = 0..m-1 (left endpoints of the grid cells).
    std::vector<double> at_grid(std::size_t m) const;

    /// Trapezoid integral over [0,1] after the substitution x = u^k.
    double integral(std::size_t points) const;

    std::string label() const;

private:
    AnalyticWeight(WeightKind kind, int k) : kind_(kind), k_(k) {}
    WeightKind kind_;
    int k_;
};

/// Trapezoid rule with `points` nodes on [0,1].
double integrate_unit(const std::function<double(double)>& f, std::size_t points);

} // namespace wks
