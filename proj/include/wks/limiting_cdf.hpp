#pragma once

#include "wks/rng.hpp"
#include "wks/weights.hpp"

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace wks {

struct SimConfig {
    std::size_t m = 0;      ///< discretization intervals, grid t_i = i/m
    std::size_t nsim = 0;   ///< number of trajectories
    std::uint64_t seed = 0;

    /// Throws InvalidParameter unless m >= 2 and nsim >= 100.
    void validate() const;
};

enum class Execution { serial, parallel };

/// Monte-Carlo sample of the limiting law of the re-centered statistic.
///
/// `maxima` holds sup_t |Z(t)| per trajectory and `upper` holds sup_t Z(t),
/// both sorted ascending. Z and -Z have the same law, so `upper` also serves
/// as the null of -inf_t Z(t) for the downward one-sided test.
struct NullCdf {
    std::vector<double> maxima;
    std::vector<double> upper;
    SimConfig config;
    std::uint64_t weight_fingerprint = 0;
};

struct TrajectoryMax {
    double abs_max = 0.0;
    double upper = 0.0;
};

/// Precomputed per-grid data shared by every trajectory of one estimate.
///
/// g is rescaled so that its grid mean is 1 (G(1) = 1 in the discrete sense)
/// and multiplied by sqrt(1/m), the standard deviation of a Brownian increment.
class TrajectoryKernel {
public:
    explicit TrajectoryKernel(std::span<const double> g_at_grid);

    std::size_t m() const { return scaled_g_.size(); }
    bool degenerate() const { return degenerate_; }

    /// Draws m Gaussian increments from `rng` and returns the extrema of the
    /// discretized bridge Z(t_j) = P_j - G(t_j) P_m, j = 0..m. `scratch` must
    /// hold at least m doubles.
    TrajectoryMax simulate(Xoshiro256& rng, std::span<double> scratch) const;

    /// Full trajectory Z(t_0), ..., Z(t_m) (m+1 values), same draws as simulate().
    std::vector<double> trajectory(Xoshiro256& rng) const;

private:
    std::vector<double> scaled_g_;
    std::vector<double> cumulative_; // G(t_j), j = 1..m, normalized so the last is 1
    bool degenerate_ = false;
};

/// One trajectory's sup |Z| for a weight function sampled at t_i = i/m.
double simulate_max(std::span<const double> g_at_grid, Xoshiro256& rng);

/// g(t_i), i = 0..m-1, taken from the profile's density (w[i]*N when m = N).
std::vector<double> profile_grid(const WeightProfile& profile, std::size_t m);

/// Runs nsim trajectories; trajectory j draws from substream (seed, j), so the
/// serial and parallel paths return identical samples.
NullCdf estimate_cdf(std::span<const double> g_at_grid, const SimConfig& config,
                     std::uint64_t fingerprint, Execution exec = Execution::parallel);
NullCdf estimate_cdf(const WeightProfile& profile, SimConfig config,
                     Execution exec = Execution::parallel);
NullCdf estimate_cdf(const AnalyticWeight& g, const SimConfig& config,
                     Execution exec = Execution::parallel);

std::uint64_t analytic_fingerprint(const AnalyticWeight& g);

/// Fraction of the sample <= x.
double cdf_point(std::span<const double> sorted_sample, double x);
double cdf_point(const NullCdf& null, double x);

/// One-sided 95% Clopper-Pearson lower bound of a binomial proportion.
double clopper_pearson_lower(std::size_t successes, std::size_t trials, double alpha = 0.05);

/// 1 - (95% lower confidence bound of F(x)): an upper bound for the p-value.
double conservative_pvalue(std::span<const double> sorted_sample, double x);
double conservative_pvalue(const NullCdf& null, double x);

/// Empirical quantile (type 1, inverse of cdf_point).
double quantile(std::span<const double> sorted_sample, double q);

/// Limiting Kolmogorov distribution K(x) = P(sup |B(t)| <= x), B a Brownian bridge.
double kolmogorov_cdf(double x);

void write_null_cdf(std::ostream& out, const NullCdf& null);
NullCdf read_null_cdf(std::istream& in);
void save_null_cdf(const std::string& path, const NullCdf& null);
NullCdf load_null_cdf(const std::string& path);

} // namespace wks
