#include "wks/limiting_cdf.hpp"

#include "wks/errors.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <numbers>
#include <numeric>

#include <boost/math/special_functions/beta.hpp>
#include <boost/random/normal_distribution.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace wks {

void SimConfig::validate() const {
    if (m < 2) throw InvalidParameter("discretization m must be >= 2");
    if (nsim < 100) throw InvalidParameter("nsim must be >= 100");
}

TrajectoryKernel::TrajectoryKernel(std::span<const double> g_at_grid)
    : scaled_g_(g_at_grid.begin(), g_at_grid.end()), cumulative_(g_at_grid.size()) {
    const std::size_t m = g_at_grid.size();
    if (m == 0) throw InvalidParameter("empty weight grid");
    const double total = std::accumulate(g_at_grid.begin(), g_at_grid.end(), 0.0);
    if (!(total > 0.0)) {
        degenerate_ = true;
        std::fill(scaled_g_.begin(), scaled_g_.end(), 0.0);
        std::fill(cumulative_.begin(), cumulative_.end(), 0.0);
        return;
    }
    double running = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        running += g_at_grid[i];
        cumulative_[i] = running / total;
    }
    cumulative_.back() = 1.0;
    const double scale = static_cast<double>(m) / total / std::sqrt(static_cast<double>(m));
    for (auto& x : scaled_g_) x *= scale;
}

TrajectoryMax TrajectoryKernel::simulate(Xoshiro256& rng, std::span<double> scratch) const {
    const std::size_t m = scaled_g_.size();
    boost::random::normal_distribution<double> normal;
    double partial = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        partial += scaled_g_[i] * normal(rng);
        scratch[i] = partial;
    }
    const double total = partial;
    TrajectoryMax r;
    for (std::size_t j = 0; j < m; ++j) {
        const double z = scratch[j] - cumulative_[j] * total;
        r.upper = std::max(r.upper, z);
        r.abs_max = std::max(r.abs_max, std::abs(z));
    }
    return r;
}

std::vector<double> TrajectoryKernel::trajectory(Xoshiro256& rng) const {
    const std::size_t m = scaled_g_.size();
    std::vector<double> z(m + 1, 0.0);
    boost::random::normal_distribution<double> normal;
    double partial = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        partial += scaled_g_[i] * normal(rng);
        z[i + 1] = partial;
    }
    for (std::size_t j = 1; j <= m; ++j) z[j] -= cumulative_[j - 1] * partial;
    return z;
}

double simulate_max(std::span<const double> g_at_grid, Xoshiro256& rng) {
    const TrajectoryKernel kernel(g_at_grid);
    std::vector<double> scratch(kernel.m());
    return kernel.simulate(rng, scratch).abs_max;
}

std::vector<double> profile_grid(const WeightProfile& profile, std::size_t m) {
    const std::size_t n = profile.size();
    const auto& w = profile.w();
    std::vector<double> g(m);
    const double scale = static_cast<double>(n);
    for (std::size_t i = 0; i < m; ++i) {
        // Gene whose cell ((k)/N, (k+1)/N] holds the left grid point i/m.
        const std::size_t k = std::min(i * n / m, n - 1);
        g[i] = w[k] * scale;
    }
    return g;
}

NullCdf estimate_cdf(std::span<const double> g_at_grid, const SimConfig& config,
                     std::uint64_t fingerprint, Execution exec) {
    config.validate();
    if (g_at_grid.size() != config.m)
        throw InvalidParameter("weight grid length differs from m");

    const TrajectoryKernel kernel(g_at_grid);
    const auto nsim = static_cast<std::int64_t>(config.nsim);
    NullCdf out;
    out.config = config;
    out.weight_fingerprint = fingerprint;
    out.maxima.resize(config.nsim);
    out.upper.resize(config.nsim);

    if (exec == Execution::serial) {
        std::vector<double> scratch(config.m);
        for (std::int64_t j = 0; j < nsim; ++j) {
            auto rng = Xoshiro256::substream(config.seed, static_cast<std::uint64_t>(j));
            const auto r = kernel.simulate(rng, scratch);
            out.maxima[j] = r.abs_max;
            out.upper[j] = r.upper;
        }
    } else {
#pragma omp parallel
        {
            std::vector<double> scratch(config.m);
#pragma omp for schedule(static)
            for (std::int64_t j = 0; j < nsim; ++j) {
                auto rng = Xoshiro256::substream(config.seed, static_cast<std::uint64_t>(j));
                const auto r = kernel.simulate(rng, scratch);
                out.maxima[j] = r.abs_max;
                out.upper[j] = r.upper;
            }
        }
    }
    std::sort(out.maxima.begin(), out.maxima.end());
    std::sort(out.upper.begin(), out.upper.end());
    return out;
}

NullCdf estimate_cdf(const WeightProfile& profile, SimConfig config, Execution exec) {
    if (config.m == 0) config.m = profile.size();
    const auto g = profile_grid(profile, config.m);
    return estimate_cdf(g, config, profile.fingerprint(), exec);
}

std::uint64_t analytic_fingerprint(const AnalyticWeight& g) {
    return hash_name("analytic:" + g.label());
}

NullCdf estimate_cdf(const AnalyticWeight& g, const SimConfig& config, Execution exec) {
    config.validate();
    return estimate_cdf(g.at_grid(config.m), config, analytic_fingerprint(g), exec);
}

double cdf_point(std::span<const double> sorted_sample, double x) {
    if (sorted_sample.empty()) return 0.0;
    const auto it = std::upper_bound(sorted_sample.begin(), sorted_sample.end(), x);
    return static_cast<double>(it - sorted_sample.begin()) /
           static_cast<double>(sorted_sample.size());
}

double cdf_point(const NullCdf& null, double x) { return cdf_point(null.maxima, x); }

double clopper_pearson_lower(std::size_t successes, std::size_t trials, double alpha) {
    if (trials == 0) throw InvalidParameter("Clopper-Pearson bound needs trials > 0");
    if (successes == 0) return 0.0;
    if (successes == trials) return std::pow(alpha, 1.0 / static_cast<double>(trials));
    return boost::math::ibeta_inv(static_cast<double>(successes),
                                  static_cast<double>(trials - successes + 1), alpha);
}

double conservative_pvalue(std::span<const double> sorted_sample, double x) {
    const auto it = std::upper_bound(sorted_sample.begin(), sorted_sample.end(), x);
    const auto successes = static_cast<std::size_t>(it - sorted_sample.begin());
    return 1.0 - clopper_pearson_lower(successes, sorted_sample.size());
}

double conservative_pvalue(const NullCdf& null, double x) {
    return conservative_pvalue(null.maxima, x);
}

double quantile(std::span<const double> sorted_sample, double q) {
    if (sorted_sample.empty()) throw InvalidParameter("quantile of empty sample");
    const auto n = sorted_sample.size();
    const auto k = static_cast<std::size_t>(std::ceil(q * static_cast<double>(n)));
    return sorted_sample[std::clamp<std::size_t>(k, 1, n) - 1];
}

double kolmogorov_cdf(double x) {
    if (x <= 0.0) return 0.0;
    constexpr double tol = 1e-12;
    if (x < 1.18) {
        // Theta-function form; the alternating series converges slowly here.
        const double pi2 = std::numbers::pi * std::numbers::pi;
        double sum = 0.0;
        for (int k = 1; k < 1000; ++k) {
            const double j = 2.0 * k - 1.0;
            const double term = std::exp(-j * j * pi2 / (8.0 * x * x));
            sum += term;
            if (term < tol) break;
        }
        return std::sqrt(2.0 * std::numbers::pi) / x * sum;
    }
    double sum = 0.0;
    for (int k = 1; k < 1000; ++k) {
        const double term = std::exp(-2.0 * k * k * x * x);
        sum += (k % 2 == 1) ? term : -term;
        if (term < tol) break;
    }
    return std::clamp(1.0 - 2.0 * sum, 0.0, 1.0);
}

namespace {

constexpr char cache_magic[8] = {'W', 'K', 'S', 'N', 'U', 'L', 'L', '\0'};
constexpr std::uint32_t cache_version = 1;

void put_u64(std::ostream& out, std::uint64_t v) {
    char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xffU);
    out.write(b, 8);
}

std::uint64_t get_u64(std::istream& in) {
    unsigned char b[8];
    if (!in.read(reinterpret_cast<char*>(b), 8)) throw FormatError("truncated null CDF cache");
    std::uint64_t v = 0;
    for (int i = 7; i >= 0; --i) v = (v << 8) | b[i];
    return v;
}

} // namespace

// Layout, all integers little-endian:
//   magic[8] "WKSNULL\0", u64 version, u64 m, u64 nsim, u64 seed, u64 fingerprint,
//   nsim f64 maxima, nsim f64 upper (IEEE-754 bit patterns as u64).
void write_null_cdf(std::ostream& out, const NullCdf& null) {
    out.write(cache_magic, sizeof cache_magic);
    put_u64(out, cache_version);
    put_u64(out, null.config.m);
    put_u64(out, null.config.nsim);
    put_u64(out, null.config.seed);
    put_u64(out, null.weight_fingerprint);
    for (double x : null.maxima) put_u64(out, std::bit_cast<std::uint64_t>(x));
    for (double x : null.upper) put_u64(out, std::bit_cast<std::uint64_t>(x));
    if (!out) throw Error("failed writing null CDF cache");
}

NullCdf read_null_cdf(std::istream& in) {
    char magic[8];
    if (!in.read(magic, sizeof magic) || !std::equal(magic, magic + 8, cache_magic))
        throw FormatError("not a null CDF cache (bad magic)");
    const auto version = get_u64(in);
    if (version != cache_version)
        throw FormatError("unsupported null CDF cache version " + std::to_string(version));
    NullCdf null;
    null.config.m = get_u64(in);
    null.config.nsim = get_u64(in);
    null.config.seed = get_u64(in);
    null.weight_fingerprint = get_u64(in);
    if (null.config.nsim > (std::uint64_t{1} << 34)) throw FormatError("implausible nsim in cache");
    null.maxima.resize(null.config.nsim);
    null.upper.resize(null.config.nsim);
    for (auto& x : null.maxima) x = std::bit_cast<double>(get_u64(in));
    for (auto& x : null.upper) x = std::bit_cast<double>(get_u64(in));
    if (!std::is_sorted(null.maxima.begin(), null.maxima.end()) ||
        !std::is_sorted(null.upper.begin(), null.upper.end()))
        throw FormatError("null CDF cache sample is not sorted");
    return null;
}

void save_null_cdf(const std::string& path, const NullCdf& null) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open " + path + " for writing");
    write_null_cdf(out, null);
}

NullCdf load_null_cdf(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open null CDF cache " + path);
    return read_null_cdf(in);
}

} // namespace wks
