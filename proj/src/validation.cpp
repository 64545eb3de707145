#include "wks/validation.hpp"

#include "wks/errors.hpp"
#include "wks/statistic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

namespace wks {

std::string to_string(Sampling s) {
    return s == Sampling::iid_uniform ? "iid_uniform" : "without_replacement";
}

Sampling parse_sampling(const std::string& name) {
    if (name == "iid" || name == "iid_uniform") return Sampling::iid_uniform;
    if (name == "wor" || name == "without_replacement") return Sampling::without_replacement;
    throw InvalidParameter("unknown sampling model '" + name + "'");
}

namespace {

double iid_statistic(const WeightProfile& profile, std::size_t n, Xoshiro256& rng,
                     std::vector<double>& points) {
    points.resize(n);
    for (auto& u : points) u = rng.uniform();
    std::sort(points.begin(), points.end());
    const auto& w = profile.w();
    double total = 0.0;
    for (double u : points) total += w[profile.gene_at_t(u)];
    const auto r = detail::sup_scan(
        n, total, [&](std::size_t i) { return w[profile.gene_at_t(points[i])]; },
        [&](std::size_t i) { return profile.cumulative_at_t(points[i]); });
    return std::sqrt(static_cast<double>(n)) * r.sup_abs;
}

} // namespace

double simulate_null_statistic(const WeightProfile& profile, std::size_t n, Sampling sampling,
                               Xoshiro256& rng) {
    if (n == 0) throw InvalidSetSize(n, profile.size());
    if (sampling == Sampling::iid_uniform) {
        std::vector<double> points;
        return iid_statistic(profile, n, rng, points);
    }
    if (n > profile.size()) throw InvalidSetSize(n, profile.size());
    std::vector<std::uint32_t> stamp(profile.size(), 0);
    std::vector<std::size_t> positions;
    sample_subset(rng, n, profile.size(), stamp, 1, positions);
    return std::sqrt(static_cast<double>(n)) *
           detail::discrete_sup(positions, profile, true).sup_abs;
}

std::vector<double> null_statistic_sample(const WeightProfile& profile, std::size_t n,
                                          std::size_t reps, Sampling sampling,
                                          std::uint64_t seed) {
    if (n == 0 || (sampling == Sampling::without_replacement && n > profile.size()))
        throw InvalidSetSize(n, profile.size());
    std::vector<double> out(reps);
    const auto total = static_cast<std::int64_t>(reps);
    // Separate key space from the trajectory streams, which use (seed, j, 0).
    const std::uint64_t base = mix_key(seed, 0x76616c6964617465ULL);
#pragma omp parallel
    {
        std::vector<std::uint32_t> stamp;
        std::vector<std::size_t> positions;
        std::vector<double> points;
        if (sampling == Sampling::without_replacement) stamp.assign(profile.size(), 0);
        std::uint32_t generation = 0;
#pragma omp for schedule(static)
        for (std::int64_t r = 0; r < total; ++r) {
            auto rng = Xoshiro256::substream(base, n, static_cast<std::uint64_t>(r));
            if (sampling == Sampling::iid_uniform) {
                out[r] = iid_statistic(profile, n, rng, points);
            } else {
                sample_subset(rng, n, profile.size(), stamp, ++generation, positions);
                out[r] = std::sqrt(static_cast<double>(n)) *
                         detail::discrete_sup(positions, profile, true).sup_abs;
            }
        }
    }
    return out;
}

KsResult ks_goodness_of_fit(std::span<const double> sample, const NullCdf& null) {
    if (sample.empty()) throw InvalidParameter("goodness-of-fit needs a non-empty sample");
    std::vector<double> xs(sample.begin(), sample.end());
    std::sort(xs.begin(), xs.end());
    const auto& ref = null.maxima;
    const double reps = static_cast<double>(xs.size());
    const double nref = static_cast<double>(ref.size());
    auto ref_at = [&](double x) {
        return static_cast<double>(std::upper_bound(ref.begin(), ref.end(), x) - ref.begin()) / nref;
    };
    auto ref_before = [&](double x) {
        return static_cast<double>(std::lower_bound(ref.begin(), ref.end(), x) - ref.begin()) / nref;
    };

    // Both CDFs are steps: on [x_i, x_{i+1}) the sample CDF is flat while the
    // reference climbs from F(x_i) to F(x_{i+1}-).
    double d = ref_before(xs.front());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i + 1 < xs.size() && xs[i + 1] == xs[i]) continue;
        const double f = static_cast<double>(i + 1) / reps;
        d = std::max(d, std::abs(f - ref_at(xs[i])));
        const double next_ref =
            i + 1 < xs.size() ? ref_before(xs[i + 1]) : 1.0;
        d = std::max(d, std::abs(f - next_ref));
    }
    return {d, 1.0 - kolmogorov_cdf(std::sqrt(reps) * d)};
}

TwoSampleKs two_sample_ks(std::span<const double> a, std::span<const double> b) {
    if (a.empty() || b.empty()) throw InvalidParameter("two-sample KS needs non-empty samples");
    std::vector<double> xa(a.begin(), a.end()), xb(b.begin(), b.end());
    std::sort(xa.begin(), xa.end());
    std::sort(xb.begin(), xb.end());
    const double na = static_cast<double>(xa.size());
    const double nb = static_cast<double>(xb.size());
    TwoSampleKs r;
    std::size_t i = 0, j = 0;
    while (i < xa.size() || j < xb.size()) {
        double x;
        if (j == xb.size() || (i < xa.size() && xa[i] <= xb[j])) x = xa[i];
        else x = xb[j];
        while (i < xa.size() && xa[i] == x) ++i;
        while (j < xb.size() && xb[j] == x) ++j;
        const double diff = static_cast<double>(i) / na - static_cast<double>(j) / nb;
        r.d_plus = std::max(r.d_plus, diff);
        r.d_minus = std::max(r.d_minus, -diff);
    }
    r.d = std::max(r.d_plus, r.d_minus);
    const double en = na * nb / (na + nb);
    r.pvalue = 1.0 - kolmogorov_cdf(std::sqrt(en) * r.d);
    r.pvalue_plus = std::min(1.0, std::exp(-2.0 * en * r.d_plus * r.d_plus));
    return r;
}

std::vector<ValidationRow> convergence_scan(const WeightProfile& profile, const NullCdf& null,
                                            std::span<const std::size_t> n_grid,
                                            std::size_t reps, Sampling sampling,
                                            std::uint64_t seed) {
    if (n_grid.empty()) throw InvalidParameter("empty gene-set size grid");
    if (reps < 100) throw InvalidParameter("reps must be >= 100");
    std::vector<ValidationRow> rows;
    rows.reserve(n_grid.size());
    for (std::size_t n : n_grid) {
        const auto sample = null_statistic_sample(profile, n, reps, sampling, seed);
        const auto fit = ks_goodness_of_fit(sample, null);
        rows.push_back({n, reps, sampling, fit.stat, fit.pvalue});
    }
    return rows;
}

void write_validation_csv(std::ostream& out, std::span<const ValidationRow> rows) {
    out << "n,reps,sampling,ks_stat,ks_pvalue,neglog10_p\n";
    out.precision(10);
    for (const auto& r : rows) {
        const double p = std::max(r.ks_pvalue, std::numeric_limits<double>::min());
        out << r.n << ',' << r.reps << ',' << to_string(r.sampling) << ',' << r.ks_stat << ','
            << r.ks_pvalue << ',' << -std::log10(p) << '\n';
    }
}

} // namespace wks
