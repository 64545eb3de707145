#include "wks/statistic.hpp"

#include "wks/errors.hpp"

#include <cmath>

namespace wks {

ResolvedGeneSet resolve(const std::string& name, const std::vector<std::string>& members,
                        const WeightProfile& profile, std::string description) {
    ResolvedGeneSet set;
    set.name = name;
    set.description = std::move(description);
    set.positions.reserve(members.size());
    for (const auto& gene : members) {
        const auto idx = profile.index_of(gene);
        if (idx < 0) {
            ++set.dropped;
            continue;
        }
        set.positions.push_back(static_cast<std::size_t>(idx));
    }
    std::sort(set.positions.begin(), set.positions.end());
    const auto last = std::unique(set.positions.begin(), set.positions.end());
    set.dropped += static_cast<std::size_t>(set.positions.end() - last);
    set.positions.erase(last, set.positions.end());
    if (set.positions.empty()) throw EmptyIntersection(name);
    return set;
}

StepFunction cumulative_proportion(const ResolvedGeneSet& set, const WeightProfile& profile) {
    const auto& w = profile.w();
    const double big_n = static_cast<double>(profile.size());
    double total = 0.0;
    for (auto p : set.positions) total += w[p];
    StepFunction f;
    f.jump_ts.reserve(set.n());
    f.values_after.reserve(set.n());
    double running = 0.0;
    for (auto p : set.positions) {
        running += w[p];
        f.jump_ts.push_back(static_cast<double>(p + 1) / big_n);
        f.values_after.push_back(running / total);
    }
    if (!f.values_after.empty()) f.values_after.back() = 1.0;
    return f;
}

SupResult sup_step_vs_continuous(const StepFunction& f, std::span<const double> h_at_jumps) {
    if (h_at_jumps.size() != f.jump_ts.size())
        throw InvalidParameter("h must be given at every jump of f");
    SupResult r;
    double before = f.value_before_first;
    for (std::size_t i = 0; i < f.jump_ts.size(); ++i) {
        const double after = f.values_after[i];
        r.sup_signed = std::max(r.sup_signed, after - h_at_jumps[i]);
        r.inf_signed = std::min(r.inf_signed, before - h_at_jumps[i]);
        before = after;
    }
    r.sup_abs = std::max(r.sup_signed, -r.inf_signed);
    return r;
}

namespace detail {

SupResult discrete_sup(std::span<const std::size_t> positions, const WeightProfile& profile,
                       bool wks) {
    const auto& w = profile.w();
    double total = 0.0;
    for (auto p : positions) total += w[p];
    auto height = [&](std::size_t i) { return w[positions[i]]; };
    if (wks) {
        const auto& cum = profile.cumulative();
        return sup_scan(positions.size(), total, height,
                        [&](std::size_t i) { return cum[positions[i]]; });
    }
    const double big_n = static_cast<double>(profile.size());
    return sup_scan(positions.size(), total, height, [&](std::size_t i) {
        return static_cast<double>(positions[i] + 1) / big_n;
    });
}

} // namespace detail

ScorePair wks_statistic(const ResolvedGeneSet& set, const WeightProfile& profile) {
    const auto r = detail::discrete_sup(set.positions, profile, true);
    ScorePair s;
    s.n = set.n();
    s.sup_signed = r.sup_signed;
    s.inf_signed = r.inf_signed;
    s.t_star = std::sqrt(static_cast<double>(s.n)) * r.sup_abs;
    return s;
}

double gsea_statistic(const ResolvedGeneSet& set, const WeightProfile& profile) {
    return detail::discrete_sup(set.positions, profile, false).sup_abs;
}

ScorePair score(const ResolvedGeneSet& set, const WeightProfile& profile) {
    auto s = wks_statistic(set, profile);
    s.t_classic = gsea_statistic(set, profile);
    return s;
}

void sample_subset(Xoshiro256& rng, std::size_t n, std::size_t N,
                   std::vector<std::uint32_t>& stamp, std::uint32_t generation,
                   std::vector<std::size_t>& out) {
    out.clear();
    for (std::size_t j = N - n; j < N; ++j) {
        auto t = static_cast<std::size_t>(rng.below(j + 1));
        if (stamp[t] == generation) t = j;
        stamp[t] = generation;
        out.push_back(t);
    }
    std::sort(out.begin(), out.end());
}

namespace {
constexpr double tie_tolerance = 1e-12;
}

double gsea_pvalue(std::size_t n, const WeightProfile& profile, double observed,
                   std::size_t nperm, std::uint64_t seed, PermCorrection correction) {
    const std::size_t big_n = profile.size();
    if (n == 0 || n > big_n) throw InvalidSetSize(n, big_n);
    if (nperm < 100) throw InvalidParameter("nperm must be >= 100");

    Xoshiro256 rng(seed);
    std::vector<std::uint32_t> stamp(big_n, 0);
    std::vector<std::size_t> positions;
    positions.reserve(n);
    std::size_t count = 0;
    for (std::size_t k = 0; k < nperm; ++k) {
        sample_subset(rng, n, big_n, stamp, static_cast<std::uint32_t>(k + 1), positions);
        // Equal statistics reached through different sets may differ in the last ulps.
        if (detail::discrete_sup(positions, profile, false).sup_abs >= observed - tie_tolerance)
            ++count;
    }
    if (correction == PermCorrection::add_one)
        return static_cast<double>(count + 1) / static_cast<double>(nperm + 1);
    return static_cast<double>(count) / static_cast<double>(nperm);
}

double sided_statistic(const ScorePair& s, Sidedness side) {
    const double root_n = std::sqrt(static_cast<double>(s.n));
    switch (side) {
    case Sidedness::up:
        return root_n * s.sup_signed;
    case Sidedness::down:
        return -root_n * s.inf_signed;
    case Sidedness::two:
        break;
    }
    return s.t_star;
}

double wks_pvalue(const ScorePair& s, const NullCdf& null, const WeightProfile& profile,
                  Sidedness side) {
    if (null.weight_fingerprint != profile.fingerprint()) throw CdfProfileMismatch();
    const double x = sided_statistic(s, side);
    if (side == Sidedness::two) return conservative_pvalue(null.maxima, x);
    return conservative_pvalue(null.upper, x);
}

} // namespace wks
