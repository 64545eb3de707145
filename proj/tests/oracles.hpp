#pragma once

// Reference computations used only by the tests. None of these call into the
// library's statistic or p-value code paths.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numeric>
#include <vector>

namespace wks::oracle {

/// sup_t |S_n(t) - h(t)| where S_n jumps at (pos+1)/N by w[pos]/sum and h is
/// the piecewise-linear function through (0,0) and ((i+1)/N, knots[i]).
/// Evaluated on a uniform grid of ~`grid_points` cells that contains every
/// (i+1)/N; on each cell S_n is flat and h linear, so the cell sup is exact.
inline double dense_grid_sup(const std::vector<double>& w, const std::vector<std::size_t>& set,
                             const std::vector<double>& knots, std::size_t grid_points = 1000000) {
    const std::size_t N = w.size();
    const std::size_t per_gene = (grid_points + N - 1) / N;
    const std::size_t L = per_gene * N;
    std::vector<bool> member(N, false);
    double total = 0.0;
    for (auto p : set) {
        member[p] = true;
        total += w[p];
    }
    auto h = [&](std::size_t k) {
        const std::size_t cell = k / per_gene;  // gene whose interval holds t_k
        const std::size_t off = k % per_gene;
        const double left = cell == 0 ? 0.0 : knots[cell - 1];
        if (cell >= N) return knots[N - 1];
        const double right = knots[cell];
        return left + (right - left) * static_cast<double>(off) / static_cast<double>(per_gene);
    };
    double s = 0.0;     // S_n(t_k)
    double acc = 0.0;
    double best = 0.0;
    for (std::size_t k = 0; k <= L; ++k) {
        // a gene at (i+1)/N is a jump at grid index (i+1)*per_gene
        if (k > 0 && k % per_gene == 0 && member[k / per_gene - 1]) {
            acc += w[k / per_gene - 1];
            s = acc / total;
        }
        const double hk = h(k);
        best = std::max(best, std::abs(s - hk));
        if (k < L) best = std::max(best, std::abs(s - h(k + 1)));
    }
    return best;
}

/// Classical one-sample KS distance of the points (pos+1)/N to Uniform(0,1).
inline double ks_distance_uniform(std::vector<std::size_t> set, std::size_t N) {
    std::sort(set.begin(), set.end());
    const double n = static_cast<double>(set.size());
    double d = 0.0;
    for (std::size_t i = 0; i < set.size(); ++i) {
        const double x = static_cast<double>(set[i] + 1) / static_cast<double>(N);
        d = std::max({d, static_cast<double>(i + 1) / n - x, x - static_cast<double>(i) / n});
    }
    return d;
}

/// P(X >= s) for X ~ Binomial(n, p), summed in log space.
inline double binomial_upper_tail(std::size_t s, std::size_t n, double p) {
    if (s == 0) return 1.0;
    if (p <= 0.0) return 0.0;
    if (p >= 1.0) return 1.0;
    const double lp = std::log(p), lq = std::log1p(-p);
    const double lgn = std::lgamma(static_cast<double>(n) + 1.0);
    double sum = 0.0;
    for (std::size_t k = s; k <= n; ++k) {
        const double lk = lgn - std::lgamma(static_cast<double>(k) + 1.0) -
                          std::lgamma(static_cast<double>(n - k) + 1.0) +
                          static_cast<double>(k) * lp + static_cast<double>(n - k) * lq;
        sum += std::exp(lk);
    }
    return std::min(sum, 1.0);
}

/// Clopper-Pearson lower bound: the p solving P(X >= s | p) = alpha, by bisection.
inline double clopper_pearson_lower_bisect(std::size_t s, std::size_t n, double alpha) {
    if (s == 0) return 0.0;
    double lo = 0.0, hi = 1.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (binomial_upper_tail(s, n, mid) < alpha) lo = mid;
        else hi = mid;
    }
    return 0.5 * (lo + hi);
}

/// BY by the textbook definition: adjusted p_(i) = min_{j >= i} min(1, p_(j) m c(m) / j).
inline std::vector<double> by_direct(const std::vector<double>& p) {
    const std::size_t m = p.size();
    double c = 0.0;
    for (std::size_t i = 1; i <= m; ++i) c += 1.0 / static_cast<double>(i);
    std::vector<std::size_t> idx(m);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::stable_sort(idx.begin(), idx.end(), [&](auto a, auto b) { return p[a] < p[b]; });
    std::vector<double> out(m);
    for (std::size_t i = 0; i < m; ++i) {
        double best = 1.0;
        for (std::size_t j = i; j < m; ++j)
            best = std::min(best, p[idx[j]] * static_cast<double>(m) * c / static_cast<double>(j + 1));
        out[idx[i]] = best;
    }
    return out;
}

/// Enumerates every n-subset of {0..N-1} and tabulates the constant-weight
/// statistic sup|S_n(t) - t| scaled by n*N (an integer).
inline std::vector<std::uint64_t> enumerate_ks_counts(std::size_t N, std::size_t n) {
    std::vector<std::uint64_t> counts(n * N + 1, 0);
    std::vector<std::size_t> pos(n);
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t depth, std::size_t start) {
        if (depth == n) {
            long best = 0;
            for (std::size_t i = 0; i < n; ++i) {
                const long x = static_cast<long>((pos[i] + 1) * n);
                best = std::max({best, static_cast<long>((i + 1) * N) - x,
                                 x - static_cast<long>(i * N)});
            }
            ++counts[static_cast<std::size_t>(best)];
            return;
        }
        for (std::size_t p = start; p + (n - depth) <= N; ++p) {
            pos[depth] = p;
            rec(depth + 1, p + 1);
        }
    };
    rec(0, 0);
    return counts;
}

/// Upper tail P(T_n >= value) from enumerate_ks_counts; `scaled` = T_n * n * N.
inline double enumerated_tail(const std::vector<std::uint64_t>& counts, long scaled) {
    std::uint64_t tail = 0, total = 0;
    for (std::size_t k = 0; k < counts.size(); ++k) {
        total += counts[k];
        if (static_cast<long>(k) >= scaled) tail += counts[k];
    }
    return static_cast<double>(tail) / static_cast<double>(total);
}

} // namespace wks::oracle
