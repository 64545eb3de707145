#include "oracles.hpp"

#include "wks/errors.hpp"
#include "wks/limiting_cdf.hpp"

#include <doctest.h>

#include <boost/random/normal_distribution.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace wks;

TEST_CASE("simulate_max degenerate weights give zero") {
    std::vector<double> zeros(50, 0.0);
    Xoshiro256 rng(1);
    CHECK(simulate_max(zeros, rng) == 0.0);
}

TEST_CASE("trajectories are pinned bridges") {
    const auto g = AnalyticWeight::make(WeightKind::gk_family, 2).at_grid(500);
    const TrajectoryKernel kernel(g);
    for (std::uint64_t s = 0; s < 20; ++s) {
        auto a = Xoshiro256::substream(9, s);
        auto b = Xoshiro256::substream(9, s);
        const auto z = kernel.trajectory(a);
        std::vector<double> scratch(kernel.m());
        const auto r = kernel.simulate(b, scratch);
        CHECK(z.front() == 0.0);
        CHECK(std::abs(z.back()) < 1e-10);
        double mx = 0.0, up = 0.0;
        for (double x : z) {
            mx = std::max(mx, std::abs(x));
            up = std::max(up, x);
        }
        CHECK(r.abs_max == doctest::Approx(mx).epsilon(1e-14));
        CHECK(r.upper == doctest::Approx(up).epsilon(1e-14));
        CHECK(r.abs_max >= std::abs(z[1]));
    }
}

TEST_CASE("constant weights reproduce the Brownian bridge built from the same draws") {
    const std::size_t m = 1000;
    std::vector<double> ones(m, 1.0);
    for (std::uint64_t s = 0; s < 10; ++s) {
        auto rng = Xoshiro256::substream(77, s);
        const double got = simulate_max(ones, rng);

        // oracle: W_t - t W_1 from identical increments
        auto again = Xoshiro256::substream(77, s);
        boost::random::normal_distribution<double> normal;
        std::vector<double> W(m + 1, 0.0);
        for (std::size_t i = 0; i < m; ++i)
            W[i + 1] = W[i] + normal(again) / std::sqrt(static_cast<double>(m));
        double expected = 0.0;
        for (std::size_t j = 0; j <= m; ++j)
            expected = std::max(expected,
                                std::abs(W[j] - static_cast<double>(j) / static_cast<double>(m) * W[m]));
        CHECK(got == doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("estimate_cdf container contract and determinism") {
    const auto g = AnalyticWeight::make(WeightKind::gk_family, 1);
    const SimConfig cfg{200, 100, 5};
    const auto a = estimate_cdf(g, cfg);
    CHECK(a.maxima.size() == 100);
    CHECK(a.upper.size() == 100);
    CHECK(std::is_sorted(a.maxima.begin(), a.maxima.end()));
    CHECK(a.maxima.front() >= 0.0);
    CHECK(a.upper.front() >= 0.0);
    const auto b = estimate_cdf(g, cfg, Execution::serial);
    CHECK(a.maxima == b.maxima);
    CHECK(a.upper == b.upper);
#ifdef _OPENMP
    for (int threads : {1, 2, 3, 7}) {
        omp_set_num_threads(threads);
        CHECK(estimate_cdf(g, cfg).maxima == a.maxima);
    }
    omp_set_num_threads(omp_get_num_procs());
#endif
    const auto c = estimate_cdf(g, SimConfig{200, 100, 6});
    CHECK(c.maxima != a.maxima);

    CHECK_THROWS_AS(estimate_cdf(g, SimConfig{1, 100, 1}), InvalidParameter);
    CHECK_THROWS_AS(estimate_cdf(g, SimConfig{100, 99, 1}), InvalidParameter);
}

TEST_CASE("profile grid uses the profile density") {
    const auto p = rank_profile(4); // w = .4 .3 .2 .1
    const auto g = profile_grid(p, 4);
    CHECK(g[0] == doctest::Approx(1.6));
    CHECK(g[3] == doctest::Approx(0.4));
    const auto g8 = profile_grid(p, 8);
    CHECK(g8[0] == g8[1]);
    CHECK(g8[6] == doctest::Approx(0.4));
    const auto null = estimate_cdf(p, SimConfig{0, 100, 3});
    CHECK(null.config.m == 4);
    CHECK(null.weight_fingerprint == p.fingerprint());
}

TEST_CASE("cdf_point counts") {
    const std::vector<double> xs{1, 2, 3, 4};
    CHECK(cdf_point(xs, 0.5) == 0.0);
    CHECK(cdf_point(xs, 2.5) == 0.5);
    CHECK(cdf_point(xs, 2.0) == 0.5);
    CHECK(cdf_point(xs, 4.0) == 1.0);
    CHECK(cdf_point(xs, 10.0) == 1.0);
    CHECK(quantile(xs, 0.5) == 2.0);
    CHECK(quantile(xs, 0.51) == 3.0);
    CHECK(quantile(xs, 1.0) == 4.0);
}

TEST_CASE("Clopper-Pearson bound against the binomial-tail oracle") {
    // closed form at the boundary
    CHECK(clopper_pearson_lower(20000, 20000) == doctest::Approx(std::pow(0.05, 1.0 / 20000)));
    CHECK(clopper_pearson_lower(0, 20000) == 0.0);

    const std::pair<std::size_t, std::size_t> cases[] = {
        {1, 100}, {50, 100}, {99, 100}, {19000, 20000}, {9990, 10000}, {3, 7}};
    for (auto [s, n] : cases) {
        CAPTURE(s);
        CAPTURE(n);
        const double oracle = oracle::clopper_pearson_lower_bisect(s, n, 0.05);
        CHECK(std::abs(clopper_pearson_lower(s, n) - oracle) < 1e-9);
    }
    // frozen values (Beta quantiles)
    CHECK(clopper_pearson_lower(19000, 20000) == doctest::Approx(0.94739126875342).epsilon(1e-12));
    CHECK(clopper_pearson_lower(50, 100) == doctest::Approx(0.41362171463091163).epsilon(1e-12));
}

TEST_CASE("conservative p-value") {
    std::vector<double> xs(20000);
    for (std::size_t i = 0; i < xs.size(); ++i) xs[i] = static_cast<double>(i + 1);
    // 19000 maxima <= x: point p = 0.05
    const double x = 19000.5;
    CHECK(1.0 - cdf_point(xs, x) == doctest::Approx(0.05));
    CHECK(conservative_pvalue(xs, x) == doctest::Approx(0.052608731246580054).epsilon(1e-9));
    CHECK(conservative_pvalue(xs, 0.0) == 1.0);
    const double top = conservative_pvalue(xs, 1e9);
    CHECK(top > 0.0);
    CHECK(top == doctest::Approx(1.0 - std::pow(0.05, 1.0 / 20000)));
    CHECK(top == doctest::Approx(0.000149775396222962).epsilon(1e-9));
    for (double q = 0.0; q < 20001.0; q += 37.3) CHECK(conservative_pvalue(xs, q) >= 1.0 - cdf_point(xs, q));
}

TEST_CASE("Kolmogorov CDF") {
    CHECK(kolmogorov_cdf(0.0) == 0.0);
    CHECK(kolmogorov_cdf(-1.0) == 0.0);
    CHECK(kolmogorov_cdf(0.2) < 1e-6);
    CHECK(std::abs(kolmogorov_cdf(3.0) - 1.0) < 1e-7);
    // high-precision series values
    CHECK(kolmogorov_cdf(0.2) == doctest::Approx(5.050407338670088e-13).epsilon(1e-8));
    CHECK(kolmogorov_cdf(0.5) == doctest::Approx(0.036054756335124906).epsilon(1e-12));
    CHECK(kolmogorov_cdf(0.8) == doctest::Approx(0.45585758842580192).epsilon(1e-12));
    CHECK(kolmogorov_cdf(1.0) == doctest::Approx(0.73000032832264548).epsilon(1e-12));
    CHECK(kolmogorov_cdf(1.3581) == doctest::Approx(0.95000036956833259).epsilon(1e-12));
    CHECK(kolmogorov_cdf(2.0) == doctest::Approx(0.99932907474422030).epsilon(1e-12));
    // both series branches agree where they meet
    CHECK(kolmogorov_cdf(1.18 - 1e-12) == doctest::Approx(kolmogorov_cdf(1.18)).epsilon(1e-10));
}

TEST_CASE("null CDF cache round-trips losslessly") {
    const auto null = estimate_cdf(AnalyticWeight::make(WeightKind::gk_family, 2), SimConfig{64, 150, 11});
    std::stringstream buf;
    write_null_cdf(buf, null);
    const auto back = read_null_cdf(buf);
    CHECK(back.maxima == null.maxima);
    CHECK(back.upper == null.upper);
    CHECK(back.config.m == 64);
    CHECK(back.config.nsim == 150);
    CHECK(back.config.seed == 11);
    CHECK(back.weight_fingerprint == null.weight_fingerprint);

    std::stringstream bad("not a cache at all");
    CHECK_THROWS_AS(read_null_cdf(bad), FormatError);
    std::string bytes = buf.str();
    std::stringstream truncated(bytes.substr(0, bytes.size() / 2));
    CHECK_THROWS_AS(read_null_cdf(truncated), FormatError);
}

TEST_CASE("constant-g covariance matches the Brownian bridge") {
    const std::size_t m = 10000, reps = 50000;
    const TrajectoryKernel kernel(std::vector<double>(m, 1.0));
    double sa = 0, sb = 0, sab = 0;
    for (std::size_t r = 0; r < reps; ++r) {
        auto rng = Xoshiro256::substream(2024, r);
        const auto z = kernel.trajectory(rng);
        const double a = z[3000], b = z[7000];
        sa += a;
        sb += b;
        sab += a * b;
    }
    const double n = static_cast<double>(reps);
    const double cov = sab / n - (sa / n) * (sb / n);
    // min(s,t) - st at (0.3, 0.7)
    CHECK(std::abs(cov - (0.3 - 0.3 * 0.7)) < 0.01);
}
