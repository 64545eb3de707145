#include "wks/weights.hpp"

#include "wks/errors.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <unordered_set>

namespace wks {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.back() == '\r' || s.back() == ' ' || s.back() == '\t'))
        s.remove_suffix(1);
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
        s.remove_prefix(1);
    return s;
}

bool parse_double(std::string_view s, double& out) {
    if (s.empty()) return false;
    const char* first = s.data();
    if (*first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, s.data() + s.size(), out);
    return ec == std::errc{} && ptr == s.data() + s.size() && std::isfinite(out);
}

// Neumaier summation; keeps prefix sums of ~20k weights accurate to a few ulps.
class CompensatedSum {
public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) comp_ += (sum_ - t) + x;
        else comp_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

// Indices of v sorted by descending raw weight, ties by input position.
std::vector<std::size_t> descending_order(const GeneVector& v) {
    std::vector<std::size_t> order(v.entries.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return v.entries[a].raw_weight > v.entries[b].raw_weight;
    });
    return order;
}

} // namespace

GeneVector load_weight_vector(std::istream& in, std::string source_label) {
    GeneVector v;
    v.source_label = std::move(source_label);
    std::unordered_set<std::string> seen;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string_view s = line;
        if (!s.empty() && s.back() == '\r') s.remove_suffix(1);
        if (trim(s).empty() || s.front() == '#') continue;

        const auto tab = s.find('\t');
        if (tab == std::string_view::npos)
            throw MalformedLine(lineno, "expected gene_id<TAB>value");
        const auto id = trim(s.substr(0, tab));
        const auto value = trim(s.substr(tab + 1));
        if (id.empty()) throw MalformedLine(lineno, "empty gene id");
        double x = 0.0;
        if (!parse_double(value, x))
            throw MalformedLine(lineno, "cannot parse value '" + std::string(value) + "'");
        if (!seen.emplace(id).second) throw DuplicateGene(std::string(id));
        v.entries.push_back({std::string(id), x});
    }
    if (v.entries.empty()) throw EmptyVector();
    return v;
}

GeneVector load_weight_vector_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open weights file " + path);
    try {
        return load_weight_vector(in, path);
    } catch (const MalformedLine& e) {
        throw MalformedLine(e.line(), e.reason(), path);
    }
}

GeneVector rank_transform(const GeneVector& v) {
    if (v.entries.empty()) throw EmptyVector();
    const auto order = descending_order(v);
    const std::size_t n = order.size();
    GeneVector out = v;
    for (std::size_t r = 0; r < n; ++r)
        out.entries[order[r]].raw_weight = static_cast<double>(n - r);
    return out;
}

WeightProfile build_profile(const GeneVector& v) {
    if (v.entries.empty()) throw EmptyVector();
    for (const auto& e : v.entries)
        if (!(e.raw_weight > 0.0)) throw NonPositiveWeight(e.gene_id);

    const auto order = descending_order(v);
    WeightProfile p;
    p.gene_ids_.reserve(order.size());
    p.w_.reserve(order.size());
    CompensatedSum total;
    for (std::size_t i : order) total.add(v.entries[i].raw_weight);
    for (std::size_t i : order) {
        p.gene_ids_.push_back(v.entries[i].gene_id);
        p.w_.push_back(v.entries[i].raw_weight / total.value());
    }
    p.cum_.resize(p.w_.size());
    CompensatedSum running;
    for (std::size_t i = 0; i < p.w_.size(); ++i) {
        running.add(p.w_[i]);
        p.cum_[i] = running.value();
    }
    // Pin the last point so that S_n and G both end at exactly 1.
    p.cum_.back() = 1.0;
    p.index_.reserve(p.gene_ids_.size());
    for (std::size_t i = 0; i < p.gene_ids_.size(); ++i) p.index_.emplace(p.gene_ids_[i], i);
    return p;
}

WeightProfile rank_profile(std::size_t n_genes) {
    GeneVector v;
    v.source_label = "rank";
    v.entries.reserve(n_genes);
    for (std::size_t i = 0; i < n_genes; ++i)
        v.entries.push_back({"g" + std::to_string(i), static_cast<double>(n_genes - i)});
    return build_profile(v);
}

WeightProfile constant_profile(std::size_t n_genes) {
    GeneVector v;
    v.source_label = "constant";
    v.entries.reserve(n_genes);
    for (std::size_t i = 0; i < n_genes; ++i)
        v.entries.push_back({"g" + std::to_string(i), 1.0});
    return build_profile(v);
}

std::ptrdiff_t WeightProfile::index_of(const std::string& gene_id) const {
    const auto it = index_.find(gene_id);
    return it == index_.end() ? -1 : static_cast<std::ptrdiff_t>(it->second);
}

double WeightProfile::cumulative_at_t(double t) const {
    const std::size_t n = w_.size();
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    const double x = t * static_cast<double>(n);
    const auto cell = std::min(static_cast<std::size_t>(x), n - 1);
    const double left = cell == 0 ? 0.0 : cum_[cell - 1];
    return left + (x - static_cast<double>(cell)) * w_[cell];
}

std::size_t WeightProfile::gene_at_t(double t) const {
    const std::size_t n = w_.size();
    const double c = std::ceil(t * static_cast<double>(n));
    if (c <= 1.0) return 0;
    return std::min(static_cast<std::size_t>(c) - 1, n - 1);
}

std::vector<double> WeightProfile::density() const {
    std::vector<double> g(w_.size());
    const double n = static_cast<double>(w_.size());
    std::transform(w_.begin(), w_.end(), g.begin(), [n](double x) { return x * n; });
    return g;
}

std::uint64_t WeightProfile::fingerprint() const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (double x : w_) {
        auto bits = std::bit_cast<std::uint64_t>(x);
        for (int b = 0; b < 8; ++b) {
            h ^= bits & 0xffU;
            h *= 0x100000001b3ULL;
            bits >>= 8;
        }
    }
    return h;
}

AnalyticWeight AnalyticWeight::make(WeightKind kind, int k) {
    switch (kind) {
    case WeightKind::constant:
        return {WeightKind::constant, 0};
    case WeightKind::rank_linear:
        return {WeightKind::gk_family, 1};
    case WeightKind::gk_family:
        if (k < 0) throw InvalidParameter("g_k family needs k >= 0, got " + std::to_string(k));
        if (k == 0) return {WeightKind::constant, 0};
        break;
    }
    AnalyticWeight g(WeightKind::gk_family, k);
    if (std::abs(g.integral(100000) - 1.0) > 1e-9)
        throw InvalidParameter("weight function does not integrate to 1");
    return g;
}

double AnalyticWeight::operator()(double t) const {
    if (kind_ == WeightKind::constant) return 1.0;
    if (k_ == 1) return 2.0 * (1.0 - t);
    return (k_ + 1) * (1.0 - std::pow(t, 1.0 / k_));
}

std::vector<double> AnalyticWeight::at_grid(std::size_t m) const {
    std::vector<double> g(m);
    for (std::size_t i = 0; i < m; ++i)
        g[i] = (*this)(static_cast<double>(i) / static_cast<double>(m));
    return g;
}

double AnalyticWeight::integral(std::size_t points) const {
    if (kind_ == WeightKind::constant) return 1.0;
    // x = u^k removes the x^{1/k} cusp at 0, leaving a polynomial integrand.
    const int k = k_;
    return integrate_unit(
        [this, k](double u) { return (*this)(std::pow(u, k)) * k * std::pow(u, k - 1); },
        points);
}

std::string AnalyticWeight::label() const {
    return kind_ == WeightKind::constant ? "g0" : "g" + std::to_string(k_);
}

double integrate_unit(const std::function<double(double)>& f, std::size_t points) {
    if (points < 2) throw InvalidParameter("trapezoid rule needs at least 2 points");
    const double h = 1.0 / static_cast<double>(points - 1);
    double s = 0.5 * (f(0.0) + f(1.0));
    for (std::size_t i = 1; i + 1 < points; ++i) s += f(static_cast<double>(i) * h);
    return s * h;
}

} // namespace wks
