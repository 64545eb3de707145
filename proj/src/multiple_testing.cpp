#include "wks/multiple_testing.hpp"

#include "wks/errors.hpp"

#include <algorithm>
#include <numeric>

namespace wks {

std::vector<double> benjamini_yekutieli(std::span<const double> p) {
    if (p.empty()) throw InvalidParameter("no p-values to adjust");
    for (double x : p)
        if (!(x >= 0.0 && x <= 1.0)) throw InvalidPValue(x);

    const std::size_t m = p.size();
    double harmonic = 0.0;
    for (std::size_t i = 1; i <= m; ++i) harmonic += 1.0 / static_cast<double>(i);

    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return p[a] < p[b]; });

    std::vector<double> adjusted(m);
    double running_min = 1.0;
    for (std::size_t r = m; r-- > 0;) {
        const double raw = p[order[r]] * static_cast<double>(m) * harmonic /
                           static_cast<double>(r + 1);
        running_min = std::min(running_min, raw);
        adjusted[order[r]] = running_min;
    }
    return adjusted;
}

} // namespace wks
