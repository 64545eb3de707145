#pragma once

#include <span>
#include <vector>

namespace wks {

/// Benjamini-Yekutieli step-up adjustment, valid under arbitrary dependence.
/// Output is in input order. Throws InvalidPValue for p outside [0,1] and
/// InvalidParameter for an empty input.
std::vector<double> benjamini_yekutieli(std::span<const double> p);

} // namespace wks
