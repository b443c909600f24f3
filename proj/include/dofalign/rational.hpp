#pragma once

#include <boost/rational.hpp>

#include <string>

namespace dofalign {

/// Exact rational scalar used by all region arithmetic. Coefficients are
/// ratios of antenna counts, so a 64-bit backing type has ample headroom.
using Rat = boost::rational<long long>;

/// Reduced-form rendering: "p/q", or plain "p" when the denominator is 1.
std::string rat_to_string(const Rat& r);

/// Parses "p" or "p/q". Throws std::invalid_argument on malformed input.
Rat rat_from_string(const std::string& s);

double rat_to_double(const Rat& r);

}  // namespace dofalign
