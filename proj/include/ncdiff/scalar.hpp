#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace ncdiff {

// Exact rational coefficient. mpq_class keeps values in lowest terms with a
// positive denominator after every arithmetic operation.
using Scalar = mpq_class;

// C(n, k) as an exact integer; zero outside 0 <= k <= n.
Scalar binomial(int n, int k);

// "p" when the denominator is 1, "p/q" otherwise.
std::string to_string(const Scalar& value);

// Accepts "p" or "p/q" (optional leading '-'); throws ParseError.
Scalar parse_scalar(std::string_view text);

}  // namespace ncdiff
