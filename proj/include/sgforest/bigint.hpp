#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace sgforest {

// Exact integer used for every count and coefficient.
using BigInt = mpz_class;

std::string to_decimal(const BigInt& x);

// Decimal digits with a comma between every group of three, as the
// published tables print them: 20592775 -> "20,592,775".
std::string grouped_decimal(const BigInt& x);

// Accepts plain or comma-grouped decimal digits, optional leading '-'.
// Throws std::invalid_argument on anything else.
BigInt parse_decimal(std::string_view text);

}  // namespace sgforest
