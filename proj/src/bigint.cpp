#include "sgforest/bigint.hpp"

#include <stdexcept>

namespace sgforest {

std::string to_decimal(const BigInt& x) { return x.get_str(10); }

std::string grouped_decimal(const BigInt& x) {
  std::string digits = BigInt(abs(x)).get_str(10);
  std::string out;
  out.reserve(digits.size() + digits.size() / 3 + 1);
  if (sgn(x) < 0) out.push_back('-');
  const std::size_t lead = digits.size() % 3 == 0 ? 3 : digits.size() % 3;
  out.append(digits, 0, lead);
  for (std::size_t i = lead; i < digits.size(); i += 3) {
    out.push_back(',');
    out.append(digits, i, 3);
  }
  return out;
}

BigInt parse_decimal(std::string_view text) {
  std::string digits;
  digits.reserve(text.size());
  bool negative = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (c == '-' && i == 0) {
      negative = true;
    } else if (c >= '0' && c <= '9') {
      digits.push_back(c);
    } else if (c != ',') {
      throw std::invalid_argument("not a decimal integer: '" + std::string(text) + "'");
    }
  }
  if (digits.empty()) {
    throw std::invalid_argument("not a decimal integer: '" + std::string(text) + "'");
  }
  BigInt value(digits, 10);
  return negative ? BigInt(-value) : value;
}

}  // namespace sgforest
