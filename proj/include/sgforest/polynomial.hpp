#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sgforest/bigint.hpp"

namespace sgforest {

inline constexpr int kMaxVariables = 8;

// Exponent vector over at most kMaxVariables variables.
struct Monomial {
  std::array<std::uint8_t, kMaxVariables> exponents{};

  int degree() const;
  static Monomial variable(int index, int power = 1);

  friend bool operator==(const Monomial&, const Monomial&) = default;
  friend auto operator<=>(const Monomial&, const Monomial&) = default;
};

Monomial operator*(const Monomial& a, const Monomial& b);

// Sparse multivariate polynomial with exact integer coefficients. Terms
// with zero coefficient are never stored.
class Polynomial {
 public:
  explicit Polynomial(int variable_count = 0);

  static Polynomial constant(int variable_count, const BigInt& value);
  static Polynomial variable(int variable_count, int index);
  // sum_i weights[i] * x_i
  static Polynomial linear(std::span<const long> weights);

  int variable_count() const { return variable_count_; }
  const std::map<Monomial, BigInt>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const Monomial& m, const BigInt& coefficient);
  BigInt coefficient(const Monomial& m) const;

  // True when every term has total degree `degree`.
  bool is_homogeneous(int degree) const;
  bool has_nonnegative_coefficients() const;

  BigInt evaluate(std::span<const BigInt> values) const;

  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(const BigInt& scalar);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, const BigInt& s) { return a *= s; }
  friend bool operator==(const Polynomial&, const Polynomial&) = default;

  Polynomial pow(int exponent) const;

  // Terms in descending monomial order, e.g. "6*t^2*g + 3*t*g^2".
  std::string to_string(std::span<const std::string> names) const;

 private:
  int variable_count_ = 0;
  std::map<Monomial, BigInt> terms_;
};

// Parses integer-coefficient polynomial expressions: + - * ^, implicit
// multiplication by juxtaposition, and () or [] grouping. Identifiers are
// resolved against `names` (the variables) first and then `bindings`
// (named polynomials over the same variables). Throws
// std::invalid_argument with the offending position on syntax errors.
Polynomial parse_polynomial(std::string_view text, std::span<const std::string> names,
                            const std::map<std::string, Polynomial>& bindings = {});

}  // namespace sgforest
