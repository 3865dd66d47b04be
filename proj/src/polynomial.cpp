#include "sgforest/polynomial.hpp"

#include <cctype>
#include <stdexcept>

namespace sgforest {

int Monomial::degree() const {
  int d = 0;
  for (std::uint8_t e : exponents) d += e;
  return d;
}

Monomial Monomial::variable(int index, int power) {
  if (index < 0 || index >= kMaxVariables) throw std::out_of_range("variable index");
  Monomial m;
  m.exponents[index] = static_cast<std::uint8_t>(power);
  return m;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial m;
  for (int i = 0; i < kMaxVariables; ++i) {
    const int e = a.exponents[i] + b.exponents[i];
    if (e > 255) throw std::overflow_error("monomial exponent overflow");
    m.exponents[i] = static_cast<std::uint8_t>(e);
  }
  return m;
}

Polynomial::Polynomial(int variable_count) : variable_count_(variable_count) {
  if (variable_count < 0 || variable_count > kMaxVariables) {
    throw std::out_of_range("polynomial variable count");
  }
}

Polynomial Polynomial::constant(int variable_count, const BigInt& value) {
  Polynomial p(variable_count);
  p.add_term(Monomial{}, value);
  return p;
}

Polynomial Polynomial::variable(int variable_count, int index) {
  if (index < 0 || index >= variable_count) throw std::out_of_range("variable index");
  Polynomial p(variable_count);
  p.add_term(Monomial::variable(index), 1);
  return p;
}

Polynomial Polynomial::linear(std::span<const long> weights) {
  Polynomial p(static_cast<int>(weights.size()));
  for (std::size_t i = 0; i < weights.size(); ++i) {
    p.add_term(Monomial::variable(static_cast<int>(i)), BigInt(weights[i]));
  }
  return p;
}

void Polynomial::add_term(const Monomial& m, const BigInt& coefficient) {
  if (sgn(coefficient) == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, coefficient);
  if (!inserted) {
    it->second += coefficient;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

BigInt Polynomial::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? BigInt(0) : it->second;
}

bool Polynomial::is_homogeneous(int degree) const {
  for (const auto& [m, c] : terms_) {
    if (m.degree() != degree) return false;
  }
  return true;
}

bool Polynomial::has_nonnegative_coefficients() const {
  for (const auto& [m, c] : terms_) {
    if (sgn(c) < 0) return false;
  }
  return true;
}

BigInt Polynomial::evaluate(std::span<const BigInt> values) const {
  if (static_cast<int>(values.size()) != variable_count_) {
    throw std::invalid_argument("evaluate: wrong number of values");
  }
  // Cache powers; terms share them heavily.
  std::vector<std::vector<BigInt>> powers(variable_count_);
  auto power_of = [&](int var, int e) -> const BigInt& {
    auto& list = powers[var];
    if (list.empty()) list.push_back(1);
    while (static_cast<int>(list.size()) <= e) list.push_back(list.back() * values[var]);
    return list[e];
  };
  BigInt total = 0;
  BigInt term;
  for (const auto& [m, c] : terms_) {
    term = c;
    for (int v = 0; v < variable_count_; ++v) {
      if (m.exponents[v]) term *= power_of(v, m.exponents[v]);
    }
    total += term;
  }
  return total;
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  if (other.variable_count_ != variable_count_) throw std::invalid_argument("variable count mismatch");
  for (const auto& [m, c] : other.terms_) add_term(m, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  if (other.variable_count_ != variable_count_) throw std::invalid_argument("variable count mismatch");
  for (const auto& [m, c] : other.terms_) add_term(m, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(const BigInt& scalar) {
  if (sgn(scalar) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, c] : terms_) c *= scalar;
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.variable_count_ != b.variable_count_) throw std::invalid_argument("variable count mismatch");
  Polynomial out(a.variable_count_);
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) out.add_term(ma * mb, ca * cb);
  }
  return out;
}

Polynomial Polynomial::pow(int exponent) const {
  if (exponent < 0) throw std::invalid_argument("negative exponent");
  Polynomial result = constant(variable_count_, 1);
  Polynomial base = *this;
  while (exponent > 0) {
    if (exponent & 1) result = result * base;
    exponent >>= 1;
    if (exponent) base = base * base;
  }
  return result;
}

std::string Polynomial::to_string(std::span<const std::string> names) const {
  if (terms_.empty()) return "0";
  std::string out;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [m, c] = *it;
    const bool negative = sgn(c) < 0;
    if (out.empty()) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    const BigInt magnitude = abs(c);
    bool wrote = false;
    if (magnitude != 1 || m.degree() == 0) {
      out += to_decimal(magnitude);
      wrote = true;
    }
    for (int v = 0; v < variable_count_; ++v) {
      if (!m.exponents[v]) continue;
      if (wrote) out += "*";
      out += names[v];
      if (m.exponents[v] > 1) out += "^" + std::to_string(m.exponents[v]);
      wrote = true;
    }
  }
  return out;
}

namespace {

class Parser {
 public:
  Parser(std::string_view text, std::span<const std::string> names,
         const std::map<std::string, Polynomial>& bindings)
      : text_(text), names_(names), bindings_(bindings) {}

  Polynomial parse() {
    Polynomial p = expression();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected character");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("polynomial parse error at offset " + std::to_string(pos_) +
                                ": " + what + " in '" + std::string(text_) + "'");
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  int nvars() const { return static_cast<int>(names_.size()); }

  Polynomial expression() {
    Polynomial sum(nvars());
    bool negate = false;
    if (peek() == '-') {
      negate = true;
      ++pos_;
    } else if (peek() == '+') {
      ++pos_;
    }
    while (true) {
      Polynomial t = term();
      if (negate) {
        sum -= t;
      } else {
        sum += t;
      }
      const char c = peek();
      if (c == '+' || c == '-') {
        negate = c == '-';
        ++pos_;
      } else {
        return sum;
      }
    }
  }

  static bool starts_factor(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '(' || c == '[' || c == '_';
  }

  Polynomial term() {
    Polynomial product = factor();
    while (true) {
      const char c = peek();
      if (c == '*') {
        ++pos_;
        product = product * factor();
      } else if (starts_factor(c)) {
        product = product * factor();
      } else {
        return product;
      }
    }
  }

  Polynomial factor() {
    Polynomial base = primary();
    if (peek() == '^') {
      ++pos_;
      skip_space();
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) fail("expected exponent");
      base = base.pow(std::stoi(std::string(text_.substr(start, pos_ - start))));
    }
    return base;
  }

  Polynomial primary() {
    const char c = peek();
    if (c == '(' || c == '[') {
      const char close = c == '(' ? ')' : ']';
      ++pos_;
      Polynomial inner = expression();
      if (peek() != close) fail(std::string("expected '") + close + "'");
      ++pos_;
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      return Polynomial::constant(nvars(), BigInt(std::string(text_.substr(start, pos_ - start))));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        ++pos_;
      }
      const std::string id(text_.substr(start, pos_ - start));
      for (int v = 0; v < nvars(); ++v) {
        if (names_[v] == id) return Polynomial::variable(nvars(), v);
      }
      auto it = bindings_.find(id);
      if (it == bindings_.end()) {
        pos_ = start;
        fail("unknown identifier '" + id + "'");
      }
      return it->second;
    }
    fail("expected a factor");
  }

  std::string_view text_;
  std::span<const std::string> names_;
  const std::map<std::string, Polynomial>& bindings_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial parse_polynomial(std::string_view text, std::span<const std::string> names,
                            const std::map<std::string, Polynomial>& bindings) {
  return Parser(text, names, bindings).parse();
}

}  // namespace sgforest
