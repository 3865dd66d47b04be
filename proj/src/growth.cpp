#include "sgforest/growth.hpp"

#include <cmath>
#include <ostream>
#include <utility>

namespace sgforest {

// ---- Real ------------------------------------------------------------------

Real::Real(mpfr_prec_t bits) {
  mpfr_init2(value_, bits);
  mpfr_set_zero(value_, 1);
  live_ = true;
}

Real::Real(const Real& other) {
  mpfr_init2(value_, other.precision());
  mpfr_set(value_, other.value_, MPFR_RNDN);
  live_ = true;
}

Real::Real(Real&& other) noexcept {
  // mpfr_t is an array of one struct; take over the limbs.
  value_[0] = other.value_[0];
  live_ = std::exchange(other.live_, false);
}

Real& Real::operator=(const Real& other) {
  if (this != &other) {
    if (live_) {
      mpfr_set_prec(value_, other.precision());
    } else {
      mpfr_init2(value_, other.precision());
      live_ = true;
    }
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

Real& Real::operator=(Real&& other) noexcept {
  if (this != &other) {
    if (live_) mpfr_clear(value_);
    value_[0] = other.value_[0];
    live_ = std::exchange(other.live_, false);
  }
  return *this;
}

Real::~Real() {
  if (live_) mpfr_clear(value_);
}

namespace {

std::string digit_string(mpfr_srcptr x, int digits, mpfr_rnd_t rnd, mpfr_exp_t& exp) {
  char* raw = mpfr_get_str(nullptr, &exp, 10, static_cast<std::size_t>(digits), x, rnd);
  std::string s(raw);
  mpfr_free_str(raw);
  return s;
}

std::string positional(std::string mantissa, mpfr_exp_t exp) {
  std::string sign;
  if (!mantissa.empty() && mantissa[0] == '-') {
    sign = "-";
    mantissa.erase(0, 1);
  }
  if (exp == 1) {
    std::string out = sign + mantissa.substr(0, 1);
    if (mantissa.size() > 1) out += "." + mantissa.substr(1);
    return out;
  }
  std::string out = sign + mantissa.substr(0, 1);
  if (mantissa.size() > 1) out += "." + mantissa.substr(1);
  return out + "e" + std::to_string(static_cast<long>(exp) - 1);
}

}  // namespace

std::string Real::significant(int digits) const {
  if (mpfr_zero_p(value_)) return "0";
  mpfr_exp_t exp = 0;
  std::string mantissa = digit_string(value_, digits, MPFR_RNDZ, exp);
  return positional(std::move(mantissa), exp);
}

std::string Real::scientific(int digits) const {
  if (mpfr_zero_p(value_)) return "0";
  mpfr_exp_t exp = 0;
  std::string m = digit_string(value_, digits, MPFR_RNDN, exp);
  std::string sign;
  if (m[0] == '-') {
    sign = "-";
    m.erase(0, 1);
  }
  std::string out = sign + m.substr(0, 1);
  if (m.size() > 1) out += "." + m.substr(1);
  return out + "e" + std::to_string(static_cast<long>(exp) - 1);
}

std::string Real::fixed(int decimals) const {
  Real scaled(precision() + 64);
  mpfr_ui_pow_ui(scaled.get(), 10, static_cast<unsigned long>(decimals), MPFR_RNDN);
  mpfr_mul(scaled.get(), scaled.get(), value_, MPFR_RNDN);
  mpfr_round(scaled.get(), scaled.get());
  BigInt n;
  mpfr_get_z(n.get_mpz_t(), scaled.get(), MPFR_RNDN);
  const bool negative = sgn(n) < 0;
  std::string digits = BigInt(abs(n)).get_str(10);
  if (decimals > 0) {
    if (digits.size() <= static_cast<std::size_t>(decimals)) {
      digits.insert(0, static_cast<std::size_t>(decimals) + 1 - digits.size(), '0');
    }
    digits.insert(digits.size() - static_cast<std::size_t>(decimals), ".");
  }
  return negative ? "-" + digits : digits;
}

// ---- logarithms ------------------------------------------------------------

mpfr_prec_t bits_for_digits(int digits) {
  return static_cast<mpfr_prec_t>(std::ceil(digits * 3.3219280948873623)) + 16;
}

namespace {

// ln y = 2 atanh((y-1)/(y+1)). With |s| <= 1/3 the terms shrink by at least
// 1/9, so the tail after a term below 2^-bits of the sum is below
// 9/8 of that term.
Real ln_by_atanh(mpfr_srcptr y, mpfr_prec_t bits) {
  Real s(bits), num(bits), s2(bits), power(bits), term(bits), sum(bits);
  mpfr_sub_ui(num.get(), y, 1, MPFR_RNDN);
  mpfr_add_ui(s.get(), y, 1, MPFR_RNDN);
  mpfr_div(s.get(), num.get(), s.get(), MPFR_RNDN);
  if (mpfr_zero_p(s.get())) return sum;
  mpfr_sqr(s2.get(), s.get(), MPFR_RNDN);
  mpfr_set(power.get(), s.get(), MPFR_RNDN);
  mpfr_set(sum.get(), s.get(), MPFR_RNDN);
  for (unsigned long k = 3;; k += 2) {
    mpfr_mul(power.get(), power.get(), s2.get(), MPFR_RNDN);
    mpfr_div_ui(term.get(), power.get(), k, MPFR_RNDN);
    mpfr_add(sum.get(), sum.get(), term.get(), MPFR_RNDN);
    if (mpfr_zero_p(term.get()) ||
        mpfr_get_exp(term.get()) < mpfr_get_exp(sum.get()) - static_cast<mpfr_exp_t>(bits)) {
      break;
    }
  }
  mpfr_mul_2ui(sum.get(), sum.get(), 1, MPFR_RNDN);
  return sum;
}

Real ln2(mpfr_prec_t bits) {
  Real two(bits);
  mpfr_set_ui(two.get(), 2, MPFR_RNDN);
  return ln_by_atanh(two.get(), bits);
}

}  // namespace

Real log_big(const BigInt& x, int digits) {
  if (x < 1) throw std::domain_error("log_big: argument below 1");
  if (digits < 1) throw std::invalid_argument("log_big: digits must be positive");
  const mpfr_prec_t bits = bits_for_digits(digits);
  const mpfr_prec_t work = bits + 32;

  // x = y * 2^k with y in [1/sqrt2, sqrt2); only the leading `work` bits of
  // x enter y.
  long k = static_cast<long>(mpz_sizeinbase(x.get_mpz_t(), 2)) - 1;
  Real y(work);
  mpfr_set_z(y.get(), x.get_mpz_t(), MPFR_RNDN);
  mpfr_div_2ui(y.get(), y.get(), static_cast<unsigned long>(k), MPFR_RNDN);
  if (mpfr_cmp_d(y.get(), 1.4142135623730951) > 0) {
    mpfr_div_2ui(y.get(), y.get(), 1, MPFR_RNDN);
    ++k;
  }

  Real result = ln_by_atanh(y.get(), work);
  if (k != 0) {
    Real scale = ln2(work);
    mpfr_mul_si(scale.get(), scale.get(), k, MPFR_RNDN);
    mpfr_add(result.get(), result.get(), scale.get(), MPFR_RNDN);
  }
  Real out(bits);
  mpfr_set(out.get(), result.get(), MPFR_RNDN);
  return out;
}

Real real_from_decimal(const std::string& text, int digits) {
  Real r(bits_for_digits(digits));
  if (mpfr_set_str(r.get(), text.c_str(), 10, MPFR_RNDN) != 0) {
    throw std::invalid_argument("not a decimal number: '" + text + "'");
  }
  return r;
}

// ---- bounds ----------------------------------------------------------------

Real bound_prefactor(const Family& family, int m, int digits) {
  require_supported(family);
  Real c(bits_for_digits(digits));
  BigInt denom;
  if (family.b == 2) {
    mpz_ui_pow_ui(denom.get_mpz_t(), static_cast<unsigned long>(family.d + 1),
                  static_cast<unsigned long>(m + 1));
    mpfr_set_ui(c.get(), 2, MPFR_RNDN);
  } else {
    mpz_ui_pow_ui(denom.get_mpz_t(), static_cast<unsigned long>(family.copy_count()),
                  static_cast<unsigned long>(m));
    denom *= family.b + 4;
    mpfr_set_ui(c.get(), static_cast<unsigned long>(family.b + 2), MPFR_RNDN);
  }
  mpfr_div_z(c.get(), c.get(), denom.get_mpz_t(), MPFR_RNDN);
  return c;
}

int default_bound_stage(const Family& family) {
  require_supported(family);
  if (family.b == 3) return 5;
  if (family.b == 4) return 4;
  switch (family.d) {
    case 2: return 8;
    case 3: return 9;
    default: return 6;
  }
}

int default_precision(const Family& family) { return family.d == 4 ? 14 : 12; }

int finest_class_index(const RecursionSystem& system) {
  for (std::size_t i = 0; i < system.classes.size(); ++i) {
    if (static_cast<int>(system.classes[i].block_signature.size()) ==
        system.family.corner_count()) {
      return static_cast<int>(i);
    }
  }
  throw std::logic_error("system has no all-singletons class");
}

namespace {

void require_stage(std::span<const ClassCountVector> vectors, int m) {
  if (m < 0 || static_cast<std::size_t>(m) >= vectors.size() || vectors[m].stage != m) {
    throw std::out_of_range("stage " + std::to_string(m) + " has not been computed");
  }
}

// Leading characters shared by two renderings, with any dangling point
// dropped; returns the number of digits kept.
int common_prefix(const std::string& a, const std::string& b, std::string& out) {
  std::size_t n = 0;
  while (n < a.size() && n < b.size() && a[n] == b[n]) ++n;
  out = a.substr(0, n);
  if (out.find('e') != std::string::npos) {
    out.clear();
    return 0;
  }
  if (!out.empty() && out.back() == '.') out.pop_back();
  int digits = 0;
  for (char c : out) digits += c >= '0' && c <= '9';
  return digits;
}

std::string truncate_digits(const std::string& s, int digits) {
  std::string out;
  int seen = 0;
  for (char c : s) {
    if (c >= '0' && c <= '9') {
      if (seen == digits) break;
      ++seen;
    }
    out.push_back(c);
  }
  if (!out.empty() && out.back() == '.') out.pop_back();
  return out;
}

}  // namespace

BoundReport bounds(const RecursionSystem& system, std::span<const ClassCountVector> vectors, int m,
                   int precision_digits) {
  require_stage(vectors, m);
  if (precision_digits < 1) throw std::invalid_argument("precision must be positive");
  const int work_digits = precision_digits + kGuardDigits;
  const mpfr_prec_t bits = bits_for_digits(work_digits);

  BoundReport r;
  r.family = system.family;
  r.m = m;
  r.precision_digits = precision_digits;
  const Real c = bound_prefactor(system.family, m, work_digits);

  r.lower = log_big(vectors[m].counts[finest_class_index(system)], work_digits);
  mpfr_mul(r.lower.get(), r.lower.get(), c.get(), MPFR_RNDN);
  r.upper = log_big(forest_count(vectors[m], system), work_digits);
  mpfr_mul(r.upper.get(), r.upper.get(), c.get(), MPFR_RNDN);

  try {
    r.certified_gap = convergence_certificate(system, vectors, m, work_digits);
  } catch (const std::domain_error&) {
    // small m: no certificate, the plain sandwich stands
    r.certified_gap = Real(bits);
    mpfr_sub(r.certified_gap.get(), r.upper.get(), r.lower.get(), MPFR_RNDU);
  }
  r.enclosure_lower = Real(bits);
  mpfr_sub(r.enclosure_lower.get(), r.upper.get(), r.certified_gap.get(), MPFR_RNDN);
  mpfr_max(r.enclosure_lower.get(), r.enclosure_lower.get(), r.lower.get(), MPFR_RNDN);

  r.z_estimate = Real(bits);
  mpfr_add(r.z_estimate.get(), r.enclosure_lower.get(), r.upper.get(), MPFR_RNDN);
  mpfr_div_2ui(r.z_estimate.get(), r.z_estimate.get(), 1, MPFR_RNDN);

  std::string prefix;
  const int shared = common_prefix(r.enclosure_lower.significant(work_digits),
                                   r.upper.significant(work_digits), prefix);
  r.certified_digits = std::min(shared, precision_digits);
  r.certified = truncate_digits(prefix, r.certified_digits);
  return r;
}

Real convergence_certificate(const RecursionSystem& system,
                             std::span<const ClassCountVector> vectors, int m, int digits) {
  require_stage(vectors, m);
  const Family& fam = system.family;
  require_supported(fam);
  const auto& v = vectors[m].counts;
  auto at = [&](const char* name) -> const BigInt& { return v[system.class_index(name)]; };

  BigInt numerator;
  unsigned long weight = 1;
  BigInt scale;  // certificate = -ln(1 - weight (numerator/f)^3) / scale
  if (fam.b == 2 && fam.d == 2) {
    numerator = at("t") + at("g");
    mpz_ui_pow_ui(scale.get_mpz_t(), 3, static_cast<unsigned long>(m + 1));
  } else if (fam.b == 3) {
    numerator = at("t") + at("g");
    weight = 7;
    mpz_ui_pow_ui(scale.get_mpz_t(), 6, static_cast<unsigned long>(m));
    scale *= 7;
  } else if (fam.b == 4) {
    numerator = at("t") + at("g");
    weight = 15;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(m));
    scale *= 12;
  } else if (fam.d == 3) {
    numerator = at("t") + 2 * at("g") + at("h") + at("p");
    weight = 7;
    mpz_ui_pow_ui(scale.get_mpz_t(), 4, static_cast<unsigned long>(m));
    scale *= 6;
  } else {
    numerator = at("t") + 4 * at("g") + 3 * at("h") + 3 * at("p") + 3 * at("q") + at("r");
    weight = 67;
    mpz_ui_pow_ui(scale.get_mpz_t(), 5, static_cast<unsigned long>(m + 1));
    scale *= 2;
  }

  const mpfr_prec_t bits = bits_for_digits(digits) + 32;
  Real x(bits), f(bits);
  mpfr_set_z(x.get(), numerator.get_mpz_t(), MPFR_RNDN);
  mpfr_set_z(f.get(), forest_count(vectors[m], system).get_mpz_t(), MPFR_RNDN);
  mpfr_div(x.get(), x.get(), f.get(), MPFR_RNDN);
  mpfr_pow_ui(x.get(), x.get(), 3, MPFR_RNDN);
  mpfr_mul_ui(x.get(), x.get(), weight, MPFR_RNDN);
  if (mpfr_cmp_ui(x.get(), 1) >= 0) {
    throw std::domain_error("certificate undefined: circuit-closing ratio reaches 1");
  }
  mpfr_neg(x.get(), x.get(), MPFR_RNDN);
  mpfr_log1p(x.get(), x.get(), MPFR_RNDN);
  mpfr_neg(x.get(), x.get(), MPFR_RNDN);
  mpfr_div_z(x.get(), x.get(), scale.get_mpz_t(), MPFR_RNDN);
  Real out(bits_for_digits(digits));
  mpfr_set(out.get(), x.get(), MPFR_RNDN);
  return out;
}

BigInt complete_graph_forest_count(int k) {
  BigInt total = 0;
  for (const auto& p : enumerate_partitions(k)) {
    BigInt count = 1;
    for (const auto& block : p.blocks()) {
      const auto size = static_cast<unsigned long>(block.size());
      if (size > 2) {
        BigInt trees;
        mpz_ui_pow_ui(trees.get_mpz_t(), size, size - 2);
        count *= trees;
      }
    }
    total += count;
  }
  return total;
}

Real naive_upper_bound(int d, int b, int digits) {
  Real out = [&] {
    if (b == 2 && d >= 2 && d <= 5) {
      Real r = log_big(complete_graph_forest_count(d + 1), digits);
      mpfr_mul_ui(r.get(), r.get(), 2, MPFR_RNDN);
      mpfr_div_ui(r.get(), r.get(), static_cast<unsigned long>(d + 1), MPFR_RNDN);
      return r;
    }
    if (d == 2 && (b == 0 || b >= 3)) {
      Real r = log_big(7, digits);
      if (b != 0) {
        mpfr_mul_ui(r.get(), r.get(), static_cast<unsigned long>(b + 2), MPFR_RNDN);
        mpfr_div_ui(r.get(), r.get(), static_cast<unsigned long>(b + 4), MPFR_RNDN);
      }
      return r;
    }
    throw std::invalid_argument("naive_upper_bound: unsupported family");
  }();
  return out;
}

// ---- tables ----------------------------------------------------------------

namespace {

// ln C(b+d-1, d) / ln b; b = 0 gives the limit 2 for d = 2.
Real dimension(int d, int b, int digits) {
  Real r(bits_for_digits(digits));
  if (b == 0) {
    mpfr_set_ui(r.get(), 2, MPFR_RNDN);
    return r;
  }
  BigInt binom;
  mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(b + d - 1),
               static_cast<unsigned long>(d));
  r = log_big(binom, digits);
  const Real lb = log_big(b, digits);
  mpfr_div(r.get(), r.get(), lb.get(), MPFR_RNDN);
  return r;
}

std::string strip_zeros(std::string s) {
  if (s.find('.') == std::string::npos) return s;
  while (s.back() == '0') s.pop_back();
  if (s.back() == '.') s.pop_back();
  return s;
}

RatioRow make_row(std::string key, int d, int b, const std::string& family,
                  const std::map<std::string, Real>& estimates,
                  const std::map<std::string, std::string>& tree_constants, int digits) {
  RatioRow row;
  row.key = std::move(key);
  const std::string missing = "-";
  row.cells.push_back(strip_zeros(dimension(d, b, digits).fixed(3)));
  const Real upper = naive_upper_bound(d, b, digits);

  std::optional<Real> tree;
  if (auto it = tree_constants.find(family); it != tree_constants.end()) {
    tree = real_from_decimal(it->second, digits);
  }
  const Real* z = nullptr;
  if (auto it = estimates.find(family); it != estimates.end()) z = &it->second;

  row.cells.push_back(tree ? tree->fixed(9) : missing);
  row.cells.push_back(z ? z->fixed(9) : missing);
  row.cells.push_back(upper.fixed(9));
  if (tree && z) {
    Real q(bits_for_digits(digits));
    mpfr_div(q.get(), tree->get(), z->get(), MPFR_RNDN);
    row.cells.push_back(q.fixed(10));
  } else {
    row.cells.push_back(missing);
  }
  if (z) {
    Real q(bits_for_digits(digits));
    mpfr_div(q.get(), z->get(), upper.get(), MPFR_RNDN);
    row.cells.push_back(q.fixed(10));
  } else {
    row.cells.push_back(missing);
  }
  return row;
}

}  // namespace

RatioTable ratio_table(const std::map<std::string, Real>& estimates,
                       const std::map<std::string, std::string>& tree_constants, int digits) {
  RatioTable table;
  for (int d = 2; d <= 5; ++d) {
    table.dimension_rows.push_back(make_row(std::to_string(d), d, 2, "SG_" + std::to_string(d),
                                            estimates, tree_constants, digits));
  }
  for (int b : {3, 4, 0}) {
    const std::string key = b == 0 ? "inf" : std::to_string(b);
    const std::string family = b == 0 ? "SG_{2,inf}" : Family{2, b}.name();
    table.side_length_rows.push_back(
        make_row(key, 2, b, family, estimates, tree_constants, digits));
  }
  return table;
}

nlohmann::ordered_json to_json(const BoundReport& r) {
  nlohmann::ordered_json j;
  j["family"] = {{"name", r.family.name()}, {"d", r.family.d}, {"b", r.family.b}};
  j["m"] = r.m;
  j["precision_digits"] = r.precision_digits;
  const int shown = r.precision_digits + 3;
  j["lower"] = r.lower.significant(shown);
  j["upper"] = r.upper.significant(shown);
  j["enclosure_lower"] = r.enclosure_lower.significant(shown);
  j["z_estimate"] = r.z_estimate.significant(shown);
  j["certified"] = r.certified;
  j["certified_digits"] = r.certified_digits;
  j["certified_gap"] = r.certified_gap.scientific(6);
  return j;
}

void write_markdown(std::ostream& out, const BoundReport& r) {
  const int shown = r.precision_digits + 3;
  out << "| family | m | lower | upper | certified z | digits | gap bound |\n"
      << "|---|---:|---|---|---|---:|---|\n"
      << "| " << r.family.name() << " | " << r.m << " | " << r.lower.significant(shown) << " | "
      << r.upper.significant(shown) << " | " << r.certified << " | " << r.certified_digits
      << " | " << r.certified_gap.scientific(6) << " |\n";
}

namespace {

const char* const kColumns[] = {"D", "tree_lower", "z", "upper", "tree_lower_over_z",
                                "z_over_upper"};

nlohmann::ordered_json rows_json(const std::vector<RatioRow>& rows, const char* key) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& row : rows) {
    nlohmann::ordered_json j;
    j[key] = row.key;
    for (std::size_t i = 0; i < row.cells.size(); ++i) j[kColumns[i]] = row.cells[i];
    arr.push_back(j);
  }
  return arr;
}

void rows_markdown(std::ostream& out, const std::vector<RatioRow>& rows, const char* key) {
  out << "| " << key << " | D | tree lower | z | upper | tree/z | z/upper |\n"
      << "|---|---|---|---|---|---|---|\n";
  for (const auto& row : rows) {
    out << "| " << row.key << " |";
    for (const auto& c : row.cells) out << ' ' << c << " |";
    out << '\n';
  }
}

}  // namespace

nlohmann::ordered_json to_json(const RatioTable& table) {
  nlohmann::ordered_json j;
  j["dimension_rows"] = rows_json(table.dimension_rows, "d");
  j["side_length_rows"] = rows_json(table.side_length_rows, "b");
  return j;
}

void write_markdown(std::ostream& out, const RatioTable& table) {
  rows_markdown(out, table.dimension_rows, "d");
  out << '\n';
  rows_markdown(out, table.side_length_rows, "b");
}

}  // namespace sgforest
