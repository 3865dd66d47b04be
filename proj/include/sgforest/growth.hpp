#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <mpfr.h>

#include <json.hpp>

#include "sgforest/bigint.hpp"
#include "sgforest/deriver.hpp"
#include "sgforest/evaluator.hpp"

namespace sgforest {

// Owning handle for an mpfr_t.
class Real {
 public:
  explicit Real(mpfr_prec_t bits);
  Real(const Real& other);
  Real(Real&& other) noexcept;
  Real& operator=(const Real& other);
  Real& operator=(Real&& other) noexcept;
  ~Real();

  mpfr_ptr get() { return value_; }
  mpfr_srcptr get() const { return value_; }
  mpfr_prec_t precision() const { return mpfr_get_prec(value_); }
  double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }

  // `digits` significant digits, truncated toward zero; "1.2473371993",
  // or "3.0123e-7" style for values outside [1, 10).
  std::string significant(int digits) const;
  // `decimals` places after the point, ties away from zero.
  std::string fixed(int decimals) const;
  // d.ddde[+-]x with `digits` significant digits, round to nearest.
  std::string scientific(int digits) const;

 private:
  mpfr_t value_;
  bool live_ = false;
};

inline constexpr int kGuardDigits = 15;

// Working precision in bits for `digits` decimal digits.
mpfr_prec_t bits_for_digits(int digits);

// ln x for x >= 1, accurate to `digits` significant decimal digits.
// Throws std::domain_error for x < 1.
Real log_big(const BigInt& x, int digits);

// Parses a decimal literal such as "1.048594857".
Real real_from_decimal(const std::string& text, int digits);

struct BoundReport {
  Family family;
  int m = 0;
  int precision_digits = 12;
  Real lower{64};
  Real upper{64};
  Real certified_gap{64};
  // max(lower, upper - certified_gap): z lies in [enclosure_lower, upper].
  Real enclosure_lower{64};
  // Midpoint of the enclosure.
  Real z_estimate{64};
  // Leading significant digits shared by both enclosure ends, capped at
  // precision_digits.
  std::string certified;
  int certified_digits = 0;
};

// Stage-m bound prefactor: 2/(d+1)^(m+1) for b = 2, (b+2)/((b+4) T^m) for
// d = 2 with T = b(b+1)/2.
Real bound_prefactor(const Family& family, int m, int digits);

// Default m per family and default reported digits.
int default_bound_stage(const Family& family);
int default_precision(const Family& family);

// Class with every corner in its own block (h, q, s).
int finest_class_index(const RecursionSystem& system);

// vectors[i].stage must equal i for i <= m. Throws std::out_of_range when m
// exceeds the computed stages. Where the certificate is undefined the
// enclosure is the plain [lower, upper].
BoundReport bounds(const RecursionSystem& system, std::span<const ClassCountVector> vectors, int m,
                   int precision_digits);

// Family-specific bound on upper(m) - z, from the stage-m ratio of the
// classes that can close a circuit. Throws std::domain_error when the
// log argument is not positive.
Real convergence_certificate(const RecursionSystem& system,
                             std::span<const ClassCountVector> vectors, int m, int digits);

// N_SF(K_k) = sum over partitions of prod |B|^(|B|-2).
BigInt complete_graph_forest_count(int k);

// 2/(d+1) ln N_SF(K_{d+1}) for b = 2 (d up to 5); (b+2)/(b+4) ln 7 for
// d = 2. b = 0 stands for the b -> infinity limit, ln 7.
Real naive_upper_bound(int d, int b, int digits);

struct RatioRow {
  std::string key;  // d or b value, "inf" for the limit row
  std::vector<std::string> cells;  // D, tree, z, upper, tree/z, z/upper
};

struct RatioTable {
  std::vector<RatioRow> dimension_rows;
  std::vector<RatioRow> side_length_rows;
};

// Columns as in the published tables; "-" where a value is unavailable.
// z values are taken from `estimates` keyed by family name; tree constants
// are fixtures keyed the same way.
RatioTable ratio_table(const std::map<std::string, Real>& estimates,
                       const std::map<std::string, std::string>& tree_constants, int digits);

nlohmann::ordered_json to_json(const BoundReport& report);
void write_markdown(std::ostream& out, const BoundReport& report);
nlohmann::ordered_json to_json(const RatioTable& table);
void write_markdown(std::ostream& out, const RatioTable& table);

}  // namespace sgforest
