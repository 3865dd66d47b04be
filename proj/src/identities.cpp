#include "sgforest/identities.hpp"

#include <stdexcept>
#include <utility>

namespace sgforest {

namespace {

using Weights = std::vector<std::pair<const char*, long>>;

Polynomial combination(const RecursionSystem& system, const Weights& weights) {
  std::vector<long> w(system.classes.size(), 0);
  for (const auto& [name, weight] : weights) {
    const int i = system.class_index(name);
    if (i < 0) throw std::logic_error(std::string("shorthand refers to missing class ") + name);
    w[i] += weight;
  }
  return Polynomial::linear(w);
}

// Shows a few differing terms.
std::string difference_summary(const Polynomial& expected, const Polynomial& actual,
                               const std::vector<std::string>& names) {
  Polynomial diff = actual - expected;
  std::string s = diff.to_string(names);
  if (s.size() > 240) s = s.substr(0, 240) + " ...";
  return "actual - expected = " + s;
}

}  // namespace

std::map<std::string, Polynomial> shorthand_bindings(const RecursionSystem& system) {
  std::map<std::string, Polynomial> out;
  out.emplace("f", forest_linear_form(system));
  const Family& fam = system.family;
  if (fam.d == 2 && fam.b == 4) {
    out.emplace("tg", combination(system, {{"t", 1}, {"g", 1}}));
  }
  if (fam.d == 4 && fam.b == 2) {
    out.emplace("tr", combination(system, {{"t", 1}, {"g", 4}, {"h", 3}, {"p", 3}, {"q", 3}, {"r", 1}}));
    out.emplace("tq", combination(system, {{"t", 1}, {"g", 1}, {"h", 2}, {"q", 1}}));
    out.emplace("tp", combination(system, {{"t", 1}, {"g", 2}, {"h", 1}, {"p", 1}}));
    out.emplace("th", combination(system, {{"t", 1}, {"h", 1}}));
  }
  return out;
}

Polynomial forest_linear_form(const RecursionSystem& system) {
  return Polynomial::linear(system.multiplicities());
}

Polynomial forest_polynomial(const RecursionSystem& system) {
  Polynomial sum(static_cast<int>(system.classes.size()));
  for (std::size_t i = 0; i < system.classes.size(); ++i) {
    sum += system.polynomials[i] * BigInt(system.classes[i].multiplicity);
  }
  return sum;
}

IdentityReport f_polynomial(const RecursionSystem& system, const std::string& forest_next) {
  const auto names = system.variable_names();
  IdentityReport report;
  Polynomial golden;
  try {
    golden = parse_polynomial(forest_next, names, shorthand_bindings(system));
  } catch (const std::invalid_argument& e) {
    report.detail = std::string("cannot parse closed form: ") + e.what();
    return report;
  }
  const Polynomial derived = forest_polynomial(system);
  report.holds = golden == derived;
  report.detail = report.holds
                      ? std::to_string(derived.terms().size()) + " terms agree"
                      : difference_summary(golden, derived, names);
  return report;
}

IdentityReport compare_components(const RecursionSystem& system,
                                  const std::map<std::string, std::string>& classes_next) {
  const auto names = system.variable_names();
  IdentityReport report;
  if (classes_next.size() != system.classes.size()) {
    report.detail = "published recursions cover " + std::to_string(classes_next.size()) +
                    " of " + std::to_string(system.classes.size()) + " classes";
    return report;
  }
  std::size_t terms = 0;
  for (std::size_t i = 0; i < system.classes.size(); ++i) {
    const auto& name = system.classes[i].name;
    auto it = classes_next.find(name);
    if (it == classes_next.end()) {
      report.detail = "no published recursion for " + name;
      return report;
    }
    Polynomial golden;
    try {
      golden = parse_polynomial(it->second, names);
    } catch (const std::invalid_argument& e) {
      report.detail = name + ": " + e.what();
      return report;
    }
    if (!(golden == system.polynomials[i])) {
      report.detail = name + ": " + difference_summary(golden, system.polynomials[i], names);
      return report;
    }
    terms += golden.terms().size();
  }
  report.holds = true;
  report.detail = std::to_string(terms) + " terms agree";
  return report;
}

IdentityReport conservation(const RecursionSystem& system) {
  IdentityReport report;
  const Polynomial total = forest_polynomial(system) + system.rejected;
  const Polynomial expected = forest_linear_form(system).pow(system.copy_count);
  if (!(total == expected)) {
    report.detail = "polynomial identity fails: " +
                    difference_summary(expected, total, system.variable_names());
    return report;
  }
  const std::vector<BigInt> ones(system.classes.size(), BigInt(1));
  const BigInt accepted = forest_polynomial(system).evaluate(ones);
  const BigInt rejected = system.rejected.evaluate(ones);
  BigInt states;
  mpz_ui_pow_ui(states.get_mpz_t(), bell_number(system.family.corner_count()), system.copy_count);
  report.holds = accepted + rejected == states;
  report.detail = to_decimal(accepted) + " accepted + " + to_decimal(rejected) + " rejected " +
                  (report.holds ? "= " : "!= ") + to_decimal(states);
  return report;
}

IdentityReport forest_closed_form_by_stage(const RecursionSystem& system,
                                           const std::string& forest_next,
                                           std::span<const ClassCountVector> vectors) {
  IdentityReport report;
  Polynomial golden;
  try {
    golden = parse_polynomial(forest_next, system.variable_names(), shorthand_bindings(system));
  } catch (const std::invalid_argument& e) {
    report.detail = std::string("cannot parse closed form: ") + e.what();
    return report;
  }
  for (std::size_t i = 0; i + 1 < vectors.size(); ++i) {
    if (golden.evaluate(vectors[i].counts) != forest_count(vectors[i + 1], system)) {
      report.detail = "mismatch at stage " + std::to_string(vectors[i + 1].stage);
      return report;
    }
  }
  report.holds = true;
  report.detail = std::to_string(vectors.size() > 0 ? vectors.size() - 1 : 0) + " stages agree";
  return report;
}

}  // namespace sgforest
