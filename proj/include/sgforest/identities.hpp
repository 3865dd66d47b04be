#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "sgforest/deriver.hpp"
#include "sgforest/evaluator.hpp"
#include "sgforest/polynomial.hpp"

namespace sgforest {

// Named linear combinations of the class variables usable in golden
// expressions: f for every family, tg for SG_{2,4}, tr/tq/tp/th for SG_4.
std::map<std::string, Polynomial> shorthand_bindings(const RecursionSystem& system);

// f = sum over classes of multiplicity * x_class
Polynomial forest_linear_form(const RecursionSystem& system);

// sum over classes of multiplicity * class polynomial
Polynomial forest_polynomial(const RecursionSystem& system);

struct IdentityReport {
  bool holds = false;
  std::string detail;
};

// Expands `forest_next` (text over class names and shorthands) and compares
// it with forest_polynomial(system).
IdentityReport f_polynomial(const RecursionSystem& system, const std::string& forest_next);

// Per-class comparison against published component recursions.
IdentityReport compare_components(const RecursionSystem& system,
                                  const std::map<std::string, std::string>& classes_next);

// forest_polynomial + rejected == (sum multiplicity * x)^copies, and the
// all-ones evaluation equals Bell(d+1)^copies.
IdentityReport conservation(const RecursionSystem& system);

// Evaluates `forest_next` at each vector but the last and compares with the
// forest count of the next vector.
IdentityReport forest_closed_form_by_stage(const RecursionSystem& system,
                                           const std::string& forest_next,
                                           std::span<const ClassCountVector> vectors);

}  // namespace sgforest
