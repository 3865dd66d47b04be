#include "sgforest/verify.hpp"

#include <algorithm>

#include "sgforest/identities.hpp"
#include "sgforest/oracle.hpp"

namespace sgforest {

namespace {

std::string digits_only(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c >= '0' && c <= '9') out.push_back(c);
  }
  return out;
}

bool well_formed(const std::string& printed) { return grouped_decimal(parse_decimal(printed)) == printed; }

const ClassCountVector* at_stage(std::span<const ClassCountVector> vectors, int stage) {
  for (const auto& v : vectors) {
    if (v.stage == stage) return &v;
  }
  return nullptr;
}

Check make_check(std::string name, bool passed, std::string detail) {
  return Check{std::move(name), passed, std::move(detail)};
}

}  // namespace

TableComparison compare_table(const RecursionSystem& system,
                              std::span<const ClassCountVector> vectors, const GoldenTable& table) {
  TableComparison out;
  for (int stage : table.stages) {
    const ClassCountVector* v = at_stage(vectors, stage);
    const std::string where = table.family.name() + " n=" + std::to_string(stage);
    if (!v) {
      out.mismatches.push_back(where + ": stage not computed");
      continue;
    }
    const BigInt f = forest_count(*v, system);

    // Printed class cells weighted by multiplicity, skipping one class.
    auto printed_sum_without = [&](int skip) {
      BigInt sum = 0;
      for (std::size_t i = 0; i < system.classes.size(); ++i) {
        if (static_cast<int>(i) == skip) continue;
        sum += system.classes[i].multiplicity * parse_decimal(table.cell(system.classes[i].name, stage));
      }
      return sum;
    };

    for (const auto& row : table.row_names) {
      const std::string& printed = table.cell(row, stage);
      const bool is_f = row == "f";
      const int index = is_f ? -1 : system.class_index(row);
      const BigInt& ours = is_f ? f : v->counts[index];
      const std::string computed = grouped_decimal(ours);
      if (printed == computed) {
        ++out.exact;
        continue;
      }
      const std::string cell = where + " " + row + ": printed " + printed + ", computed " + computed;
      if (is_f) {
        if (digits_only(printed) == digits_only(computed) && printed_sum_without(-1) == f) {
          out.anomalies.push_back(cell + " (digit grouping; printed class cells sum to computed f)");
          continue;
        }
      } else {
        const std::string& printed_f = table.cell("f", stage);
        if (well_formed(printed_f) && parse_decimal(printed_f) == f) {
          const BigInt rest = parse_decimal(printed_f) - printed_sum_without(index);
          if (rest == system.classes[index].multiplicity * ours) {
            out.anomalies.push_back(cell +
                                    " (printed f and other printed cells imply the computed value)");
            continue;
          }
        }
      }
      out.mismatches.push_back(cell);
    }
  }
  return out;
}

Check check_growth_constant(const BoundReport& report, const GoldenGrowthConstant& golden) {
  const std::string name = "growth constant " + report.family.name() + " m=" + std::to_string(report.m);
  const std::string printed = golden.value;
  const int printed_digits = static_cast<int>(digits_only(printed).size());
  const int needed = std::max(golden.min_certified_digits, printed_digits);
  const bool prefix = report.certified.compare(0, printed.size(), printed) == 0;
  const bool ok = prefix && report.certified_digits >= needed;
  return make_check(name, ok,
                    "certified " + report.certified + " (" + std::to_string(report.certified_digits) +
                        " digits), printed " + printed);
}

std::vector<Check> verify_family(const Family& family, const GoldenData& golden) {
  require_supported(family);
  std::vector<Check> checks;
  const std::string fam = family.name();
  const CompositionSchema schema = composition_schema(family);
  const RecursionSystem system = derive(schema);

  const SymmetryReport sym = symmetrize_check(schema);
  checks.push_back(make_check(fam + " symmetry", sym.consistent,
                              std::to_string(sym.raw_states) + " states in " +
                                  std::to_string(sym.classes) + " classes" +
                                  (sym.consistent ? "" : ": " + sym.mismatches.front())));

  const IdentityReport cons = conservation(system);
  checks.push_back(make_check(fam + " conservation", cons.holds, cons.detail));

  bool shape = true;
  for (const auto& p : system.polynomials) {
    shape = shape && p.is_homogeneous(system.copy_count) && p.has_nonnegative_coefficients();
  }
  checks.push_back(make_check(fam + " homogeneous nonnegative", shape,
                              "degree " + std::to_string(system.copy_count)));

  const GoldenRecursion* rec = golden.recursion(family);
  const GoldenTable* table = golden.table(family);
  const GoldenGrowthConstant* gc = golden.growth_constant(family);

  int last_stage = default_bound_stage(family);
  if (table) last_stage = std::max(last_stage, table->stages.back());
  const auto vectors = iterate(system, initial_vector(system), last_stage);

  if (rec) {
    if (!rec->classes_next.empty()) {
      const IdentityReport comp = compare_components(system, rec->classes_next);
      checks.push_back(make_check(fam + " component recursions", comp.holds, comp.detail));
    }
    const IdentityReport fid = f_polynomial(system, rec->forest_next);
    checks.push_back(make_check(fam + " forest closed form", fid.holds, fid.detail));
    const IdentityReport staged = forest_closed_form_by_stage(system, rec->forest_next, vectors);
    checks.push_back(make_check(fam + " forest closed form by stage", staged.holds, staged.detail));
  } else {
    checks.push_back(make_check(fam + " golden recursions", false, "missing from golden data"));
  }

  if (table) {
    const TableComparison cmp = compare_table(system, vectors, *table);
    std::string detail = std::to_string(cmp.exact) + " cells exact";
    for (const auto& a : cmp.anomalies) detail += "; anomaly " + a;
    for (const auto& m : cmp.mismatches) detail += "; MISMATCH " + m;
    checks.push_back(make_check(fam + " printed table", cmp.passed(), detail));
  } else {
    checks.push_back(make_check(fam + " printed table", false, "missing from golden data"));
  }

  if (auto it = golden.initial_vectors.find(family.d); it != golden.initial_vectors.end()) {
    bool ok = parse_decimal(it->second.at("f")) == forest_count(vectors[0], system);
    for (std::size_t i = 0; i < system.classes.size(); ++i) {
      auto c = it->second.find(system.classes[i].name);
      ok = ok && c != it->second.end() && parse_decimal(c->second) == vectors[0].counts[i];
    }
    checks.push_back(make_check(fam + " initial vector", ok,
                                "f(0) = " + to_decimal(forest_count(vectors[0], system))));
  }

  {
    const ExplicitGraph k = complete_graph(family.corner_count());
    const ClassifiedForestCount c0 = count_forests_by_class(k);
    const bool ok = class_counts(c0, system.classes) == vectors[0].counts;
    checks.push_back(make_check(fam + " oracle stage 0", ok, "K_" + std::to_string(k.vertex_count) +
                                                                 " total " + to_decimal(c0.total)));
  }

  if (edge_count(family, 1) <= kExhaustiveEdgeCap) {
    const ClassifiedForestCount c1 = count_forests_by_class(explicit_graph(family, 1));
    const bool ok = class_counts(c1, system.classes) == vectors[1].counts;
    checks.push_back(make_check(fam + " oracle stage 1", ok,
                                "exhaustive total " + to_decimal(c1.total)));
  } else if (edge_count(family, 1) <= kMemoizedEdgeCap) {
    const BigInt total = count_forests_memoized(explicit_graph(family, 1));
    checks.push_back(make_check(fam + " oracle stage 1", total == forest_count(vectors[1], system),
                                "memoized total " + to_decimal(total)));
  } else {
    checks.push_back(make_check(fam + " oracle stage 1", true,
                                "skipped: " + to_decimal(edge_count(family, 1)) +
                                    " edges exceed the oracle cap"));
  }

  if (gc) {
    const BoundReport report = bounds(system, vectors, gc->m, default_precision(family));
    checks.push_back(check_growth_constant(report, *gc));
  } else {
    checks.push_back(make_check(fam + " growth constant", false, "missing from golden data"));
  }
  return checks;
}

}  // namespace sgforest
