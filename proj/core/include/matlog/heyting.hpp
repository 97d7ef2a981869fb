#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "matlog/matrix.hpp"

namespace matlog {

/// Finite poset over worlds 0..n-1. `up[i]` is the bitmask of elements ≥ i,
/// including i itself.
struct poset {
  int n = 0;
  std::vector<std::uint64_t> up;

  bool leq(int a, int b) const { return (up[a] >> b) & 1; }
  /// Covering pairs (transitive reduction), ascending.
  std::vector<std::pair<int, int>> covers() const;
};

/// Builds a poset from strict-order pairs (a < b); throws bad_parameter on
/// cycles or out-of-range indices.
poset make_poset(int n, const std::vector<std::pair<int, int>>& less_pairs);

/// A finite algebra in the Heyting signature with its unit and zero.
struct heyting_algebra {
  finite_algebra algebra;
  int unit;
  int zero;
};

matrix to_matrix(const heyting_algebra& h, std::string name = "");

/// Up-set algebra of a poset: carrier = up-closed subsets, ∧ = ∩, ∨ = ∪,
/// U→V = largest up-set W with W∩U ⊆ V, ¬U = U→∅. Throws too_large past 12
/// elements. Element names encode the member worlds ("{0,2}").
heyting_algebra upset_algebra(const poset& p);
/// The up-sets themselves, as bitmasks aligned with the algebra's elements.
std::vector<std::uint64_t> upsets_of(const poset& p);

/// Expands a ⟨∧,∨,¬,1⟩ algebra that satisfies the Boolean identity suites
/// with x→y := ¬x∨y (and ↔ when absent). Throws not_boolean.
heyting_algebra boolean_to_heyting(const finite_algebra& b);

struct identity_item {
  std::string name;
  bool holds;
  std::string witness;  // element tuple when the identity fails
};

struct identity_report {
  std::string suite;
  std::vector<identity_item> items;
  bool all() const;
  bool holds(const std::string& name) const;  // throws bad_parameter if unknown
};

/// suite ∈ {lattice_l1_l4, bounded_b1, boolean_b2, heyting_h1_h6,
/// int_props_a_h, derived_eqs}; exhaustive over all element tuples. The unit
/// (where a suite needs it) is located via x→x, or x∨¬x when → is absent.
identity_report check_identities(const finite_algebra& a, const std::string& suite);
identity_report check_identities(const finite_algebra& a, const std::string& suite,
                                 int unit);

/// Full disjunctive/conjunctive normal form over an explicit generator list
/// (at most 3); the result is two-valued-equivalent to f. A contradiction's
/// DNF is g∧¬g over the first generator, a tautology's CNF is g∨¬g.
enum class normal_form_kind { dnf, cnf };
formula normal_form(const formula& f, normal_form_kind kind,
                    const std::vector<std::string>& generators);
formula normal_form(const formula& f, normal_form_kind kind);  // generators = variables(f)

/// Normal form of an explicit truth table; rows[i] is the value at the
/// assignment where generator j reads bit (k-1-j) of i.
formula normal_form_of_table(const std::vector<bool>& rows, normal_form_kind kind,
                             const std::vector<std::string>& generators);

}  // namespace matlog
