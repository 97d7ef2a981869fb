#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "matlog/consequence.hpp"
#include "matlog/heyting.hpp"
#include "matlog/kripke.hpp"

namespace matlog {

/// Finite quotient of the formula algebra: equivalence classes with canonical
/// keys and representative formulas, operation tables over class indices, the
/// unit (theorem) class, and the induced order.
struct quotient_algebra {
  std::vector<std::string> keys;
  std::vector<formula> representatives;
  finite_algebra algebra;  // element names are the keys
  int unit;
  int zero;
  std::vector<std::pair<int, int>> order;  // i ≤ j pairs, i ≠ j

  int size() const { return static_cast<int>(keys.size()); }
};

/// Free Boolean algebra of rank k ≤ 3 as truth-table classes over the first k
/// generators p, q, r; canonical key = the class's truth-table row string,
/// representative = canonical DNF. 2^(2^k) classes.
quotient_algebra lt_classical(int rank);

/// Class index of f: its truth-table key. Throws rank_exceeded when f uses
/// variables beyond the rank's generators.
int lt_class_of(const quotient_algebra& q, int rank, const formula& f);

/// The quotient route to the same class: evaluation through the class tables
/// under the Lindenbaum valuation p ↦ [p].
int lt_eval(const quotient_algebra& q, int rank, const formula& f);

/// Rieger–Nishimura prefix P_0..P_count plus the unit class: order and
/// partial ∧,∨,→ tables decided by countermodel search at the world budget.
/// Table entries falling outside the prefix are -1; identification conflicts
/// the budget cannot settle are surfaced in `unresolved`, never guessed.
struct rn_lattice_result {
  std::vector<std::string> keys;  // "P0".."Pn", "1"
  std::vector<formula> representatives;
  std::vector<std::pair<int, int>> order;          // i ≤ j, i ≠ j
  std::map<std::string, std::vector<int>> tables;  // "∧", "∨", "→"
  std::vector<std::pair<int, int>> unresolved;
  int count;
  int budget;
  int unit;
  int zero;

  int size() const { return static_cast<int>(keys.size()); }
};

rn_lattice_result rn_lattice(int count, int budget = 6);

struct quotient_check_report {
  std::vector<identity_report> identity_suites;
  property_report lindenbaum_criterion;  // class of f is the unit iff f is a theorem
  bool ok() const;
};

/// Identity suites over the class tables plus the Lindenbaum-valuation
/// criterion on sampled formulas, with two-valued validity as the theoremhood
/// oracle on an independent route.
quotient_check_report verify_lt_classical(const quotient_algebra& q, int rank,
                                          std::uint64_t cases, std::uint64_t seed);

/// Heyting identities over the resolved part of the prefix tables, plus the
/// criterion that a representative names the unit class iff it has no
/// countermodel at the budget.
quotient_check_report verify_rn_lattice(const rn_lattice_result& lattice);

}  // namespace matlog
