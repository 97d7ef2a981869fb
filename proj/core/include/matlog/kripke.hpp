#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "matlog/heyting.hpp"

namespace matlog {

/// Kripke model for Int: monotone valuation over a finite poset of worlds.
/// Each variable's extension is an up-closed world set (bitmask).
struct kripke_model {
  poset frame;
  std::map<std::string, std::uint64_t> extension;
};

/// Standard forcing clauses; definitionally equivalent to evaluation in
/// upset_algebra(frame), which the tests exercise as the correctness contract.
bool forces(const kripke_model& m, int world, const formula& f);

struct pointed_model {
  kripke_model model;
  int world;
};

/// Posets on up to `n` elements, one representative per isomorphism class,
/// cached per size. Supported (and cached) for n ≤ 7.
const std::vector<poset>& posets_up_to_iso(int n);

/// First pointed countermodel of f over frames with at most max_worlds
/// worlds, in the canonical enumeration order, or nullopt.
std::optional<pointed_model> int_countermodel(const formula& f, int max_worlds,
                                              const search_options& opts = {});

/// Whether f→g holds at every world of every model over frames of at most
/// max_worlds worlds (a budget-relative Int-entailment check).
bool int_entails_up_to(const formula& f, const formula& g, int max_worlds);

// --- the one-variable Rieger–Nishimura ladder ------------------------------

/// P_0 = p∧¬p, P_1 = ¬p, P_2 = p, P_{2n+3} = P_{2n+1}→P_{2n},
/// P_{2n+4} = P_{2n+1}∨P_{2n+2}.
formula rn_formula(int index);
/// P_∞ = p→p, the unit.
formula rn_top();

struct rn_class {
  enum class kind { p_index, top, unresolved } what;
  int index = -1;  // for kind::p_index

  static rn_class p(int i) { return {kind::p_index, i}; }
  static rn_class top() { return {kind::top, -1}; }
  static rn_class unresolved() { return {kind::unresolved, -1}; }
  bool operator==(const rn_class&) const = default;
  std::string str() const;
};

/// Locates the unique i ≤ max_index with no countermodel to f↔P_i (or f↔P_∞)
/// within the world budget; Unresolved when none or several survive.
rn_class rn_classify(const formula& f, int max_index = 12, int max_worlds = 6);

/// Values of P_0..P_max (and P_∞) at every (frame, p-extension) pair with at
/// most max_worlds worlds; the backbone for the lattice-prefix construction.
/// slot(i, j) is the algebra element index of P_i at sample point j.
class rn_value_table {
 public:
  rn_value_table(int max_index, int max_worlds);

  int max_index() const { return max_index_; }
  std::size_t points() const { return point_algebra_.size(); }
  int value(int p_index, std::size_t point) const;  // p_index = -1 means P_∞
  /// Element-wise value vector of an arbitrary 1-variable formula.
  std::vector<int> values_of(const formula& f) const;

  bool equal(const std::vector<int>& a, const std::vector<int>& b) const { return a == b; }
  /// a ≤ b in every sampled algebra.
  bool below(const std::vector<int>& a, const std::vector<int>& b) const;
  const std::vector<int>& values(int p_index) const;

  /// Pointed countermodel witnessing "a ≤ b fails", if any.
  std::optional<pointed_model> refute_below(const std::vector<int>& a,
                                            const std::vector<int>& b) const;

 private:
  int max_index_;
  int max_worlds_;
  std::vector<int> point_algebra_;            // per point: index into algebras_
  std::vector<int> point_element_;            // per point: element index
  std::vector<std::uint64_t> point_extension_;  // per point: p's up-set
  std::vector<heyting_algebra> algebras_;
  std::vector<poset> frames_;
  std::vector<std::vector<std::uint64_t>> upsets_;  // per algebra
  std::vector<std::vector<int>> p_values_;    // [index][point]
  std::vector<int> top_values_;
};

}  // namespace matlog
