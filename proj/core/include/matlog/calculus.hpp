#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "matlog/matrix.hpp"
#include "matlog/substitution.hpp"

namespace matlog {

/// Structural rule: metaformula premises and conclusion. Premiseless rules
/// are axiom schemata.
struct rule {
  std::string name;
  std::vector<formula> premises;
  formula conclusion;
};

struct calculus {
  std::string name;
  std::vector<rule> rules;
  const rule* find(const std::string& rule_name) const;
};

/// hilbert_cl (ax1–ax10 + MP) | hilbert_int (ax1–ax9, ax11 + MP) |
/// hilbert_p (ax1–ax8 + MP) | hilbert_lc (ax1–ax9, ax11, ax12 + MP) |
/// nd_rules (a-i..a-iv, b-i..b-iv).
calculus builtin_calculus(const std::string& name);
/// ax1..ax12 as premiseless rules; modus ponens is rule "b-iii" (alias "MP").
rule axiom_schema(int k);

/// Step-justified derivation of its last step from the premise set.
struct derivation {
  struct premise_tag {
    bool operator==(const premise_tag&) const = default;
  };
  struct rule_app {
    std::string rule;
    std::vector<std::size_t> from;         // indices of earlier steps
    std::optional<instantiation> inst;     // recorded instantiation, if any
  };
  struct step {
    formula f;
    std::variant<premise_tag, rule_app> by;
  };
  std::vector<formula> premises;
  std::vector<step> steps;
};

struct verification {
  bool ok;
  std::size_t at = 0;      // failing step / preorder node index
  std::string reason;

  static verification pass() { return {true, 0, ""}; }
  static verification failure(std::size_t at, std::string reason) {
    return {false, at, std::move(reason)};
  }
};

/// Verified iff every step is justified and the last step equals goal.
/// Rule applications use the recorded instantiation when present and are
/// re-derived through matching otherwise.
verification check_derivation(const calculus& c, const derivation& d, const formula& goal);

/// Confirmation tree for the hyperrule system: each node asserts a sequent
/// X ⊢ goal justified by an embedded derivation (type 1), a hyperrule
/// c-i/c-ii/c-iii over child confirmations (type 2), or child sequents
/// discharged through a derivation from X plus the children's goals (type 3).
struct confirmation {
  std::vector<formula> premises;  // X
  formula goal;
  enum class kind { derivation, hyperrule, composition } how;
  std::string hyperrule;                // "c-i" | "c-ii" | "c-iii" (kind::hyperrule)
  std::vector<confirmation> children;   // hyperrule and composition nodes
  std::optional<derivation> embedded;   // derivation and composition nodes
};

/// Embedded derivations are checked against nd_rules (the plain rules of the
/// system); node indices in failures are preorder positions.
verification check_confirmation(const confirmation& c);

struct rule_soundness {
  std::string rule;
  bool sound;
  std::optional<valuation> witness;  // premises designated, conclusion not
  std::uint64_t evaluations;
};

/// Designated-preservation of every rule, exhaustively over valuations of the
/// rule's metavariables (read as variables) when the budget permits.
std::vector<rule_soundness> soundness_check(const calculus& c, const matrix& m,
                                            const search_options& opts = {});

/// Basic Horn sentence of a rule: ∀…∀((D(ψ1)&…&D(ψn)) ⇒ D(φ)) with
/// metavariables rendered as individual variables x,y,z,… in order of first
/// occurrence.
std::string rule_to_horn(const rule& r);

struct search_limits {
  std::size_t max_steps = 40;
  /// Cap on the degree of formulas substituted for metavariables when rules
  /// are instantiated during search; -1 means degree(goal) + 4.
  int max_instantiation_degree = -1;
};

/// Bounded goal-directed search for a derivation; NotFound (nullopt) is not a
/// non-derivability proof. Deterministic for fixed limits.
std::optional<derivation> bounded_search(const calculus& c, const std::vector<formula>& X,
                                         const formula& goal, const search_limits& limits = {});

struct gamma_star_report {
  int m;                              // number of instantiated premises
  std::string refuting_matrix;        // godel(m+3)
  std::vector<formula> premises;
  formula conclusion;                 // p0
  valuation refuting_valuation;       // the constructed refutation
  bool refutation_verified;           // premises designated, conclusion not
  bool consequence_holds;             // matrix_consequence agrees (¬ holds)
  std::string saturated_matrix;       // godel(m+2)
  bool saturated_entails;             // pigeonholed premise set entails p0
};

/// Finite-scale witness of the non-finitary premise family
/// {(α_i↔α_j)→α_0 : 0<i<j}: the first m instances are refutable in the
/// (m+3)-chain, while the variable-saturated set in the (m+2)-chain entails
/// its conclusion.
gamma_star_report gamma_star_demo(int m, const search_options& opts = {});

}  // namespace matlog
