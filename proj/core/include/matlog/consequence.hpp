#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "matlog/calculus.hpp"
#include "matlog/matrix.hpp"
#include "matlog/random.hpp"
#include "matlog/substitution.hpp"

namespace matlog {

/// Decidable consequence relation: a derivability query plus capability flags.
class backend {
 public:
  virtual ~backend() = default;
  virtual bool derives(const std::vector<formula>& premises, const formula& f) const = 0;

  std::string name;
  bool structural = false;
  bool finitary = false;
};

using backend_ptr = std::shared_ptr<const backend>;

backend_ptr matrix_backend(matrix m);
backend_ptr matrix_backend(std::vector<matrix> ms);
/// Intersection of the component relations.
backend_ptr intersection_backend(std::vector<backend_ptr> parts);
/// ⊢ relativized to a fixed premise set X0: X ⊢' α iff X ∪ X0 ⊢ α.
backend_ptr relative_backend(backend_ptr base, std::vector<formula> x0);
/// The ∘-restriction: X ⊢° α iff X ⊢ α and X ≠ ∅.
backend_ptr nonempty_backend(backend_ptr base);

// ---------------------------------------------------------------------------
// closure systems and extensional operators at desk scale

/// Family of subsets of a finite formula universe containing the universe and
/// closed under pairwise intersections; subsets are bitmasks over the
/// universe's index order.
class closure_system {
 public:
  closure_system(std::vector<formula> universe, std::vector<std::uint32_t> members);

  const std::vector<formula>& universe() const { return universe_; }
  const std::vector<std::uint32_t>& members() const { return members_; }
  /// Least member containing x.
  std::uint32_t cn(std::uint32_t x) const;
  std::uint32_t full_mask() const;

 private:
  std::vector<formula> universe_;
  std::vector<std::uint32_t> members_;
};

/// A total map P(U) → P(U) given by table; the laboratory object for the
/// operator axioms.
class table_operator {
 public:
  table_operator(int universe_size, std::vector<std::uint32_t> table);
  static table_operator from_closure_system(const closure_system& cs);

  int universe_size() const { return n_; }
  std::uint32_t apply(std::uint32_t x) const { return table_[x]; }
  const std::vector<std::uint32_t>& table() const { return table_; }

 private:
  int n_;
  std::vector<std::uint32_t> table_;
};

/// Axioms a..j of the operator laboratory, checked by full quantifier
/// expansion over subsets; universes past 5 elements are rejected.
struct operator_axiom_report {
  bool a, b, c, d, e, f, g, h, i, j;
  bool axiom(char which) const;
};
operator_axiom_report check_operator_axioms(const table_operator& op);

struct con_connection_counterexample {
  table_operator op;
  int implication;  // 1..12
};

struct con_connections_result {
  bool all_hold;
  std::uint64_t operators_checked;
  std::uint64_t seed = 0;
  std::optional<con_connection_counterexample> counterexample;
};

/// Exhausts every operator table at |U| = 2; samples `sample_budget` tables
/// at |U| = 3. Each of the twelve axiom implications is checked per table.
con_connections_result verify_con_connections(int universe_size, std::uint64_t sample_budget,
                                              std::uint64_t seed);

// ---------------------------------------------------------------------------
// sampled property harnesses

struct property_failure {
  std::string inputs;  // rendered offending instance
};

struct property_report {
  std::string property;
  std::uint64_t cases = 0;
  std::vector<property_failure> failures;
  std::uint64_t seed = 0;
  bool ok() const { return failures.empty(); }
};

/// Reflexivity, monotonicity and cut on sampled finite instances.
property_report check_backend_axioms(const backend& b, const formula_generator& gen,
                                     std::uint64_t cases, std::uint64_t seed);

/// Structurality sampling: derives(X, α) implies derives(σX, σα).
property_report check_backend_structurality(const backend& b, const formula_generator& gen,
                                            std::uint64_t cases, std::uint64_t seed);

/// Theorem-stability sampling for a schema-generated premise set: when the
/// identity instances X₀ of the schemata derive f, every sampled σ keeps
/// σ(f) derivable from σ(X₀), and σ(X₀) stays inside the schemata's instance
/// set. Reports non-theorems loudly instead of passing them vacuously.
struct lindenbaum_harness_report {
  property_report base;
  bool premise_derives_goal = false;  // X₀ ⊢ f at the identity instance
};
lindenbaum_harness_report lindenbaum_property_harness(const backend& b,
                                                      const std::vector<formula>& schemata,
                                                      const formula& goal,
                                                      const std::vector<substitution>& sample);

/// σ-preimage closedness of a theory, sampled over a finite universe: with
/// T = Cn(X), checks that P = {α ∈ U : σ(α) ∈ T} is deductively closed
/// pointwise (sampled finite Y ⊆ P, sampled α ∈ U with Y ⊢ α keep α ∈ P).
property_report brown_suszko_sample(const backend& b, const std::vector<formula>& X,
                                    const substitution& s, const std::vector<formula>& universe,
                                    std::uint64_t cases, std::uint64_t seed);

}  // namespace matlog
