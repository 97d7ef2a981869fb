#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "matlog/language.hpp"
#include "matlog/rational.hpp"

namespace matlog {

/// Finite algebra of a signature: named elements in a declared total order,
/// one total operation table per connective, one element per constant.
class finite_algebra {
 public:
  /// Empty algebra; a placeholder until assigned.
  finite_algebra() = default;
  finite_algebra(signature sig, std::vector<std::string> elements,
                 std::map<std::string, std::vector<int>> op_tables,
                 std::map<std::string, int> constants);

  const signature& sig() const { return sig_; }
  const std::vector<std::string>& elements() const { return elements_; }
  int size() const { return static_cast<int>(elements_.size()); }
  int element_index(const std::string& name) const;  // throws bad_parameter

  /// Flat table of a connective, row-major: index = ((a1*n)+a2)*n+... .
  const std::vector<int>& table(const std::string& op) const;
  int apply(const std::string& op, std::span<const int> args) const;
  int constant_value(const std::string& name) const;
  const std::map<std::string, int>& constants() const { return constants_; }

  /// Same elements, operation set restricted to `keep` (constants dropped
  /// unless listed).
  finite_algebra restricted_to(const std::vector<std::string>& keep) const;

 private:
  signature sig_;
  std::vector<std::string> elements_;
  std::map<std::string, std::vector<int>> tables_;
  std::map<std::string, int> constants_;
  std::map<std::string, int> index_;
};

struct matrix {
  finite_algebra algebra;
  std::vector<bool> designated;  // indexed by element
  std::string name;              // builtin name or "" for ad hoc matrices

  bool is_designated(int element) const { return designated[element]; }
  std::vector<std::string> designated_names() const;
};

/// Finite-support assignment of elements to variables, by element name.
using valuation = std::map<std::string, std::string>;

int evaluate_index(const matrix& m, const valuation& v, const formula& f);
std::string evaluate(const matrix& m, const valuation& v, const formula& f);

struct search_options {
  std::uint64_t budget = 100'000'000;  // max formula evaluations
  int threads = 1;
};

struct validity_result {
  bool valid;
  std::optional<valuation> witness;  // lowest refuting valuation, if any
  std::uint64_t evaluations;
};

/// Exhaustive over elements^variables(f); deterministic lowest witness in the
/// lexicographic element order. Throws budget_exceeded.
validity_result check_validity(const matrix& m, const formula& f,
                               const search_options& opts = {});
bool is_valid(const matrix& m, const formula& f, const search_options& opts = {});
std::optional<valuation> find_refutation(const matrix& m, const formula& f,
                                         const search_options& opts = {});

struct consequence_result {
  bool holds;
  std::optional<valuation> witness;  // designates premises, refutes conclusion
  std::uint64_t evaluations;
};

consequence_result matrix_consequence(const matrix& m, const std::vector<formula>& premises,
                                      const formula& conclusion,
                                      const search_options& opts = {});
/// Conjunction over a class of matrices.
consequence_result matrix_consequence(std::span<const matrix> ms,
                                      const std::vector<formula>& premises,
                                      const formula& conclusion,
                                      const search_options& opts = {});

/// b2 | l3 | l3_modal | l3_tau | g3_prime | g<n> (n >= 2).
matrix builtin_matrix(const std::string& name);
matrix godel_matrix(int n);

struct lc_result {
  bool valid;
  int chain_size;  // the Gödel chain that decided it: |Sub(f)| + 2
  std::optional<valuation> witness;
  std::uint64_t evaluations;
};

/// Dummett-logic validity, decided in the Gödel chain of size |Sub(f)|+2.
lc_result lc_is_valid(const formula& f, const search_options& opts = {});

/// Surjective homomorphism check with h[D1] ⊆ D2; h maps element names of m1
/// to element names of m2.
bool check_hom_filter(const std::map<std::string, std::string>& h, const matrix& m1,
                      const matrix& m2);

/// Least subset of elements containing `seed` and the constants, closed under
/// every operation of the algebra.
std::vector<std::string> subuniverse_closure(const finite_algebra& a,
                                             const std::vector<std::string>& seed);

// --- exact-rational Łukasiewicz evaluation (the denumerable-valued matrix) --

using rational_valuation = std::map<std::string, rational>;

/// Exact evaluation over [0,1]: ¬x = 1−x, x→y = min(1, 1−x+y), ∧ = min,
/// ∨ = max, ↔ derived. Throws out_of_range when a value leaves [0,1].
rational lukasiewicz_eval(const rational_valuation& v, const formula& f);

/// Searches valuations with denominators ≤ d for one evaluating f below 1.
std::optional<rational_valuation> lukasiewicz_grid_refute(const formula& f, int max_denominator,
                                                          const search_options& opts = {});

}  // namespace matlog
