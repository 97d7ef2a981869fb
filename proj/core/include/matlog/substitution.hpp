#pragma once

#include <map>
#include <optional>
#include <span>

#include "matlog/language.hpp"

namespace matlog {

/// Finite-support variable map, extended homomorphically to formulas.
/// Identity bindings are never stored.
class substitution {
 public:
  substitution() = default;
  explicit substitution(std::map<std::string, formula> bindings);
  static substitution unary(const std::string& variable, formula image);

  /// Homomorphic application; constants and metavariables are fixed.
  formula operator()(const formula& f) const;

  const std::map<std::string, formula>& support() const { return map_; }
  bool is_identity() const { return map_.empty(); }
  bool operator==(const substitution& other) const { return map_ == other.map_; }

 private:
  std::map<std::string, formula> map_;
};

/// compose(s1, s2)(f) = s1(s2(f)).
substitution compose(const substitution& s1, const substitution& s2);

formula_set image(const substitution& s, const formula_set& xs);
/// {α ∈ universe : s(α) ∈ xs}. The preimage is taken relative to an explicit
/// finite universe; the unrestricted preimage ranges over all formulas.
formula_set preimage(const substitution& s, const formula_set& xs,
                     const formula_set& universe);

/// Finite-support metavariable map.
class instantiation {
 public:
  instantiation() = default;
  explicit instantiation(std::map<std::string, formula> bindings)
      : map_(std::move(bindings)) {}

  const std::map<std::string, formula>& bindings() const { return map_; }
  const formula* find(const std::string& metavar) const;
  /// Adds a binding; returns false if the metavariable is already bound to a
  /// different formula.
  bool bind(const std::string& metavar, const formula& image);
  bool operator==(const instantiation& other) const { return map_ == other.map_; }

 private:
  std::map<std::string, formula> map_;
};

/// Homomorphic extension to metaformulas; total on the metavariables of m or
/// throws unbound_metavariable.
formula instantiate(const formula& m, const instantiation& i);

/// The unique i with instantiate(m, i) = f, if it exists. Matching only:
/// f must be ground.
std::optional<instantiation> match_instance(const formula& m, const formula& f);
/// Matches a list of metaformulas against a list of formulas under one shared
/// binding, extending `seed`.
std::optional<instantiation> match_all(std::span<const formula> metas,
                                       std::span<const formula> fs,
                                       instantiation seed = {});

}  // namespace matlog
