#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "matlog/substitution.hpp"

namespace matlog {

using rng = std::mt19937_64;

/// Seeded random formulas over a signature: atoms drawn from a fixed variable
/// pool (and the signature's constants), connectives uniform, shape bounded
/// by a degree budget.
class formula_generator {
 public:
  formula_generator(signature sig, std::vector<std::string> variable_pool, int max_degree);

  formula operator()(rng& g) const;
  formula with_degree(rng& g, int degree_budget) const;
  const std::vector<std::string>& pool() const { return variables_; }
  const signature& sig() const { return sig_; }

 private:
  signature sig_;
  std::vector<std::string> variables_;
  int max_degree_;
};

/// Random finite-support substitution over the generator's variable pool.
substitution random_substitution(rng& g, const formula_generator& gen, int max_bindings = 3);

}  // namespace matlog
