#include "matlog/random.hpp"

namespace matlog {

formula_generator::formula_generator(signature sig, std::vector<std::string> variable_pool,
                                     int max_degree)
    : sig_(std::move(sig)), variables_(std::move(variable_pool)), max_degree_(max_degree) {
  if (variables_.empty() && sig_.constants().empty())
    fail(errc::bad_parameter, "no atoms to generate from");
}

formula formula_generator::operator()(rng& g) const { return with_degree(g, max_degree_); }

formula formula_generator::with_degree(rng& g, int degree_budget) const {
  std::size_t atom_count = variables_.size() + sig_.constants().size();
  if (degree_budget <= 0 || std::uniform_int_distribution<int>(0, 3)(g) == 0) {
    std::size_t pick = std::uniform_int_distribution<std::size_t>(0, atom_count - 1)(g);
    if (pick < variables_.size()) return formula::var(variables_[pick]);
    return formula::constant(sig_.constants()[pick - variables_.size()]);
  }
  const auto& conns = sig_.connectives();
  const auto& [op, arity] =
      conns[std::uniform_int_distribution<std::size_t>(0, conns.size() - 1)(g)];
  int remaining = degree_budget - 1;
  std::vector<formula> args;
  for (int i = 0; i < arity; ++i) {
    int share = remaining / (arity - i);
    int used = share > 0 ? std::uniform_int_distribution<int>(0, share)(g) : 0;
    args.push_back(with_degree(g, used));
    remaining -= used;
  }
  return formula::app(op, std::move(args));
}

substitution random_substitution(rng& g, const formula_generator& gen, int max_bindings) {
  std::map<std::string, formula> bindings;
  int count = std::uniform_int_distribution<int>(0, max_bindings)(g);
  const auto& pool = gen.pool();
  for (int i = 0; i < count; ++i) {
    const std::string& var =
        pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(g)];
    bindings.insert_or_assign(var, gen(g));
  }
  return substitution(std::move(bindings));
}

}  // namespace matlog
