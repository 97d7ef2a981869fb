#pragma once

#include <doctest.h>

#include "matlog/matrix.hpp"
#include "matlog/random.hpp"

namespace matlog::test {

inline formula F(const std::string& text) {
  return parse(text, signature::assertoric(), notation::infix);
}
inline formula FB(const std::string& text) {
  return parse(text, signature::bounded(), notation::infix);
}
inline formula FM(const std::string& text) {
  return parse(text, signature::modal(), notation::infix);
}

/// Independent validity oracle: plain recursive evaluation over an explicit
/// variable list (possibly with dummies), no compilation, no witness order
/// tricks.
inline int naive_eval(const matrix& m, const std::map<std::string, int>& v,
                      const formula& f) {
  switch (f.kind()) {
    case node_kind::variable: return v.at(f.name());
    case node_kind::constant: return m.algebra.constant_value(f.name());
    case node_kind::metavariable: throw std::logic_error("metaformula");
    case node_kind::application: {
      std::vector<int> args;
      for (const formula& a : f.args()) args.push_back(naive_eval(m, v, a));
      return m.algebra.apply(f.name(), args);
    }
  }
  throw std::logic_error("unreachable");
}

inline bool naive_valid(const matrix& m, const formula& f,
                        std::vector<std::string> extra_vars = {}) {
  std::vector<std::string> vars(variables(f).begin(), variables(f).end());
  vars.insert(vars.end(), extra_vars.begin(), extra_vars.end());
  const int n = m.algebra.size();
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < vars.size(); ++i) total *= n;
  for (std::uint64_t row = 0; row < total; ++row) {
    std::map<std::string, int> v;
    std::uint64_t rest = row;
    for (const auto& var : vars) {
      v[var] = static_cast<int>(rest % n);
      rest /= n;
    }
    if (!m.designated[naive_eval(m, v, f)]) return false;
  }
  return true;
}

/// All formulas over the given variables and connectives ∧,∨,→,¬ with degree
/// at most max_degree (the two-variable corpus of the completeness sweeps).
inline std::vector<formula> corpus(int max_degree,
                                   const std::vector<std::string>& vars = {"p", "q"}) {
  std::vector<std::vector<formula>> by_degree(max_degree + 1);
  for (const auto& v : vars) by_degree[0].push_back(formula::var(v));
  for (int d = 1; d <= max_degree; ++d) {
    for (const formula& a : by_degree[d - 1])
      by_degree[d].push_back(formula::app("¬", {a}));
    for (int i = 0; i + 1 + 0 <= d - 1; ++i) {
      int j = d - 1 - i;
      for (const char* op : {"∧", "∨", "→"})
        for (const formula& a : by_degree[i])
          for (const formula& b : by_degree[j])
            by_degree[d].push_back(formula::app(op, {a, b}));
    }
  }
  std::vector<formula> out;
  for (auto& bucket : by_degree)
    for (formula& f : bucket) out.push_back(std::move(f));
  return out;
}

}  // namespace matlog::test
