#include "matlog/matrix.hpp"

#include <algorithm>
#include <cmath>

#include "matlog/parallel.hpp"

namespace matlog {

// ---------------------------------------------------------------------------
// finite_algebra

finite_algebra::finite_algebra(signature sig, std::vector<std::string> elements,
                               std::map<std::string, std::vector<int>> op_tables,
                               std::map<std::string, int> constants)
    : sig_(std::move(sig)),
      elements_(std::move(elements)),
      tables_(std::move(op_tables)),
      constants_(std::move(constants)) {
  if (elements_.empty()) fail(errc::bad_parameter, "algebra needs at least one element");
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    if (!index_.emplace(elements_[i], static_cast<int>(i)).second)
      fail(errc::bad_parameter, "duplicate element name: " + elements_[i]);
  }
  const int n = size();
  for (const auto& [op, ar] : sig_.connectives()) {
    auto it = tables_.find(op);
    if (it == tables_.end()) fail(errc::bad_parameter, "missing table for " + op);
    std::size_t want = 1;
    for (int i = 0; i < ar; ++i) want *= n;
    if (it->second.size() != want)
      fail(errc::bad_parameter, "table for " + op + " has wrong size");
    for (int v : it->second)
      if (v < 0 || v >= n) fail(errc::bad_parameter, "table for " + op + " is not closed");
  }
  if (tables_.size() != sig_.connectives().size())
    fail(errc::bad_parameter, "table for an undeclared connective");
  for (const auto& name : sig_.constants()) {
    auto it = constants_.find(name);
    if (it == constants_.end())
      fail(errc::bad_parameter, "constant " + name + " is uninterpreted");
    if (it->second < 0 || it->second >= n)
      fail(errc::bad_parameter, "constant " + name + " maps outside the carrier");
  }
}

int finite_algebra::element_index(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) fail(errc::bad_parameter, "unknown element: " + name);
  return it->second;
}

const std::vector<int>& finite_algebra::table(const std::string& op) const {
  auto it = tables_.find(op);
  if (it == tables_.end()) fail(errc::bad_parameter, "unknown connective: " + op);
  return it->second;
}

int finite_algebra::apply(const std::string& op, std::span<const int> args) const {
  const std::vector<int>& t = table(op);
  std::size_t idx = 0;
  for (int a : args) idx = idx * elements_.size() + static_cast<std::size_t>(a);
  return t[idx];
}

int finite_algebra::constant_value(const std::string& name) const {
  auto it = constants_.find(name);
  if (it == constants_.end()) fail(errc::bad_parameter, "unknown constant: " + name);
  return it->second;
}

finite_algebra finite_algebra::restricted_to(const std::vector<std::string>& keep) const {
  std::vector<std::pair<std::string, int>> conns;
  std::map<std::string, std::vector<int>> tables;
  std::vector<std::string> consts;
  std::map<std::string, int> const_vals;
  for (const std::string& name : keep) {
    if (sig_.has_connective(name)) {
      conns.emplace_back(name, sig_.arity(name));
      tables.emplace(name, tables_.at(name));
    } else if (sig_.has_constant(name)) {
      consts.push_back(name);
      const_vals.emplace(name, constants_.at(name));
    } else {
      fail(errc::bad_parameter, "unknown symbol: " + name);
    }
  }
  return finite_algebra(signature(std::move(conns), std::move(consts)), elements_,
                        std::move(tables), std::move(const_vals));
}

std::vector<std::string> matrix::designated_names() const {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < designated.size(); ++i)
    if (designated[i]) out.push_back(algebra.elements()[i]);
  return out;
}

// ---------------------------------------------------------------------------
// compiled evaluation

namespace {

/// Distinct subformulas flattened to slots in dependency order; evaluating a
/// valuation is one pass over the slot program.
class program {
 public:
  program(std::span<const formula> fs, const finite_algebra& a) : algebra_(a) {
    std::set<std::string> vars;
    for (const formula& f : fs) {
      a.sig().require(f);
      for (const auto& v : variables(f)) vars.insert(v);
    }
    vars_.assign(vars.begin(), vars.end());
    for (const formula& f : fs) roots_.push_back(compile(f));
  }

  const std::vector<std::string>& vars() const { return vars_; }
  std::size_t slots() const { return code_.size(); }

  /// var_values is indexed like vars(); scratch must hold slots() ints.
  int eval_root(std::size_t which, std::span<const int> var_values,
                std::span<int> scratch) const {
    for (std::size_t s = 0; s < code_.size(); ++s) {
      const instr& in = code_[s];
      switch (in.what) {
        case instr::kind::variable: scratch[s] = var_values[in.a]; break;
        case instr::kind::constant: scratch[s] = in.a; break;
        case instr::kind::unary: scratch[s] = (*in.table)[scratch[in.a]]; break;
        case instr::kind::binary:
          scratch[s] = (*in.table)[scratch[in.a] * algebra_.size() + scratch[in.b]];
          break;
        case instr::kind::general: {
          std::size_t idx = 0;
          for (int arg : in.extra) idx = idx * algebra_.size() + scratch[arg];
          scratch[s] = (*in.table)[idx];
          break;
        }
      }
    }
    return scratch[roots_[which]];
  }

 private:
  struct instr {
    enum class kind { variable, constant, unary, binary, general } what;
    int a = 0, b = 0;
    const std::vector<int>* table = nullptr;
    std::vector<int> extra;
  };

  int compile(const formula& f) {
    auto it = slot_of_.find(f);
    if (it != slot_of_.end()) return it->second;
    instr in;
    switch (f.kind()) {
      case node_kind::variable: {
        in.what = instr::kind::variable;
        in.a = static_cast<int>(
            std::lower_bound(vars_.begin(), vars_.end(), f.name()) - vars_.begin());
        break;
      }
      case node_kind::constant:
        in.what = instr::kind::constant;
        in.a = algebra_.constant_value(f.name());
        break;
      case node_kind::metavariable:
        fail(errc::signature_mismatch, "cannot evaluate a metaformula");
      case node_kind::application: {
        std::vector<int> args;
        for (const formula& x : f.args()) args.push_back(compile(x));
        in.table = &algebra_.table(f.name());
        if (args.size() == 1) {
          in.what = instr::kind::unary;
          in.a = args[0];
        } else if (args.size() == 2) {
          in.what = instr::kind::binary;
          in.a = args[0];
          in.b = args[1];
        } else {
          in.what = instr::kind::general;
          in.extra = std::move(args);
        }
        break;
      }
    }
    int slot = static_cast<int>(code_.size());
    code_.push_back(std::move(in));
    slot_of_.emplace(f, slot);
    return slot;
  }

  const finite_algebra& algebra_;
  std::vector<std::string> vars_;
  std::vector<instr> code_;
  std::map<formula, int> slot_of_;
  std::vector<int> roots_;
};

void index_to_assignment(std::uint64_t index, int base, std::span<int> out) {
  for (std::size_t i = out.size(); i-- > 0;) {
    out[i] = static_cast<int>(index % base);
    index /= base;
  }
}

std::uint64_t count_valuations(std::size_t num_vars, int base, std::uint64_t per_row,
                               std::uint64_t budget) {
  __int128 total = 1;
  for (std::size_t i = 0; i < num_vars; ++i) {
    total *= base;
    if (total * per_row > budget)
      fail(errc::budget_exceeded,
           "enumeration needs more than " + std::to_string(budget) + " evaluations");
  }
  return static_cast<std::uint64_t>(total);
}

valuation assignment_to_valuation(const std::vector<std::string>& vars,
                                  std::span<const int> values,
                                  const finite_algebra& a) {
  valuation v;
  for (std::size_t i = 0; i < vars.size(); ++i) v[vars[i]] = a.elements()[values[i]];
  return v;
}

}  // namespace

int evaluate_index(const matrix& m, const valuation& v, const formula& f) {
  program prog({&f, 1}, m.algebra);
  std::vector<int> values(prog.vars().size());
  for (std::size_t i = 0; i < prog.vars().size(); ++i) {
    auto it = v.find(prog.vars()[i]);
    if (it == v.end())
      fail(errc::unassigned_variable, "variable " + prog.vars()[i] + " has no value");
    values[i] = m.algebra.element_index(it->second);
  }
  std::vector<int> scratch(prog.slots());
  return prog.eval_root(0, values, scratch);
}

std::string evaluate(const matrix& m, const valuation& v, const formula& f) {
  return m.algebra.elements()[evaluate_index(m, v, f)];
}

consequence_result matrix_consequence(const matrix& m, const std::vector<formula>& premises,
                                      const formula& conclusion,
                                      const search_options& opts) {
  std::vector<formula> all = premises;
  all.push_back(conclusion);
  program prog(all, m.algebra);
  const int n = m.algebra.size();
  const std::uint64_t rows =
      count_valuations(prog.vars().size(), n, all.size(), opts.budget);

  auto row_refutes = [&](std::span<int> values, std::vector<int>& scratch,
                         std::uint64_t index) {
    index_to_assignment(index, n, values);
    for (std::size_t p = 0; p < premises.size(); ++p)
      if (!m.designated[prog.eval_root(p, values, scratch)]) return false;
    return !m.designated[prog.eval_root(premises.size(), values, scratch)];
  };

  int threads = std::max(1, opts.threads);
  std::vector<std::vector<int>> values(threads, std::vector<int>(prog.vars().size()));
  std::vector<std::vector<int>> scratch(threads, std::vector<int>(prog.slots()));
  auto found = parallel_find_first(rows, threads, [&](int t, std::uint64_t i) {
    return row_refutes(values[t], scratch[t], i);
  });

  consequence_result out;
  out.holds = !found.has_value();
  // Stats reflect the canonical sequential scan, so they are thread-count
  // independent.
  out.evaluations = (found ? *found + 1 : rows) * all.size();
  if (found) {
    std::vector<int> vals(prog.vars().size());
    index_to_assignment(*found, n, vals);
    out.witness = assignment_to_valuation(prog.vars(), vals, m.algebra);
  }
  return out;
}

consequence_result matrix_consequence(std::span<const matrix> ms,
                                      const std::vector<formula>& premises,
                                      const formula& conclusion, const search_options& opts) {
  consequence_result out{true, std::nullopt, 0};
  for (const matrix& m : ms) {
    consequence_result r = matrix_consequence(m, premises, conclusion, opts);
    out.evaluations += r.evaluations;
    if (!r.holds) {
      out.holds = false;
      out.witness = std::move(r.witness);
      return out;
    }
  }
  return out;
}

validity_result check_validity(const matrix& m, const formula& f,
                               const search_options& opts) {
  consequence_result r = matrix_consequence(m, {}, f, opts);
  return {r.holds, std::move(r.witness), r.evaluations};
}

bool is_valid(const matrix& m, const formula& f, const search_options& opts) {
  return check_validity(m, f, opts).valid;
}

std::optional<valuation> find_refutation(const matrix& m, const formula& f,
                                         const search_options& opts) {
  return check_validity(m, f, opts).witness;
}

// ---------------------------------------------------------------------------
// builtin matrices

namespace {

std::vector<int> derived_biconditional(const std::vector<int>& imp, int n) {
  std::vector<int> table(n * n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      table[x * n + y] = std::min(imp[x * n + y], imp[y * n + x]);
  return table;
}

finite_algebra chain_heyting_algebra(int n) {
  // Elements 0 < t1 < ... < t(n-2) < 1 with the Gödel chain operations.
  std::vector<std::string> elems;
  elems.push_back("0");
  for (int i = 1; i <= n - 2; ++i) elems.push_back("t" + std::to_string(i));
  elems.push_back("1");
  std::vector<int> meet(n * n), join(n * n), imp(n * n), neg(n);
  for (int x = 0; x < n; ++x) {
    neg[x] = x == 0 ? n - 1 : 0;
    for (int y = 0; y < n; ++y) {
      meet[x * n + y] = std::min(x, y);
      join[x * n + y] = std::max(x, y);
      imp[x * n + y] = x <= y ? n - 1 : y;
    }
  }
  std::map<std::string, std::vector<int>> tables;
  tables["∧"] = meet;
  tables["∨"] = join;
  tables["→"] = imp;
  tables["¬"] = neg;
  tables["↔"] = derived_biconditional(imp, n);
  return finite_algebra(signature::assertoric(), std::move(elems), std::move(tables), {});
}

finite_algebra lukasiewicz3_algebra() {
  const int n = 3;
  std::vector<int> meet(9), join(9), imp = {2, 2, 2, 1, 2, 2, 0, 1, 2}, neg = {2, 1, 0};
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      meet[x * n + y] = std::min(x, y);
      join[x * n + y] = std::max(x, y);
    }
  std::map<std::string, std::vector<int>> tables;
  tables["∧"] = meet;
  tables["∨"] = join;
  tables["→"] = imp;
  tables["¬"] = neg;
  tables["↔"] = derived_biconditional(imp, n);
  return finite_algebra(signature::assertoric(), {"0", "τ", "1"}, std::move(tables), {});
}

matrix with_top_designated(finite_algebra a, std::string name) {
  std::vector<bool> designated(a.size(), false);
  designated[a.element_index("1")] = true;
  return matrix{std::move(a), std::move(designated), std::move(name)};
}

}  // namespace

matrix godel_matrix(int n) {
  if (n < 2) fail(errc::bad_parameter, "godel(n) requires n >= 2");
  return with_top_designated(chain_heyting_algebra(n), "g" + std::to_string(n));
}

matrix builtin_matrix(const std::string& name) {
  if (name == "b2") return with_top_designated(chain_heyting_algebra(2), "b2");
  if (name == "l3") return with_top_designated(lukasiewicz3_algebra(), "l3");
  if (name == "l3_tau") {
    matrix m = with_top_designated(lukasiewicz3_algebra(), "l3_tau");
    m.designated[m.algebra.element_index("τ")] = true;
    return m;
  }
  if (name == "l3_modal") {
    finite_algebra l3 = lukasiewicz3_algebra();
    std::map<std::string, std::vector<int>> tables;
    std::vector<std::pair<std::string, int>> conns;
    for (const auto& [op, ar] : l3.sig().connectives()) {
      conns.emplace_back(op, ar);
      tables[op] = l3.table(op);
    }
    conns.emplace_back("□", 1);
    conns.emplace_back("◇", 1);
    tables["□"] = {0, 0, 2};
    tables["◇"] = {0, 2, 2};
    finite_algebra a(signature(std::move(conns), {}), {"0", "τ", "1"}, std::move(tables),
                     {});
    return with_top_designated(std::move(a), "l3_modal");
  }
  if (name == "g3_prime") {
    matrix m = with_top_designated(chain_heyting_algebra(3), "g3_prime");
    m.designated[m.algebra.element_index("t1")] = true;
    return m;
  }
  if (name.size() > 1 && name[0] == 'g') {
    bool numeric = true;
    for (std::size_t i = 1; i < name.size(); ++i)
      numeric = numeric && std::isdigit(static_cast<unsigned char>(name[i]));
    if (numeric) return godel_matrix(std::stoi(name.substr(1)));
  }
  fail(errc::bad_parameter, "unknown matrix: " + name);
}

lc_result lc_is_valid(const formula& f, const search_options& opts) {
  // Any LC*-refutation of f lives in the subchain of the values of f's
  // subformulas plus bottom and top, so the chain of size |Sub(f)|+2 decides.
  int n = static_cast<int>(subformulas(f).size()) + 2;
  validity_result r = check_validity(godel_matrix(n), f, opts);
  return {r.valid, n, std::move(r.witness), r.evaluations};
}

// ---------------------------------------------------------------------------
// homomorphisms, subuniverses

bool check_hom_filter(const std::map<std::string, std::string>& h, const matrix& m1,
                      const matrix& m2) {
  const finite_algebra& a1 = m1.algebra;
  const finite_algebra& a2 = m2.algebra;
  std::vector<int> map(a1.size(), -1);
  std::vector<bool> hit(a2.size(), false);
  for (int i = 0; i < a1.size(); ++i) {
    auto it = h.find(a1.elements()[i]);
    if (it == h.end()) return false;  // not total
    bool known = false;
    for (int j = 0; j < a2.size(); ++j)
      if (a2.elements()[j] == it->second) {
        map[i] = j;
        hit[j] = true;
        known = true;
      }
    if (!known) return false;
  }
  for (bool b : hit)
    if (!b) return false;  // not onto
  for (const auto& [op, ar] : a1.sig().connectives()) {
    if (!a2.sig().has_connective(op) || a2.sig().arity(op) != ar) return false;
    std::vector<int> args(ar, 0), mapped(ar, 0);
    for (;;) {
      for (int i = 0; i < ar; ++i) mapped[i] = map[args[i]];
      if (map[a1.apply(op, args)] != a2.apply(op, mapped)) return false;
      int i = ar - 1;
      while (i >= 0 && ++args[i] == a1.size()) args[i--] = 0;
      if (i < 0) break;
    }
  }
  for (const auto& [c, value] : a1.constants()) {
    if (!a2.sig().has_constant(c)) return false;
    if (map[value] != a2.constant_value(c)) return false;
  }
  for (int i = 0; i < a1.size(); ++i)
    if (m1.designated[i] && !m2.designated[map[i]]) return false;
  return true;
}

std::vector<std::string> subuniverse_closure(const finite_algebra& a,
                                             const std::vector<std::string>& seed) {
  std::vector<bool> in(a.size(), false);
  for (const std::string& s : seed) in[a.element_index(s)] = true;
  for (const auto& [c, value] : a.constants()) in[value] = true;
  bool grew = true;
  while (grew) {
    grew = false;
    for (const auto& [op, ar] : a.sig().connectives()) {
      std::vector<int> args(ar, 0);
      for (;;) {
        bool all_in = true;
        for (int x : args) all_in = all_in && in[x];
        if (all_in) {
          int y = a.apply(op, args);
          if (!in[y]) {
            in[y] = true;
            grew = true;
          }
        }
        int i = ar - 1;
        while (i >= 0 && ++args[i] == a.size()) args[i--] = 0;
        if (i < 0) break;
      }
    }
  }
  std::vector<std::string> out;
  for (int i = 0; i < a.size(); ++i)
    if (in[i]) out.push_back(a.elements()[i]);
  return out;
}

// ---------------------------------------------------------------------------
// exact-rational Łukasiewicz evaluation

namespace {

const rational kOne{1};
const rational kZero{0};

void require_unit_interval(const rational& x) {
  if (x < kZero || kOne < x)
    fail(errc::out_of_range, "value " + x.str() + " lies outside [0,1]");
}

rational luk_imp(const rational& x, const rational& y) {
  rational r = kOne - x + y;
  return kOne < r ? kOne : r;
}

}  // namespace

rational lukasiewicz_eval(const rational_valuation& v, const formula& f) {
  switch (f.kind()) {
    case node_kind::variable: {
      auto it = v.find(f.name());
      if (it == v.end())
        fail(errc::unassigned_variable, "variable " + f.name() + " has no value");
      require_unit_interval(it->second);
      return it->second;
    }
    case node_kind::constant: {
      if (f.name() == "⊤") return kOne;
      if (f.name() == "⊥") return kZero;
      fail(errc::bad_parameter, "constant " + f.name() + " has no Łukasiewicz value");
    }
    case node_kind::metavariable:
      fail(errc::signature_mismatch, "cannot evaluate a metaformula");
    case node_kind::application: {
      const std::string& op = f.name();
      if (op == "¬") return kOne - lukasiewicz_eval(v, f.args()[0]);
      rational a = lukasiewicz_eval(v, f.args()[0]);
      rational b = lukasiewicz_eval(v, f.args()[1]);
      if (op == "→") return luk_imp(a, b);
      if (op == "∧") return a < b ? a : b;
      if (op == "∨") return a < b ? b : a;
      if (op == "↔") {
        rational l = luk_imp(a, b), r = luk_imp(b, a);
        return l < r ? l : r;
      }
      fail(errc::bad_parameter, "connective " + op + " has no Łukasiewicz table");
    }
  }
  fail(errc::bad_parameter, "unreachable");
}

std::optional<rational_valuation> lukasiewicz_grid_refute(const formula& f,
                                                          int max_denominator,
                                                          const search_options& opts) {
  if (max_denominator < 1) fail(errc::bad_parameter, "denominator bound must be >= 1");
  std::vector<rational> grid;
  for (int den = 1; den <= max_denominator; ++den)
    for (int num = 0; num <= den; ++num) {
      rational r(num, den);
      if (std::find(grid.begin(), grid.end(), r) == grid.end()) grid.push_back(r);
    }
  std::sort(grid.begin(), grid.end(), [](const rational& a, const rational& b) { return a < b; });

  std::vector<std::string> vars(variables(f).begin(), variables(f).end());
  std::uint64_t rows = 1;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    rows *= grid.size();
    if (rows > opts.budget) fail(errc::budget_exceeded, "grid too large");
  }
  std::vector<int> digits(vars.size());
  for (std::uint64_t row = 0; row < rows; ++row) {
    index_to_assignment(row, static_cast<int>(grid.size()), digits);
    rational_valuation v;
    for (std::size_t i = 0; i < vars.size(); ++i) v[vars[i]] = grid[digits[i]];
    if (lukasiewicz_eval(v, f) < kOne) return v;
  }
  return std::nullopt;
}

}  // namespace matlog
