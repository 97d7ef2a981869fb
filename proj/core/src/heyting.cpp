#include "matlog/heyting.hpp"

#include <algorithm>

namespace matlog {

// ---------------------------------------------------------------------------
// posets

std::vector<std::pair<int, int>> poset::covers() const {
  std::vector<std::pair<int, int>> out;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (a == b || !leq(a, b)) continue;
      bool covering = true;
      for (int c = 0; c < n && covering; ++c)
        if (c != a && c != b && leq(a, c) && leq(c, b)) covering = false;
      if (covering) out.emplace_back(a, b);
    }
  return out;
}

poset make_poset(int n, const std::vector<std::pair<int, int>>& less_pairs) {
  if (n < 0 || n > 63) fail(errc::bad_parameter, "poset size out of range");
  poset p;
  p.n = n;
  p.up.assign(n, 0);
  for (int i = 0; i < n; ++i) p.up[i] = 1ULL << i;
  for (auto [a, b] : less_pairs) {
    if (a < 0 || a >= n || b < 0 || b >= n)
      fail(errc::bad_parameter, "order pair out of range");
    p.up[a] |= 1ULL << b;
  }
  // transitive closure
  for (bool grew = true; grew;) {
    grew = false;
    for (int a = 0; a < n; ++a) {
      std::uint64_t reach = p.up[a];
      std::uint64_t m = reach;
      while (m) {
        int b = __builtin_ctzll(m);
        m &= m - 1;
        reach |= p.up[b];
      }
      if (reach != p.up[a]) {
        p.up[a] = reach;
        grew = true;
      }
    }
  }
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (p.leq(a, b) && p.leq(b, a))
        fail(errc::bad_parameter, "order pairs contain a cycle");
  return p;
}

// ---------------------------------------------------------------------------
// up-set algebras

std::vector<std::uint64_t> upsets_of(const poset& p) {
  std::vector<std::uint64_t> out;
  std::uint64_t all = p.n == 64 ? ~0ULL : (1ULL << p.n) - 1;
  for (std::uint64_t s = 0;; ++s) {
    bool closed = true;
    for (int w = 0; w < p.n && closed; ++w)
      if ((s >> w) & 1)
        if ((p.up[w] & ~s) != 0) closed = false;
    if (closed) out.push_back(s);
    if (s == all) break;
  }
  return out;  // ascending as integers; ∅ first, full set last
}

namespace {
std::string upset_name(std::uint64_t s, int n) {
  std::string out = "{";
  bool first = true;
  for (int w = 0; w < n; ++w)
    if ((s >> w) & 1) {
      if (!first) out += ',';
      out += std::to_string(w);
      first = false;
    }
  return out + "}";
}
}  // namespace

heyting_algebra upset_algebra(const poset& p) {
  if (p.n > 12) fail(errc::too_large, "up-set algebra past 12 elements");
  std::vector<std::uint64_t> sets = upsets_of(p);
  const int k = static_cast<int>(sets.size());
  std::uint64_t full = p.n == 0 ? 0 : (1ULL << p.n) - 1;
  std::vector<int> index_of(1ULL << p.n, -1);
  for (int i = 0; i < k; ++i) index_of[sets[i]] = i;

  // U→V = {w : ∀w' ≥ w, w' ∈ U ⇒ w' ∈ V}; always an up-set.
  auto imp_set = [&](std::uint64_t u, std::uint64_t v) {
    std::uint64_t out = 0;
    for (int w = 0; w < p.n; ++w)
      if ((p.up[w] & u & ~v) == 0) out |= 1ULL << w;
    return out;
  };

  std::vector<int> meet(k * k), join(k * k), imp(k * k), neg(k), bic(k * k);
  for (int i = 0; i < k; ++i) {
    neg[i] = index_of[imp_set(sets[i], 0)];
    for (int j = 0; j < k; ++j) {
      meet[i * k + j] = index_of[sets[i] & sets[j]];
      join[i * k + j] = index_of[sets[i] | sets[j]];
      imp[i * k + j] = index_of[imp_set(sets[i], sets[j])];
    }
  }
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      bic[i * k + j] = meet[imp[i * k + j] * k + imp[j * k + i]];

  std::vector<std::string> names;
  names.reserve(k);
  for (std::uint64_t s : sets) names.push_back(upset_name(s, p.n));
  std::map<std::string, std::vector<int>> tables;
  tables["∧"] = std::move(meet);
  tables["∨"] = std::move(join);
  tables["→"] = std::move(imp);
  tables["¬"] = std::move(neg);
  tables["↔"] = std::move(bic);
  finite_algebra alg(signature::assertoric(), std::move(names), std::move(tables), {});
  return heyting_algebra{std::move(alg), index_of[full], index_of[0]};
}

matrix to_matrix(const heyting_algebra& h, std::string name) {
  std::vector<bool> designated(h.algebra.size(), false);
  designated[h.unit] = true;
  return matrix{h.algebra, std::move(designated), std::move(name)};
}

// ---------------------------------------------------------------------------
// identity suites

namespace {

// Identity terms are written over the element variables x,y,z; "1" and "0"
// denote the unit and zero. leq(s,t) abbreviates s∧t = s.
struct identity {
  std::string name;
  std::string lhs, rhs;
  bool leq_form = false;
};

const std::vector<identity>& suite_items(const std::string& suite) {
  static const std::map<std::string, std::vector<identity>> suites = {
      {"lattice_l1_l4",
       {{"l1-i", "(x∧y)", "(y∧x)"},
        {"l1-ii", "(x∨y)", "(y∨x)"},
        {"l2-i", "(x∧(y∧z))", "((x∧y)∧z)"},
        {"l2-ii", "(x∨(y∨z))", "((x∨y)∨z)"},
        {"l3-i", "((x∧y)∨y)", "y"},
        {"l3-ii", "(x∧(x∨y))", "x"},
        {"l4-i", "(x∧(y∨z))", "((x∧y)∨(x∧z))"},
        {"l4-ii", "(x∨(y∧z))", "((x∨y)∧(x∨z))"}}},
      {"bounded_b1", {{"b1-i", "(x∧1)", "x"}, {"b1-ii", "(x∨1)", "1"}}},
      {"boolean_b2", {{"b2-i", "((x∧¬x)∨y)", "y"}, {"b2-ii", "((x∨¬x)∧y)", "y"}}},
      {"heyting_h1_h6",
       {{"h1", "(x∧(x→y))", "(x∧y)"},
        {"h2", "((x→y)∧y)", "y"},
        {"h3", "((x→y)∧(x→z))", "(x→(y∧z))"},
        {"h4", "(x∧(y→y))", "x"},
        {"h5", "(¬1∨y)", "y"},
        {"h6", "¬x", "(x→¬1)"}}},
      {"int_props_a_h",
       {{"a", "x", "(y→x)", true},
        {"b", "(x→y)", "((x→(y→z))→(x→z))", true},
        {"c", "x", "(y→(x∧y))", true},
        {"d", "(x∧y)", "x", true},
        {"e", "x", "(x∨y)", true},
        {"f", "(x→z)", "((y→z)→((x∨y)→z))", true},
        {"g", "(x→y)", "((x→¬y)→¬x)", true},
        {"h", "x", "(¬x→y)", true}}},
      {"derived_eqs",
       {{"idempotent-meet", "(x∧x)", "x"},
        {"idempotent-join", "(x∨x)", "x"},
        {"double-negation", "¬¬x", "x"},           // Boolean algebras only
        {"excluded-middle", "(x∨¬x)", "1"},        // Boolean algebras only
        {"contradiction", "(x∧¬x)", "0"},
        {"identity-implication", "(x→x)", "1"},
        {"pseudo-complementation", "", ""}}},      // handled specially
  };
  auto it = suites.find(suite);
  if (it == suites.end()) fail(errc::bad_parameter, "unknown identity suite: " + suite);
  return it->second;
}

formula parse_term(const std::string& text) {
  // "1"/"0" ride through the formula parser as the reserved variables u9/v9
  // and are resolved to the unit/zero elements during evaluation.
  std::string rewritten;
  for (char c : text) {
    if (c == '1')
      rewritten += "u9";
    else if (c == '0')
      rewritten += "v9";
    else
      rewritten += c;
  }
  return parse(rewritten, signature::assertoric(), notation::infix);
}

int eval_term(const formula& t, const finite_algebra& a, const int* xyz, int unit,
              int zero) {
  switch (t.kind()) {
    case node_kind::variable:
      if (t.name() == "x") return xyz[0];
      if (t.name() == "y") return xyz[1];
      if (t.name() == "z") return xyz[2];
      if (t.name() == "u9") return unit;
      if (t.name() == "v9") return zero;
      fail(errc::bad_parameter, "identity variable " + t.name());
    case node_kind::constant:
    case node_kind::metavariable:
      fail(errc::bad_parameter, "unexpected leaf in identity term");
    case node_kind::application: {
      std::vector<int> args;
      for (const formula& s : t.args()) args.push_back(eval_term(s, a, xyz, unit, zero));
      return a.apply(t.name(), args);
    }
  }
  fail(errc::bad_parameter, "unreachable");
}

int infer_unit(const finite_algebra& a) {
  int e = 0;
  if (a.sig().has_connective("→")) {
    int args[2] = {e, e};
    return a.apply("→", args);
  }
  if (a.sig().has_connective("¬") && a.sig().has_connective("∨")) {
    int n = a.apply("¬", std::span<const int>{&e, 1});
    int args[2] = {e, n};
    return a.apply("∨", args);
  }
  fail(errc::bad_parameter, "cannot locate a unit in this signature");
}

bool leq_in(const finite_algebra& a, int x, int y) {
  int args[2] = {x, y};
  return a.apply("∧", args) == x;
}

}  // namespace

bool identity_report::all() const {
  for (const auto& item : items)
    if (!item.holds) return false;
  return true;
}

bool identity_report::holds(const std::string& name) const {
  for (const auto& item : items)
    if (item.name == name) return item.holds;
  fail(errc::bad_parameter, "no identity named " + name);
}

identity_report check_identities(const finite_algebra& a, const std::string& suite) {
  return check_identities(a, suite, infer_unit(a));
}

identity_report check_identities(const finite_algebra& a, const std::string& suite,
                                 int unit) {
  const int n = a.size();
  int zero = unit;
  if (a.sig().has_connective("¬"))
    zero = a.apply("¬", std::span<const int>{&unit, 1});

  identity_report report;
  report.suite = suite;
  for (const identity& id : suite_items(suite)) {
    identity_item item{id.name, true, ""};
    if (id.name == "pseudo-complementation") {
      // x ≤ y→z ⟺ x∧y ≤ z, quantified over all triples.
      for (int x = 0; x < n && item.holds; ++x)
        for (int y = 0; y < n && item.holds; ++y)
          for (int z = 0; z < n && item.holds; ++z) {
            int yz[2] = {y, z};
            int xy[2] = {x, y};
            bool lhs = leq_in(a, x, a.apply("→", yz));
            bool rhs = leq_in(a, a.apply("∧", xy), z);
            if (lhs != rhs) {
              item.holds = false;
              item.witness = a.elements()[x] + "," + a.elements()[y] + "," + a.elements()[z];
            }
          }
      report.items.push_back(std::move(item));
      continue;
    }
    formula lhs = parse_term(id.lhs);
    formula rhs = parse_term(id.rhs);
    auto used = variables(lhs);
    for (const auto& v : variables(rhs)) used.insert(v);
    int arity = used.count("z") ? 3 : used.count("y") ? 2 : 1;
    int xyz[3] = {0, 0, 0};
    std::uint64_t tuples = 1;
    for (int i = 0; i < arity; ++i) tuples *= n;
    for (std::uint64_t t = 0; t < tuples && item.holds; ++t) {
      std::uint64_t rest = t;
      for (int i = arity - 1; i >= 0; --i) {
        xyz[i] = static_cast<int>(rest % n);
        rest /= n;
      }
      int l = eval_term(lhs, a, xyz, unit, zero);
      int r = eval_term(rhs, a, xyz, unit, zero);
      bool ok = id.leq_form ? leq_in(a, l, r) : l == r;
      if (!ok) {
        item.holds = false;
        item.witness = a.elements()[xyz[0]];
        for (int i = 1; i < arity; ++i) item.witness += "," + a.elements()[xyz[i]];
      }
    }
    report.items.push_back(std::move(item));
  }
  return report;
}

// ---------------------------------------------------------------------------
// Boolean → Heyting

heyting_algebra boolean_to_heyting(const finite_algebra& b) {
  for (const char* op : {"∧", "∨", "¬"})
    if (!b.sig().has_connective(op))
      fail(errc::not_boolean, std::string("missing operation ") + op);
  int unit = infer_unit(b);
  for (const char* suite : {"lattice_l1_l4", "bounded_b1", "boolean_b2"}) {
    identity_report r = check_identities(b, suite, unit);
    if (!r.all()) fail(errc::not_boolean, "identity suite " + std::string(suite) + " fails");
  }
  const int n = b.size();
  std::vector<int> imp(n * n);
  for (int x = 0; x < n; ++x) {
    int nx = b.apply("¬", std::span<const int>{&x, 1});
    for (int y = 0; y < n; ++y) {
      int args[2] = {nx, y};
      imp[x * n + y] = b.apply("∨", args);
    }
  }
  std::vector<int> bic(n * n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      int args[2] = {imp[x * n + y], imp[y * n + x]};
      bic[x * n + y] = b.apply("∧", args);
    }
  std::map<std::string, std::vector<int>> tables;
  tables["∧"] = b.table("∧");
  tables["∨"] = b.table("∨");
  tables["¬"] = b.table("¬");
  tables["→"] = std::move(imp);
  tables["↔"] = std::move(bic);
  finite_algebra h(signature::assertoric(), b.elements(), std::move(tables), {});
  int zero = h.apply("¬", std::span<const int>{&unit, 1});
  return heyting_algebra{std::move(h), unit, zero};
}

// ---------------------------------------------------------------------------
// normal forms

namespace {
formula literal(const std::string& g, bool positive) {
  formula v = formula::var(g);
  return positive ? v : formula::app("¬", {v});
}

formula chain(const std::vector<formula>& parts, const std::string& op) {
  formula out = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) out = formula::app(op, {out, parts[i]});
  return out;
}
}  // namespace

formula normal_form_of_table(const std::vector<bool>& rows, normal_form_kind kind,
                             const std::vector<std::string>& generators) {
  const int k = static_cast<int>(generators.size());
  if (k == 0 || k > 3) fail(errc::too_many_variables, "1 to 3 generators");
  if (rows.size() != (1u << k)) fail(errc::bad_parameter, "table size must be 2^k");

  // Clauses are emitted with the first generator as the most significant bit
  // and value 1 before 0.
  std::vector<formula> clauses;
  for (int row = (1 << k) - 1; row >= 0; --row) {
    bool value = rows[row];
    if (kind == normal_form_kind::dnf && value) {
      std::vector<formula> lits;
      for (int i = 0; i < k; ++i)
        lits.push_back(literal(generators[i], ((row >> (k - 1 - i)) & 1) != 0));
      clauses.push_back(chain(lits, "∧"));
    } else if (kind == normal_form_kind::cnf && !value) {
      std::vector<formula> lits;
      for (int i = 0; i < k; ++i)
        lits.push_back(literal(generators[i], ((row >> (k - 1 - i)) & 1) == 0));
      clauses.push_back(chain(lits, "∨"));
    }
  }
  if (clauses.empty()) {
    // No satisfying row (DNF of a contradiction) or no falsifying row (CNF of
    // a tautology): canonical representative over the first generator.
    formula g = formula::var(generators[0]);
    formula ng = formula::app("¬", {g});
    return formula::app(kind == normal_form_kind::dnf ? "∧" : "∨", {g, ng});
  }
  return chain(clauses, kind == normal_form_kind::dnf ? "∨" : "∧");
}

formula normal_form(const formula& f, normal_form_kind kind,
                    const std::vector<std::string>& generators) {
  if (generators.size() > 3) fail(errc::too_many_variables, "at most 3 generators");
  for (const auto& v : variables(f))
    if (std::find(generators.begin(), generators.end(), v) == generators.end())
      fail(errc::too_many_variables, "variable " + v + " is not a generator");
  const matrix b2 = builtin_matrix("b2");
  const int k = static_cast<int>(generators.size());
  if (k == 0) fail(errc::too_many_variables, "need at least one generator");
  std::vector<bool> rows(1u << k);
  for (int row = 0; row < (1 << k); ++row) {
    valuation v;
    for (int i = 0; i < k; ++i)
      v[generators[i]] = ((row >> (k - 1 - i)) & 1) ? "1" : "0";
    rows[row] = evaluate(b2, v, f) == "1";
  }
  return normal_form_of_table(rows, kind, generators);
}

formula normal_form(const formula& f, normal_form_kind kind) {
  auto vars = variables(f);
  return normal_form(f, kind, {vars.begin(), vars.end()});
}

}  // namespace matlog
