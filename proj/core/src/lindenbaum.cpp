#include "matlog/lindenbaum.hpp"

#include <algorithm>

namespace matlog {

namespace {

std::vector<std::string> rank_generators(int rank) {
  static const std::vector<std::string> names = {"p", "q", "r"};
  return {names.begin(), names.begin() + rank};
}

}  // namespace

// ---------------------------------------------------------------------------
// classical free algebras

quotient_algebra lt_classical(int rank) {
  if (rank < 0 || rank > 3) fail(errc::bad_parameter, "rank must be 0..3");
  const int rows = 1 << rank;
  const int classes = 1 << rows;

  quotient_algebra out;
  for (int c = 0; c < classes; ++c) {
    std::string key(rows, '0');
    for (int r = 0; r < rows; ++r)
      if ((c >> r) & 1) key[r] = '1';
    out.keys.push_back(std::move(key));
    if (rank == 0) {
      // No variable-free formulas exist in this signature; the two classes
      // are represented by the canonical bounds over p.
      formula p = formula::var("p");
      formula np = formula::app("¬", {p});
      out.representatives.push_back(formula::app(c == 0 ? "∧" : "∨", {p, np}));
    } else {
      std::vector<bool> table(rows);
      for (int r = 0; r < rows; ++r) table[r] = (c >> r) & 1;
      out.representatives.push_back(
          normal_form_of_table(table, normal_form_kind::dnf, rank_generators(rank)));
    }
  }

  const int n = classes;
  auto make_table = [&](auto&& fn) {
    std::vector<int> t(n * n);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) t[a * n + b] = fn(a, b) & (classes - 1);
    return t;
  };
  std::map<std::string, std::vector<int>> tables;
  tables["∧"] = make_table([](int a, int b) { return a & b; });
  tables["∨"] = make_table([](int a, int b) { return a | b; });
  tables["→"] = make_table([&](int a, int b) { return (~a | b) & (classes - 1); });
  tables["↔"] = make_table([&](int a, int b) { return ~(a ^ b) & (classes - 1); });
  std::vector<int> neg(n);
  for (int a = 0; a < n; ++a) neg[a] = ~a & (classes - 1);
  tables["¬"] = std::move(neg);

  out.algebra =
      finite_algebra(signature::assertoric(), out.keys, std::move(tables), {});
  out.unit = classes - 1;
  out.zero = 0;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (a != b && (a & ~b) == 0) out.order.emplace_back(a, b);
  return out;
}

namespace {
int truth_table_bits(int rank, const formula& f) {
  auto used = variables(f);
  auto gens = rank_generators(rank);
  for (const auto& v : used)
    if (std::find(gens.begin(), gens.end(), v) == gens.end())
      fail(errc::rank_exceeded, "variable " + v + " is outside rank " + std::to_string(rank));
  const matrix b2 = builtin_matrix("b2");
  int bits = 0;
  for (int row = 0; row < (1 << rank); ++row) {
    valuation v;
    for (int i = 0; i < rank; ++i)
      v[gens[i]] = ((row >> (rank - 1 - i)) & 1) ? "1" : "0";
    if (evaluate(b2, v, f) == "1") bits |= 1 << row;
  }
  return bits;
}
}  // namespace

int lt_class_of(const quotient_algebra& q, int rank, const formula& f) {
  if ((1 << (1 << rank)) != q.size()) fail(errc::bad_parameter, "rank does not fit");
  return truth_table_bits(rank, f);
}

int lt_eval(const quotient_algebra& q, int rank, const formula& f) {
  auto gens = rank_generators(rank);
  for (const auto& v : variables(f))
    if (std::find(gens.begin(), gens.end(), v) == gens.end())
      fail(errc::rank_exceeded, "variable " + v + " is outside rank " + std::to_string(rank));
  matrix m{q.algebra, std::vector<bool>(q.size(), false), "lt"};
  m.designated[q.unit] = true;
  valuation v;
  for (int i = 0; i < rank; ++i)
    v[gens[i]] = q.keys[lt_class_of(q, rank, formula::var(gens[i]))];
  return evaluate_index(m, v, f);
}

// ---------------------------------------------------------------------------
// the Rieger–Nishimura prefix

rn_lattice_result rn_lattice(int count, int budget) {
  if (count < 0 || count > 13) fail(errc::bad_parameter, "prefix supports P0..P13");
  rn_lattice_result out;
  out.count = count;
  out.budget = budget;
  rn_value_table table(count, budget);

  const int n = count + 2;  // P_0..P_count plus the unit
  const int top = n - 1;
  for (int i = 0; i <= count; ++i) {
    out.keys.push_back("P" + std::to_string(i));
    out.representatives.push_back(rn_formula(i));
  }
  out.keys.push_back("1");
  out.representatives.push_back(rn_top());
  out.unit = top;
  out.zero = 0;

  auto values_of = [&](int element) -> const std::vector<int>& {
    return table.values(element == top ? -1 : element);
  };

  // Budget-relative distinctness.
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (table.equal(values_of(i), values_of(j))) out.unresolved.emplace_back(i, j);

  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && table.below(values_of(i), values_of(j))) out.order.emplace_back(i, j);

  // Operation tables: identify each combination inside the prefix, or -1.
  auto identify = [&](const std::vector<int>& vals) {
    for (int k = 0; k < n; ++k)
      if (table.equal(vals, values_of(k))) return k;
    return -1;
  };
  for (const std::string& op : {"∧", "∨", "→"}) {
    std::vector<int> t(n * n, -1);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        formula combined = formula::app(op, {out.representatives[i], out.representatives[j]});
        t[i * n + j] = identify(table.values_of(combined));
      }
    out.tables[op] = std::move(t);
  }
  return out;
}

// ---------------------------------------------------------------------------
// verification

bool quotient_check_report::ok() const {
  for (const auto& suite : identity_suites)
    if (!suite.all()) return false;
  return lindenbaum_criterion.failures.empty();
}

quotient_check_report verify_lt_classical(const quotient_algebra& q, int rank,
                                          std::uint64_t cases, std::uint64_t seed) {
  quotient_check_report report;
  for (const char* suite :
       {"lattice_l1_l4", "bounded_b1", "boolean_b2", "heyting_h1_h6", "int_props_a_h"})
    report.identity_suites.push_back(check_identities(q.algebra, suite, q.unit));

  report.lindenbaum_criterion.property =
      "class of f is the unit iff f is a two-valued tautology";
  report.lindenbaum_criterion.seed = seed;
  if (rank == 0) return report;

  rng g(seed);
  formula_generator gen(signature::assertoric(), rank_generators(rank), 6);
  const matrix b2 = builtin_matrix("b2");
  for (std::uint64_t k = 0; k < cases; ++k) {
    formula f = gen(g);
    ++report.lindenbaum_criterion.cases;
    bool unit_class = lt_eval(q, rank, f) == q.unit;
    bool tautology = check_validity(b2, f).valid;
    if (unit_class != tautology)
      report.lindenbaum_criterion.failures.push_back(
          {print(f) + (unit_class ? " names the unit but is refutable"
                                  : " is a tautology outside the unit class")});
  }
  return report;
}

quotient_check_report verify_rn_lattice(const rn_lattice_result& lattice) {
  quotient_check_report report;

  // Heyting identities over the resolved part of the tables.
  const int n = lattice.size();
  auto lookup = [&](const std::string& op, int a, int b) {
    return lattice.tables.at(op)[a * n + b];
  };
  identity_report identities;
  identities.suite = "heyting (resolved prefix entries)";
  auto defined = [&](int v) { return v >= 0; };
  // h1: x∧(x→y) = x∧y, checked where all lookups resolve.
  identity_item h1{"h1", true, ""};
  identity_item h2{"h2", true, ""};
  identity_item h4{"h4", true, ""};
  identity_item commutative{"meet/join commutativity", true, ""};
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      int xy = lookup("∧", x, y);
      int yx = lookup("∧", y, x);
      int jxy = lookup("∨", x, y);
      int jyx = lookup("∨", y, x);
      if (defined(xy) && defined(yx) && xy != yx) commutative.holds = false;
      if (defined(jxy) && defined(jyx) && jxy != jyx) commutative.holds = false;
      int imp = lookup("→", x, y);
      if (defined(imp)) {
        int lhs = lookup("∧", x, imp);
        if (defined(lhs) && defined(xy) && lhs != xy) {
          h1.holds = false;
          h1.witness = lattice.keys[x] + "," + lattice.keys[y];
        }
        int rhs = lookup("∧", imp, y);
        if (defined(rhs) && rhs != y) {
          h2.holds = false;
          h2.witness = lattice.keys[x] + "," + lattice.keys[y];
        }
      }
      int yy = lookup("→", y, y);
      if (defined(yy)) {
        int lhs = lookup("∧", x, yy);
        if (defined(lhs) && lhs != x) {
          h4.holds = false;
          h4.witness = lattice.keys[x] + "," + lattice.keys[y];
        }
      }
    }
  identities.items = {commutative, h1, h2, h4};
  report.identity_suites.push_back(std::move(identities));

  report.lindenbaum_criterion.property =
      "a representative names the unit class iff it has no countermodel at the budget";
  for (int i = 0; i < n; ++i) {
    ++report.lindenbaum_criterion.cases;
    bool no_counter =
        !int_countermodel(lattice.representatives[i], lattice.budget).has_value();
    bool is_unit = i == lattice.unit;
    if (no_counter != is_unit)
      report.lindenbaum_criterion.failures.push_back(
          {lattice.keys[i] + (no_counter ? " is unrefuted but not the unit"
                                         : " is the unit but refutable")});
  }
  return report;
}

}  // namespace matlog
