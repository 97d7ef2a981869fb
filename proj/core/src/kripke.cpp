#include "matlog/kripke.hpp"

#include <algorithm>
#include <array>
#include <mutex>

namespace matlog {

// ---------------------------------------------------------------------------
// forcing

namespace {
bool forces_rec(const kripke_model& m, int world, const formula& f) {
  switch (f.kind()) {
    case node_kind::variable: {
      auto it = m.extension.find(f.name());
      std::uint64_t ext = it == m.extension.end() ? 0 : it->second;
      return (ext >> world) & 1;
    }
    case node_kind::constant:
      if (f.name() == "⊤") return true;
      if (f.name() == "⊥") return false;
      fail(errc::signature_mismatch, "constant " + f.name() + " has no forcing clause");
    case node_kind::metavariable:
      fail(errc::signature_mismatch, "cannot force a metaformula");
    case node_kind::application: {
      const std::string& op = f.name();
      if (op == "∧") return forces_rec(m, world, f.args()[0]) && forces_rec(m, world, f.args()[1]);
      if (op == "∨") return forces_rec(m, world, f.args()[0]) || forces_rec(m, world, f.args()[1]);
      if (op == "→") {
        std::uint64_t above = m.frame.up[world];
        while (above) {
          int w = __builtin_ctzll(above);
          above &= above - 1;
          if (forces_rec(m, w, f.args()[0]) && !forces_rec(m, w, f.args()[1])) return false;
        }
        return true;
      }
      if (op == "¬") {
        std::uint64_t above = m.frame.up[world];
        while (above) {
          int w = __builtin_ctzll(above);
          above &= above - 1;
          if (forces_rec(m, w, f.args()[0])) return false;
        }
        return true;
      }
      if (op == "↔")
        return forces_rec(m, world, formula::app("→", {f.args()[0], f.args()[1]})) &&
               forces_rec(m, world, formula::app("→", {f.args()[1], f.args()[0]}));
      fail(errc::signature_mismatch, "connective " + op + " has no forcing clause");
    }
  }
  return false;
}
}  // namespace

bool forces(const kripke_model& m, int world, const formula& f) {
  if (world < 0 || world >= m.frame.n) fail(errc::bad_parameter, "no such world");
  for (const auto& [var, ext] : m.extension)
    for (int w = 0; w < m.frame.n; ++w)
      if ((ext >> w) & 1)
        if ((m.frame.up[w] & ~ext) != 0)
          fail(errc::bad_parameter, "extension of " + var + " is not up-closed");
  return forces_rec(m, world, f);
}

// ---------------------------------------------------------------------------
// poset enumeration up to isomorphism

namespace {

/// Strict-order adjacency as one bitstring, minimized over all relabelings.
std::uint64_t canonical_code(const poset& p) {
  std::array<int, 7> perm{};
  for (int i = 0; i < p.n; ++i) perm[i] = i;
  std::uint64_t best = ~0ULL;
  do {
    std::uint64_t code = 0;
    int bit = 0;
    for (int a = 0; a < p.n; ++a)
      for (int b = 0; b < p.n; ++b) {
        if (a != b && p.leq(perm[a], perm[b])) code |= 1ULL << bit;
        ++bit;
      }
    best = std::min(best, code);
  } while (std::next_permutation(perm.begin(), perm.begin() + p.n));
  return best;
}

/// Grows every poset by one new maximal element whose strict down-set is an
/// arbitrary down-closed subset; duplicates collapse via canonical codes.
std::vector<poset> enumerate_posets(int n) {
  std::vector<poset> current;
  current.push_back(make_poset(1, {}));
  for (int size = 2; size <= n; ++size) {
    std::vector<poset> next;
    std::set<std::uint64_t> seen;
    for (const poset& p : current) {
      std::uint64_t all = (1ULL << p.n) - 1;
      for (std::uint64_t down = 0; down <= all; ++down) {
        // down-closed: w ∈ down implies every w' ≤ w is in down
        bool closed = true;
        for (int w = 0; w < p.n && closed; ++w)
          if ((down >> w) & 1)
            for (int v = 0; v < p.n && closed; ++v)
              if (p.leq(v, w) && !((down >> v) & 1)) closed = false;
        if (!closed) continue;
        poset q;
        q.n = p.n + 1;
        q.up = p.up;
        for (int w = 0; w < p.n; ++w)
          if ((down >> w) & 1) q.up[w] |= 1ULL << p.n;
        q.up.push_back(1ULL << p.n);
        if (seen.insert(canonical_code(q)).second) next.push_back(q);
      }
    }
    current = std::move(next);
  }
  return current;
}

}  // namespace

const std::vector<poset>& posets_up_to_iso(int n) {
  if (n < 1 || n > 7) fail(errc::too_large, "poset enumeration supports 1..7 worlds");
  static std::vector<std::vector<poset>> cache(8);
  static std::mutex guard;
  std::lock_guard<std::mutex> lock(guard);
  if (cache[n].empty()) cache[n] = enumerate_posets(n);
  return cache[n];
}

// ---------------------------------------------------------------------------
// countermodel search

std::optional<pointed_model> int_countermodel(const formula& f, int max_worlds,
                                              const search_options& opts) {
  if (max_worlds < 1 || max_worlds > 7)
    fail(errc::budget_exceeded, "countermodel budget supports 1..7 worlds");
  std::vector<std::string> vars(variables(f).begin(), variables(f).end());
  std::uint64_t spent = 0;
  for (int n = 1; n <= max_worlds; ++n) {
    for (const poset& frame : posets_up_to_iso(n)) {
      heyting_algebra h = upset_algebra(frame);
      std::vector<std::uint64_t> sets = upsets_of(frame);
      matrix m = to_matrix(h);
      // Valuations over up-sets, first variable most significant.
      std::uint64_t rows = 1;
      for (std::size_t i = 0; i < vars.size(); ++i) {
        rows *= sets.size();
        if (spent + rows > opts.budget) fail(errc::budget_exceeded, "countermodel budget");
      }
      for (std::uint64_t row = 0; row < rows; ++row) {
        std::uint64_t rest = row;
        valuation v;
        kripke_model model;
        model.frame = frame;
        for (std::size_t i = vars.size(); i-- > 0;) {
          std::size_t pick = rest % sets.size();
          rest /= sets.size();
          v[vars[i]] = h.algebra.elements()[pick];
          model.extension[vars[i]] = sets[pick];
        }
        ++spent;
        int value = evaluate_index(m, v, f);
        if (value != h.unit) {
          // Pick the least world outside the value's up-set.
          std::uint64_t value_set = sets[value];
          for (int w = 0; w < frame.n; ++w)
            if (!((value_set >> w) & 1)) return pointed_model{std::move(model), w};
        }
      }
    }
  }
  return std::nullopt;
}

bool int_entails_up_to(const formula& f, const formula& g, int max_worlds) {
  return !int_countermodel(formula::app("→", {f, g}), max_worlds).has_value();
}

// ---------------------------------------------------------------------------
// Rieger–Nishimura ladder

formula rn_formula(int index) {
  if (index < 0) fail(errc::bad_parameter, "negative ladder index");
  static std::vector<formula> ladder;
  static std::mutex guard;
  std::lock_guard<std::mutex> lock(guard);
  if (ladder.empty()) {
    formula p = formula::var("p");
    formula np = formula::app("¬", {p});
    ladder.push_back(formula::app("∧", {p, np}));  // P_0
    ladder.push_back(np);                          // P_1
    ladder.push_back(p);                           // P_2
  }
  while (static_cast<int>(ladder.size()) <= index) {
    int k = static_cast<int>(ladder.size());
    if (k % 2 == 1)  // P_{2n+3}, k = 2n+3
      ladder.push_back(formula::app("→", {ladder[k - 2], ladder[k - 3]}));
    else  // P_{2n+4}, k = 2n+4
      ladder.push_back(formula::app("∨", {ladder[k - 3], ladder[k - 2]}));
  }
  return ladder[index];
}

formula rn_top() {
  formula p = formula::var("p");
  return formula::app("→", {p, p});
}

std::string rn_class::str() const {
  switch (what) {
    case kind::p_index: return "P" + std::to_string(index);
    case kind::top: return "1";
    case kind::unresolved: return "unresolved";
  }
  return "unresolved";
}

rn_value_table::rn_value_table(int max_index, int max_worlds)
    : max_index_(max_index), max_worlds_(max_worlds) {
  for (int n = 1; n <= max_worlds; ++n)
    for (const poset& frame : posets_up_to_iso(n)) {
      frames_.push_back(frame);
      algebras_.push_back(upset_algebra(frame));
      upsets_.push_back(upsets_of(frame));
    }
  for (std::size_t a = 0; a < algebras_.size(); ++a)
    for (int e = 0; e < algebras_[a].algebra.size(); ++e) {
      point_algebra_.push_back(static_cast<int>(a));
      point_element_.push_back(e);
      point_extension_.push_back(upsets_[a][e]);
    }

  // P-values by the defining recursion, one pass per sample point.
  p_values_.assign(max_index_ + 1, std::vector<int>(points()));
  top_values_.assign(points(), 0);
  for (std::size_t pt = 0; pt < points(); ++pt) {
    const finite_algebra& alg = algebras_[point_algebra_[pt]].algebra;
    int p = point_element_[pt];
    auto meet = [&](int x, int y) { int args[2] = {x, y}; return alg.apply("∧", args); };
    auto join = [&](int x, int y) { int args[2] = {x, y}; return alg.apply("∨", args); };
    auto imp = [&](int x, int y) { int args[2] = {x, y}; return alg.apply("→", args); };
    auto neg = [&](int x) { return alg.apply("¬", std::span<const int>{&x, 1}); };
    std::vector<int> vals(max_index_ + 1);
    if (max_index_ >= 0) vals[0] = meet(p, neg(p));
    if (max_index_ >= 1) vals[1] = neg(p);
    if (max_index_ >= 2) vals[2] = p;
    for (int i = 3; i <= max_index_; ++i)
      vals[i] = i % 2 == 1 ? imp(vals[i - 2], vals[i - 3]) : join(vals[i - 3], vals[i - 2]);
    for (int i = 0; i <= max_index_; ++i) p_values_[i][pt] = vals[i];
    top_values_[pt] = algebras_[point_algebra_[pt]].unit;
  }
}

int rn_value_table::value(int p_index, std::size_t point) const {
  return p_index < 0 ? top_values_[point] : p_values_[p_index][point];
}

const std::vector<int>& rn_value_table::values(int p_index) const {
  return p_index < 0 ? top_values_ : p_values_[p_index];
}

std::vector<int> rn_value_table::values_of(const formula& f) const {
  if (!variables(f).empty() && variables(f) != std::set<std::string>{"p"})
    fail(errc::bad_parameter, "the ladder lives over the single variable p");
  std::vector<int> out(points());
  for (std::size_t a = 0, pt = 0; a < algebras_.size(); ++a) {
    const heyting_algebra& h = algebras_[a];
    matrix m = to_matrix(h);
    for (int e = 0; e < h.algebra.size(); ++e, ++pt) {
      valuation v{{"p", h.algebra.elements()[e]}};
      out[pt] = evaluate_index(m, v, f);
    }
  }
  return out;
}

bool rn_value_table::below(const std::vector<int>& a, const std::vector<int>& b) const {
  for (std::size_t pt = 0; pt < points(); ++pt) {
    const finite_algebra& alg = algebras_[point_algebra_[pt]].algebra;
    int args[2] = {a[pt], b[pt]};
    if (alg.apply("∧", args) != a[pt]) return false;
  }
  return true;
}

std::optional<pointed_model> rn_value_table::refute_below(const std::vector<int>& a,
                                                          const std::vector<int>& b) const {
  for (std::size_t pt = 0; pt < points(); ++pt) {
    const heyting_algebra& h = algebras_[point_algebra_[pt]];
    int args[2] = {a[pt], b[pt]};
    int imp = h.algebra.apply("→", args);
    if (imp != h.unit) {
      kripke_model model;
      model.frame = frames_[point_algebra_[pt]];
      model.extension["p"] = point_extension_[pt];
      std::uint64_t good = upsets_[point_algebra_[pt]][imp];
      for (int w = 0; w < model.frame.n; ++w)
        if (!((good >> w) & 1)) return pointed_model{std::move(model), w};
    }
  }
  return std::nullopt;
}

rn_class rn_classify(const formula& f, int max_index, int max_worlds) {
  for (const auto& v : variables(f))
    if (v != "p") fail(errc::bad_parameter, "rn_classify expects a formula over p");
  rn_value_table table(max_index, max_worlds);
  std::vector<int> fv = table.values_of(f);
  std::vector<rn_class> survivors;
  for (int i = 0; i <= max_index; ++i)
    if (table.equal(fv, table.values(i))) survivors.push_back(rn_class::p(i));
  if (table.equal(fv, table.values(-1))) survivors.push_back(rn_class::top());
  if (survivors.size() == 1) return survivors[0];
  return rn_class::unresolved();
}

}  // namespace matlog
