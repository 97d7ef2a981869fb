#include "matlog/calculus.hpp"

#include <algorithm>

namespace matlog {

// ---------------------------------------------------------------------------
// builtin rules

namespace {

formula mv(const char* name) { return formula::metavar(name); }

formula imp(formula a, formula b) { return formula::app("→", {std::move(a), std::move(b)}); }
formula conj(formula a, formula b) { return formula::app("∧", {std::move(a), std::move(b)}); }
formula disj(formula a, formula b) { return formula::app("∨", {std::move(a), std::move(b)}); }
formula neg(formula a) { return formula::app("¬", {std::move(a)}); }

const formula A = mv("α");
const formula B = mv("β");
const formula C = mv("γ");

}  // namespace

rule axiom_schema(int k) {
  switch (k) {
    case 1: return {"ax1", {}, imp(A, imp(B, A))};
    case 2: return {"ax2", {}, imp(imp(A, B), imp(imp(A, imp(B, C)), imp(A, C)))};
    case 3: return {"ax3", {}, imp(A, imp(B, conj(A, B)))};
    case 4: return {"ax4", {}, imp(conj(A, B), A)};
    case 5: return {"ax5", {}, imp(conj(A, B), B)};
    case 6: return {"ax6", {}, imp(A, disj(A, B))};
    case 7: return {"ax7", {}, imp(B, disj(A, B))};
    case 8: return {"ax8", {}, imp(imp(A, C), imp(imp(B, C), imp(disj(A, B), C)))};
    case 9: return {"ax9", {}, imp(imp(A, B), imp(imp(A, neg(B)), neg(A)))};
    case 10: return {"ax10", {}, imp(neg(neg(A)), A)};
    case 11: return {"ax11", {}, imp(B, imp(neg(B), A))};
    case 12: return {"ax12", {}, disj(imp(A, B), imp(B, A))};
  }
  fail(errc::bad_parameter, "no axiom schema ax" + std::to_string(k));
}

namespace {

std::vector<rule> nd_rule_list() {
  return {
      {"a-i", {A, B}, conj(A, B)},
      {"a-ii", {A}, disj(A, B)},
      {"a-iii", {B}, disj(A, B)},
      {"a-iv", {A}, neg(neg(A))},
      {"b-i", {conj(A, B)}, A},
      {"b-ii", {conj(A, B)}, B},
      {"b-iii", {A, imp(A, B)}, B},
      {"b-iv", {neg(neg(A))}, A},
  };
}

rule modus_ponens() { return {"b-iii", {A, imp(A, B)}, B}; }

calculus hilbert(const std::string& name, const std::vector<int>& axioms) {
  calculus c;
  c.name = name;
  for (int k : axioms) c.rules.push_back(axiom_schema(k));
  c.rules.push_back(modus_ponens());
  return c;
}

}  // namespace

calculus builtin_calculus(const std::string& name) {
  if (name == "hilbert_cl") return hilbert(name, {1, 2, 3, 4, 5, 6, 7, 8, 9, 10});
  if (name == "hilbert_int") return hilbert(name, {1, 2, 3, 4, 5, 6, 7, 8, 9, 11});
  if (name == "hilbert_p") return hilbert(name, {1, 2, 3, 4, 5, 6, 7, 8});
  if (name == "hilbert_lc") return hilbert(name, {1, 2, 3, 4, 5, 6, 7, 8, 9, 11, 12});
  if (name == "nd_rules") return calculus{name, nd_rule_list()};
  fail(errc::bad_parameter, "unknown calculus: " + name);
}

const rule* calculus::find(const std::string& rule_name) const {
  for (const rule& r : rules)
    if (r.name == rule_name || (rule_name == "MP" && r.name == "b-iii")) return &r;
  return nullptr;
}

// ---------------------------------------------------------------------------
// derivation checking

namespace {

bool in_set(const std::vector<formula>& xs, const formula& f) {
  return std::find(xs.begin(), xs.end(), f) != xs.end();
}

std::optional<std::string> check_rule_app(const calculus& c, const derivation& d,
                                          std::size_t index) {
  const auto& st = d.steps[index];
  const auto& app = std::get<derivation::rule_app>(st.by);
  const rule* r = c.find(app.rule);
  if (r == nullptr) return "rule " + app.rule + " is not in the calculus";
  if (app.from.size() != r->premises.size())
    return "rule " + r->name + " takes " + std::to_string(r->premises.size()) +
           " premises, " + std::to_string(app.from.size()) + " cited";
  for (std::size_t i : app.from)
    if (i >= index) return "step cites a step that does not precede it";

  std::vector<formula> cited;
  for (std::size_t i : app.from) cited.push_back(d.steps[i].f);

  if (app.inst) {
    for (std::size_t i = 0; i < cited.size(); ++i)
      if (!(instantiate(r->premises[i], *app.inst) == cited[i]))
        return "recorded instantiation does not send premise " + std::to_string(i + 1) +
               " of " + r->name + " to the cited step";
    if (!(instantiate(r->conclusion, *app.inst) == st.f))
      return "recorded instantiation does not yield the step formula";
    return std::nullopt;
  }
  auto binding = match_instance(r->conclusion, st.f);
  if (binding) binding = match_all(r->premises, cited, *binding);
  if (!binding) return "no instantiation of " + r->name + " fits the cited steps";
  return std::nullopt;
}

}  // namespace

verification check_derivation(const calculus& c, const derivation& d, const formula& goal) {
  if (d.steps.empty()) return verification::failure(0, "empty derivation");
  for (std::size_t i = 0; i < d.steps.size(); ++i) {
    const auto& st = d.steps[i];
    if (std::holds_alternative<derivation::premise_tag>(st.by)) {
      if (!in_set(d.premises, st.f))
        return verification::failure(i, "formula is not among the premises");
    } else {
      if (auto why = check_rule_app(c, d, i)) return verification::failure(i, *why);
    }
  }
  if (!(d.steps.back().f == goal))
    return verification::failure(d.steps.size() - 1, "last step is not the goal");
  return verification::pass();
}

// ---------------------------------------------------------------------------
// confirmation checking

namespace {

bool same_set(std::vector<formula> a, std::vector<formula> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  b.erase(std::unique(b.begin(), b.end()), b.end());
  return a == b;
}

std::vector<formula> with(const std::vector<formula>& xs, const formula& f) {
  std::vector<formula> out = xs;
  if (!in_set(out, f)) out.push_back(f);
  return out;
}

struct preorder_counter {
  std::size_t next = 0;
};

verification check_conf_rec(const confirmation& c, preorder_counter& pc) {
  const std::size_t self = pc.next++;
  static const calculus nd = builtin_calculus("nd_rules");

  switch (c.how) {
    case confirmation::kind::derivation: {
      if (!c.embedded) return verification::failure(self, "type-1 node lacks a derivation");
      if (!same_set(c.embedded->premises, c.premises))
        return verification::failure(self, "embedded derivation uses a different premise set");
      verification v = check_derivation(nd, *c.embedded, c.goal);
      if (!v.ok) return verification::failure(self, "embedded derivation: " + v.reason);
      return verification::pass();
    }
    case confirmation::kind::hyperrule: {
      if (c.hyperrule == "c-i") {
        if (c.children.size() != 1)
          return verification::failure(self, "c-i takes one child sequent");
        if (c.goal.kind() != node_kind::application || c.goal.name() != "→")
          return verification::failure(self, "c-i concludes an implication");
        const formula& a = c.goal.args()[0];
        const formula& b = c.goal.args()[1];
        const confirmation& child = c.children[0];
        if (!same_set(child.premises, with(c.premises, a)))
          return verification::failure(self, "child premises are not X ∪ {antecedent}");
        if (!(child.goal == b))
          return verification::failure(self, "child goal is not the consequent");
      } else if (c.hyperrule == "c-ii") {
        if (c.children.size() != 2)
          return verification::failure(self, "c-ii takes two child sequents");
        if (c.goal.kind() != node_kind::application || c.goal.name() != "¬")
          return verification::failure(self, "c-ii concludes a negation");
        const formula& a = c.goal.args()[0];
        const confirmation& left = c.children[0];
        const confirmation& right = c.children[1];
        std::vector<formula> want = with(c.premises, a);
        if (!same_set(left.premises, want) || !same_set(right.premises, want))
          return verification::failure(self, "child premises are not X ∪ {α}");
        if (!(right.goal.kind() == node_kind::application && right.goal.name() == "¬" &&
              right.goal.args()[0] == left.goal))
          return verification::failure(self, "children must conclude β and ¬β");
      } else if (c.hyperrule == "c-iii") {
        if (c.children.size() != 2)
          return verification::failure(self, "c-iii takes two child sequents");
        // The node asserts X, α∨β ⊢ goal; locate the principal disjunction.
        bool matched = false;
        for (const formula& delta : c.premises) {
          if (delta.kind() != node_kind::application || delta.name() != "∨") continue;
          std::vector<formula> rest;
          for (const formula& f : c.premises)
            if (!(f == delta)) rest.push_back(f);
          const formula& a = delta.args()[0];
          const formula& b = delta.args()[1];
          if (same_set(c.children[0].premises, with(rest, a)) &&
              same_set(c.children[1].premises, with(rest, b)) &&
              c.children[0].goal == c.goal && c.children[1].goal == c.goal) {
            matched = true;
            break;
          }
        }
        if (!matched)
          return verification::failure(
              self, "no premise disjunction matches the two child sequents");
      } else {
        return verification::failure(self, "unknown hyperrule " + c.hyperrule);
      }
      for (const confirmation& child : c.children) {
        verification v = check_conf_rec(child, pc);
        if (!v.ok) return v;
      }
      return verification::pass();
    }
    case confirmation::kind::composition: {
      if (!c.embedded) return verification::failure(self, "type-3 node lacks a derivation");
      std::vector<formula> enlarged = c.premises;
      for (const confirmation& child : c.children) {
        if (!same_set(child.premises, c.premises))
          return verification::failure(self, "type-3 children must share the node's premises");
        enlarged = with(enlarged, child.goal);
      }
      if (!same_set(c.embedded->premises, enlarged))
        return verification::failure(
            self, "embedded derivation must start from X plus the children's goals");
      verification v = check_derivation(nd, *c.embedded, c.goal);
      if (!v.ok) return verification::failure(self, "embedded derivation: " + v.reason);
      for (const confirmation& child : c.children) {
        verification r = check_conf_rec(child, pc);
        if (!r.ok) return r;
      }
      return verification::pass();
    }
  }
  return verification::failure(self, "malformed node");
}

}  // namespace

verification check_confirmation(const confirmation& c) {
  preorder_counter pc;
  return check_conf_rec(c, pc);
}

// ---------------------------------------------------------------------------
// soundness

namespace {

/// Reads a rule as concrete formulas: metavariable α becomes variable zα,
/// i.e. fresh variables z1, z2, ... in order of first occurrence.
struct rule_as_formulas {
  std::vector<formula> premises;
  formula conclusion;
};

formula metavars_to_vars(const formula& f, std::map<std::string, formula>& table) {
  switch (f.kind()) {
    case node_kind::metavariable: {
      auto it = table.find(f.name());
      if (it == table.end()) {
        formula v = formula::var("z" + std::to_string(table.size() + 1));
        it = table.emplace(f.name(), v).first;
      }
      return it->second;
    }
    case node_kind::variable:
    case node_kind::constant:
      return f;
    case node_kind::application: {
      std::vector<formula> args;
      for (const formula& a : f.args()) args.push_back(metavars_to_vars(a, table));
      return formula::app(f.name(), std::move(args));
    }
  }
  return f;
}

rule_as_formulas freeze(const rule& r) {
  std::map<std::string, formula> table;
  rule_as_formulas out{{}, metavars_to_vars(r.conclusion, table)};
  for (const formula& p : r.premises) out.premises.push_back(metavars_to_vars(p, table));
  // conclusion first so its metavariables get the low indices; premises reuse
  return out;
}

}  // namespace

std::vector<rule_soundness> soundness_check(const calculus& c, const matrix& m,
                                            const search_options& opts) {
  std::vector<rule_soundness> out;
  for (const rule& r : c.rules) {
    rule_as_formulas fr = freeze(r);
    consequence_result cr = matrix_consequence(m, fr.premises, fr.conclusion, opts);
    out.push_back({r.name, cr.holds, std::move(cr.witness), cr.evaluations});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Horn translation

namespace {

const std::vector<std::string>& horn_variable_pool() {
  static const std::vector<std::string> pool = {"x", "y", "z", "u", "v", "w"};
  return pool;
}

void horn_name(const formula& f, std::map<std::string, std::string>& names) {
  if (f.kind() == node_kind::metavariable) {
    if (!names.count(f.name())) {
      std::size_t k = names.size();
      const auto& pool = horn_variable_pool();
      names[f.name()] =
          k < pool.size() ? pool[k] : "x" + std::to_string(k - pool.size() + 1);
    }
    return;
  }
  for (const formula& a : f.args()) horn_name(a, names);
}

void horn_term(const formula& f, const std::map<std::string, std::string>& names,
               bool parenthesize, std::string& out) {
  switch (f.kind()) {
    case node_kind::metavariable: out += names.at(f.name()); return;
    case node_kind::variable:
    case node_kind::constant: out += f.name(); return;
    case node_kind::application:
      if (f.args().size() == 1) {
        out += f.name();
        horn_term(f.args()[0], names, true, out);
      } else {
        if (parenthesize) out += '(';
        horn_term(f.args()[0], names, true, out);
        out += f.name();
        horn_term(f.args()[1], names, true, out);
        if (parenthesize) out += ')';
      }
      return;
  }
}

}  // namespace

std::string rule_to_horn(const rule& r) {
  std::map<std::string, std::string> names;
  for (const formula& p : r.premises) horn_name(p, names);
  horn_name(r.conclusion, names);

  // Quantifier prefix in order of first occurrence.
  std::vector<std::string> ordered;
  {
    std::map<std::string, std::string> seen;
    auto emit = [&](const formula& f, auto&& self) -> void {
      if (f.kind() == node_kind::metavariable) {
        if (seen.emplace(f.name(), names.at(f.name())).second)
          ordered.push_back(names.at(f.name()));
        return;
      }
      for (const formula& a : f.args()) self(a, self);
    };
    for (const formula& p : r.premises) emit(p, emit);
    emit(r.conclusion, emit);
  }

  std::string out;
  for (const std::string& v : ordered) out += "∀" + v;
  if (!ordered.empty()) out += " ";
  auto atom = [&](const formula& f) {
    std::string t = "D(";
    horn_term(f, names, false, t);
    return t + ")";
  };
  if (r.premises.empty()) return out + atom(r.conclusion);
  std::string body = "(";
  for (std::size_t i = 0; i < r.premises.size(); ++i) {
    if (i) body += " & ";
    body += atom(r.premises[i]);
  }
  body += ") ⇒ " + atom(r.conclusion);
  return out + "(" + body + ")";
}

// ---------------------------------------------------------------------------
// the non-finitary premise family at finite scale

gamma_star_report gamma_star_demo(int m, const search_options& opts) {
  if (m < 1) fail(errc::bad_parameter, "need at least one premise");
  gamma_star_report report;
  report.m = m;
  report.conclusion = formula::var("p0");

  // First m pairs (i,j), 0 < i < j, ordered by (j, i): (1,2), (1,3), (2,3), ...
  std::vector<std::pair<int, int>> pairs;
  for (int j = 2; static_cast<int>(pairs.size()) < m; ++j)
    for (int i = 1; i < j && static_cast<int>(pairs.size()) < m; ++i)
      pairs.emplace_back(i, j);
  int max_var = 0;
  auto premise_for = [&](int i, int j) {
    formula pi = formula::var("p" + std::to_string(i));
    formula pj = formula::var("p" + std::to_string(j));
    return imp(formula::app("↔", {pi, pj}), report.conclusion);
  };
  for (auto [i, j] : pairs) {
    report.premises.push_back(premise_for(i, j));
    max_var = std::max(max_var, j);
  }

  // Refutation in the (m+3)-chain: p0 at the pre-top element, the other
  // variables pairwise distinct starting from the bottom.
  matrix chain = godel_matrix(m + 3);
  report.refuting_matrix = chain.name;
  if (max_var > m + 3)
    fail(errc::bad_parameter, "not enough chain elements for distinct values");
  report.refuting_valuation["p0"] = chain.algebra.elements()[m + 1];  // pre-top
  for (int v = 1; v <= max_var; ++v)
    report.refuting_valuation["p" + std::to_string(v)] = chain.algebra.elements()[v - 1];

  report.refutation_verified = true;
  for (const formula& f : report.premises)
    report.refutation_verified =
        report.refutation_verified &&
        chain.is_designated(evaluate_index(chain, report.refuting_valuation, f));
  report.refutation_verified =
      report.refutation_verified &&
      !chain.is_designated(evaluate_index(chain, report.refuting_valuation, report.conclusion));
  report.consequence_holds =
      matrix_consequence(chain, report.premises, report.conclusion, opts).holds;

  // Saturation: with variables p1..p_{m+3} over the (m+2)-chain, some pair
  // must collide, so p0 follows.
  matrix small = godel_matrix(m + 2);
  report.saturated_matrix = small.name;
  std::vector<formula> saturated;
  for (int j = 2; j <= m + 3; ++j)
    for (int i = 1; i < j; ++i) saturated.push_back(premise_for(i, j));
  report.saturated_entails =
      matrix_consequence(small, saturated, report.conclusion, opts).holds;
  return report;
}

}  // namespace matlog
