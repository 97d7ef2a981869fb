#include <algorithm>
#include <map>
#include <mutex>

#include "matlog/calculus.hpp"

namespace matlog {

// Derivation search runs on two engines. The schema engine saturates a
// library of most-general theorem shapes (rule conclusions unified against
// known shapes) and serves a goal by matching it against a shape and
// replaying that shape's production as a concrete step list with sharing.
// The ground engine forward-chains concrete rule instances whose
// metavariable images are drawn from a pool built out of the goal's and
// premises' subformulas; it backs up the schema engine on goals whose
// shortest proofs are too instance-specific to surface as small schemata.

namespace {

using binding_map = std::map<std::string, formula>;

formula rename_metavars(const formula& f, const std::string& prefix) {
  switch (f.kind()) {
    case node_kind::metavariable: return formula::metavar(prefix + f.name());
    case node_kind::variable:
    case node_kind::constant: return f;
    case node_kind::application: {
      std::vector<formula> args;
      for (const formula& a : f.args()) args.push_back(rename_metavars(a, prefix));
      return formula::app(f.name(), std::move(args));
    }
  }
  return f;
}

formula resolve(const formula& f, const binding_map& binding) {
  switch (f.kind()) {
    case node_kind::metavariable: {
      auto it = binding.find(f.name());
      if (it == binding.end()) return f;
      return resolve(it->second, binding);
    }
    case node_kind::variable:
    case node_kind::constant: return f;
    case node_kind::application: {
      std::vector<formula> args;
      bool changed = false;
      for (const formula& a : f.args()) {
        args.push_back(resolve(a, binding));
        changed = changed || !(args.back() == a);
      }
      return changed ? formula::app(f.name(), std::move(args)) : f;
    }
  }
  return f;
}

bool occurs(const std::string& name, const formula& f, const binding_map& binding) {
  switch (f.kind()) {
    case node_kind::metavariable: {
      if (f.name() == name) return true;
      auto it = binding.find(f.name());
      return it != binding.end() && occurs(name, it->second, binding);
    }
    case node_kind::variable:
    case node_kind::constant: return false;
    case node_kind::application:
      for (const formula& a : f.args())
        if (occurs(name, a, binding)) return true;
      return false;
  }
  return false;
}

bool unify(formula a, formula b, binding_map& binding) {
  while (a.kind() == node_kind::metavariable && binding.count(a.name()))
    a = binding.at(a.name());
  while (b.kind() == node_kind::metavariable && binding.count(b.name()))
    b = binding.at(b.name());
  if (a.kind() == node_kind::metavariable) {
    if (b.kind() == node_kind::metavariable && a.name() == b.name()) return true;
    if (occurs(a.name(), b, binding)) return false;
    binding.emplace(a.name(), b);
    return true;
  }
  if (b.kind() == node_kind::metavariable) {
    if (occurs(b.name(), a, binding)) return false;
    binding.emplace(b.name(), a);
    return true;
  }
  if (a.kind() != b.kind() || a.name() != b.name() || a.args().size() != b.args().size())
    return false;
  for (std::size_t i = 0; i < a.args().size(); ++i)
    if (!unify(a.args()[i], b.args()[i], binding)) return false;
  return true;
}

void canonical_order(const formula& f, std::vector<std::string>& order,
                     std::set<std::string>& seen) {
  if (f.kind() == node_kind::metavariable) {
    if (seen.insert(f.name()).second) order.push_back(f.name());
    return;
  }
  for (const formula& a : f.args()) canonical_order(a, order, seen);
}

bool roots_compatible(const formula& pattern, const formula& candidate) {
  if (pattern.kind() != node_kind::application) return true;
  if (candidate.kind() == node_kind::metavariable) return true;
  return candidate.kind() == node_kind::application && candidate.name() == pattern.name() &&
         candidate.args().size() == pattern.args().size();
}

// ---------------------------------------------------------------------------
// schema engine

struct entry {
  formula schema;  // canonical metavariables m1, m2, ...
  int rule_index;  // -1: given premise
  std::vector<int> parents;
  // Parent/rule metavariables as terms over this entry's metavariables.
  std::vector<std::map<std::string, formula>> parent_insts;
  std::map<std::string, formula> rule_inst;
  std::vector<int> support;  // sorted entry ids incl. self
};

struct library {
  calculus calc;
  std::vector<entry> entries;
  std::map<std::string, int> by_key;
  std::size_t frontier_begin = 0;
  int max_schema_size = 16;
  std::size_t max_entries = 30'000;
  int max_support = 40;
  bool exhausted = false;
};

std::string schema_key(const formula& f) { return print(f, notation::prefix); }

bool add_entry(library& lib, formula schema, int rule_index, std::vector<int> parents,
               std::vector<std::map<std::string, formula>> parent_insts,
               std::map<std::string, formula> rule_inst) {
  std::string key = schema_key(schema);
  if (lib.by_key.count(key)) return false;
  if (lib.entries.size() >= lib.max_entries) return false;
  entry e;
  e.schema = std::move(schema);
  e.rule_index = rule_index;
  e.parents = std::move(parents);
  e.parent_insts = std::move(parent_insts);
  e.rule_inst = std::move(rule_inst);
  std::vector<int> u;
  for (int p : e.parents)
    u.insert(u.end(), lib.entries[p].support.begin(), lib.entries[p].support.end());
  u.push_back(static_cast<int>(lib.entries.size()));
  std::sort(u.begin(), u.end());
  u.erase(std::unique(u.begin(), u.end()), u.end());
  if (static_cast<int>(u.size()) > lib.max_support) return false;
  e.support = std::move(u);
  lib.by_key.emplace(std::move(key), static_cast<int>(lib.entries.size()));
  lib.entries.push_back(std::move(e));
  return true;
}

bool combine(library& lib, int rule_index, const std::vector<int>& parents) {
  const rule& r = lib.calc.rules[rule_index];
  binding_map binding;
  for (std::size_t i = 0; i < parents.size(); ++i) {
    formula premise = rename_metavars(r.premises[i], "r:");
    formula parent =
        rename_metavars(lib.entries[parents[i]].schema, "p" + std::to_string(i) + ":");
    if (!unify(premise, parent, binding)) return false;
  }
  formula conclusion = resolve(rename_metavars(r.conclusion, "r:"), binding);
  if (conclusion.size() > lib.max_schema_size) return false;

  // Canonical names: conclusion metavariables first, then leftovers from the
  // parent and rule images, in deterministic order.
  std::vector<std::string> order;
  std::set<std::string> seen;
  canonical_order(conclusion, order, seen);
  std::vector<std::map<std::string, formula>> parent_raw;
  for (std::size_t i = 0; i < parents.size(); ++i) {
    std::map<std::string, formula> inst;
    for (const std::string& pm : metavariables(lib.entries[parents[i]].schema)) {
      formula image = resolve(formula::metavar("p" + std::to_string(i) + ":" + pm), binding);
      canonical_order(image, order, seen);
      inst.emplace(pm, std::move(image));
    }
    parent_raw.push_back(std::move(inst));
  }
  std::map<std::string, formula> rule_raw;
  for (const formula& part : r.premises)
    for (const std::string& rm : metavariables(part))
      if (!rule_raw.count(rm)) {
        formula image = resolve(formula::metavar("r:" + rm), binding);
        canonical_order(image, order, seen);
        rule_raw.emplace(rm, std::move(image));
      }
  for (const std::string& rm : metavariables(r.conclusion))
    if (!rule_raw.count(rm)) {
      formula image = resolve(formula::metavar("r:" + rm), binding);
      canonical_order(image, order, seen);
      rule_raw.emplace(rm, std::move(image));
    }

  binding_map renaming;
  for (std::size_t i = 0; i < order.size(); ++i)
    renaming.emplace(order[i], formula::metavar("m" + std::to_string(i + 1)));

  std::vector<std::map<std::string, formula>> parent_insts;
  for (auto& raw : parent_raw) {
    std::map<std::string, formula> inst;
    for (auto& [k, v] : raw) inst.emplace(k, resolve(v, renaming));
    parent_insts.push_back(std::move(inst));
  }
  std::map<std::string, formula> rule_inst;
  for (auto& [k, v] : rule_raw) rule_inst.emplace(k, resolve(v, renaming));

  return add_entry(lib, resolve(conclusion, renaming), rule_index, parents,
                   std::move(parent_insts), std::move(rule_inst));
}

void saturate_round(library& lib) {
  std::size_t old_end = lib.entries.size();
  std::size_t frontier = lib.frontier_begin;
  bool grew = false;
  for (int ri = 0; ri < static_cast<int>(lib.calc.rules.size()); ++ri) {
    const rule& r = lib.calc.rules[ri];
    if (r.premises.empty()) continue;
    if (r.premises.size() == 1) {
      for (std::size_t a = frontier; a < old_end; ++a) {
        if (!roots_compatible(r.premises[0], lib.entries[a].schema)) continue;
        grew = combine(lib, ri, {static_cast<int>(a)}) || grew;
      }
    } else if (r.premises.size() == 2) {
      for (std::size_t a = 0; a < old_end; ++a) {
        if (!roots_compatible(r.premises[0], lib.entries[a].schema)) continue;
        std::size_t b_begin = a >= frontier ? 0 : frontier;
        for (std::size_t b = b_begin; b < old_end; ++b) {
          if (!roots_compatible(r.premises[1], lib.entries[b].schema)) continue;
          grew = combine(lib, ri, {static_cast<int>(a), static_cast<int>(b)}) || grew;
        }
      }
    } else {
      fail(errc::bad_parameter, "rules with more than two premises are not searched");
    }
  }
  lib.frontier_begin = old_end;
  lib.exhausted = !grew;
}

void seed(library& lib, const std::vector<formula>& premises) {
  for (const formula& x : premises) add_entry(lib, x, -1, {}, {}, {});
  for (int ri = 0; ri < static_cast<int>(lib.calc.rules.size()); ++ri) {
    const rule& r = lib.calc.rules[ri];
    if (!r.premises.empty()) continue;
    std::vector<std::string> order;
    std::set<std::string> seen;
    canonical_order(r.conclusion, order, seen);
    binding_map renaming;
    std::map<std::string, formula> rule_inst;
    for (std::size_t i = 0; i < order.size(); ++i) {
      formula m = formula::metavar("m" + std::to_string(i + 1));
      renaming.emplace(order[i], m);
      rule_inst.emplace(order[i], m);
    }
    add_entry(lib, resolve(r.conclusion, renaming), ri, {}, {}, std::move(rule_inst));
  }
}

struct replayer {
  const library& lib;
  int degree_cap;
  derivation out;
  std::map<formula, std::size_t> step_of;
  bool cap_violated = false;

  static formula close_ground(const formula& f, const binding_map& theta) {
    formula g = resolve(f, theta);
    if (g.ground()) return g;
    binding_map fill;  // leftover generality pinned to the first variable
    for (const std::string& m : metavariables(g)) fill.emplace(m, formula::var("p"));
    return resolve(g, fill);
  }

  std::size_t emit(int id, const binding_map& theta) {
    const entry& e = lib.entries[id];
    formula concrete = close_ground(e.schema, theta);
    auto it = step_of.find(concrete);
    if (it != step_of.end()) return it->second;

    if (e.rule_index < 0) {
      out.steps.push_back({concrete, derivation::premise_tag{}});
    } else {
      std::vector<std::size_t> from;
      for (std::size_t i = 0; i < e.parents.size(); ++i) {
        binding_map parent_theta;
        for (const auto& [pm, term] : e.parent_insts[i])
          parent_theta.emplace(pm, close_ground(term, theta));
        from.push_back(emit(e.parents[i], parent_theta));
      }
      std::map<std::string, formula> inst;
      for (const auto& [rm, term] : e.rule_inst) {
        formula image = close_ground(term, theta);
        if (image.degree() > degree_cap) cap_violated = true;
        inst.emplace(rm, std::move(image));
      }
      out.steps.push_back(
          {concrete, derivation::rule_app{lib.calc.rules[e.rule_index].name, std::move(from),
                                          instantiation(std::move(inst))}});
    }
    std::size_t index = out.steps.size() - 1;
    step_of.emplace(std::move(concrete), index);
    return index;
  }
};

std::optional<derivation> try_schema_goal(const library& lib,
                                          const std::vector<formula>& premises,
                                          const formula& goal, const search_limits& limits,
                                          int degree_cap) {
  std::vector<std::pair<int, int>> candidates;  // (support size, id)
  for (int id = 0; id < static_cast<int>(lib.entries.size()); ++id) {
    const entry& e = lib.entries[id];
    if (e.schema.size() > goal.size() || e.schema.degree() > goal.degree()) continue;
    if (e.support.size() > limits.max_steps) continue;
    if (match_instance(e.schema, goal))
      candidates.emplace_back(static_cast<int>(e.support.size()), id);
  }
  std::stable_sort(candidates.begin(), candidates.end());
  for (const auto& [size, id] : candidates) {
    auto matched = match_instance(lib.entries[id].schema, goal);
    binding_map theta;
    for (const auto& [k, v] : matched->bindings()) theta.emplace(k, v);
    replayer rp{lib, degree_cap, {}, {}, false};
    rp.out.premises = premises;
    rp.emit(id, theta);
    if (rp.cap_violated) continue;
    if (rp.out.steps.size() > limits.max_steps) continue;
    return rp.out;
  }
  return std::nullopt;
}

// Shared per-calculus libraries: corpus sweeps hit the same calculus
// thousands of times and the library only ever grows.
library& shared_library(const calculus& c) {
  static std::map<std::string, library*> cache;
  static std::mutex guard;
  std::lock_guard<std::mutex> lock(guard);
  auto it = cache.find(c.name);
  if (it == cache.end()) {
    auto* lib = new library{};
    lib->calc = c;
    seed(*lib, {});
    it = cache.emplace(c.name, lib).first;
  }
  return *it->second;
}

// ---------------------------------------------------------------------------
// ground engine

struct ground_step {
  int rule_index;  // -1: premise
  std::vector<formula> cited;
  instantiation inst;
};

struct ground_state {
  const calculus& calc;
  int degree_cap;
  int size_cap;
  std::size_t max_known = 400'000;
  std::map<formula, ground_step> known;
  std::vector<formula> order;  // insertion order
  // Modus-ponens propagation index: antecedent -> implications seen.
  int mp_rule = -1;
  std::map<formula, std::vector<formula>> imps_by_antecedent;
  std::vector<formula> queue;

  bool images_fit(const instantiation& inst) const {
    for (const auto& [mv, image] : inst.bindings())
      if (image.degree() > degree_cap) return false;
    return true;
  }

  bool add(const formula& f, ground_step how) {
    if (f.size() > size_cap || known.size() >= max_known) return false;
    if (known.count(f)) return false;
    known.emplace(f, std::move(how));
    order.push_back(f);
    queue.push_back(f);
    return true;
  }

  void propagate_mp() {
    if (mp_rule < 0) {
      queue.clear();
      return;
    }
    while (!queue.empty()) {
      formula f = std::move(queue.back());
      queue.pop_back();
      if (f.kind() == node_kind::application && f.name() == "→") {
        const formula& a = f.args()[0];
        const formula& b = f.args()[1];
        imps_by_antecedent[a].push_back(f);
        if (known.count(a)) detach(a, f, b);
      }
      auto it = imps_by_antecedent.find(f);
      if (it != imps_by_antecedent.end())
        for (const formula& imp : std::vector<formula>(it->second))
          detach(f, imp, imp.args()[1]);
    }
  }

  void detach(const formula& a, const formula& imp, const formula& b) {
    instantiation inst;
    inst.bind("α", a);
    inst.bind("β", b);
    if (!images_fit(inst)) return;
    add(b, {mp_rule, {a, imp}, std::move(inst)});
  }
};

std::vector<formula> build_pool(const std::vector<formula>& X, const formula& goal) {
  formula_set base = subformulas(goal);
  for (const formula& x : X)
    for (const formula& s : subformulas(x)) base.insert(s);
  formula_set pool = base;
  for (const formula& s : base) pool.insert(formula::app("¬", {s}));
  for (const formula& s : base) pool.insert(formula::app("¬", {formula::app("¬", {s})}));
  return {pool.begin(), pool.end()};
}

/// All pool instantiations of a premiseless rule.
void seed_axiom_instances(ground_state& st, int rule_index, const std::vector<formula>& pool) {
  const rule& r = st.calc.rules[rule_index];
  std::vector<std::string> open(metavariables(r.conclusion).begin(),
                                metavariables(r.conclusion).end());
  std::vector<std::size_t> pick(open.size(), 0);
  for (;;) {
    instantiation inst;
    for (std::size_t i = 0; i < open.size(); ++i) inst.bind(open[i], pool[pick[i]]);
    if (st.images_fit(inst)) st.add(instantiate(r.conclusion, inst), {rule_index, {}, inst});
    if (open.empty()) return;
    std::size_t i = open.size() - 1;
    for (;;) {
      if (++pick[i] < pool.size()) break;
      pick[i] = 0;
      if (i == 0) return;
      --i;
    }
  }
}

/// Generic semi-naive pass for rules with premises other than modus ponens;
/// only calculi like nd_rules have any, and their known sets stay small.
void generic_round(ground_state& st, int rule_index, const std::vector<formula>& pool,
                   std::size_t frontier, std::size_t end) {
  const rule& r = st.calc.rules[rule_index];
  auto close_with = [&](instantiation inst, std::vector<formula> cited) {
    std::vector<std::string> open;
    for (const std::string& m : metavariables(r.conclusion))
      if (!inst.find(m)) open.push_back(m);
    std::vector<std::size_t> pick(open.size(), 0);
    for (;;) {
      instantiation full = inst;
      for (std::size_t i = 0; i < open.size(); ++i) full.bind(open[i], pool[pick[i]]);
      if (st.images_fit(full)) st.add(instantiate(r.conclusion, full), {rule_index, cited, full});
      if (open.empty()) return;
      std::size_t i = open.size() - 1;
      for (;;) {
        if (++pick[i] < pool.size()) break;
        pick[i] = 0;
        if (i == 0) return;
        --i;
      }
    }
  };
  if (r.premises.size() == 1) {
    for (std::size_t a = frontier; a < end; ++a) {
      auto inst = match_instance(r.premises[0], st.order[a]);
      if (inst) close_with(*inst, {st.order[a]});
    }
  } else if (r.premises.size() == 2) {
    for (std::size_t a = 0; a < end; ++a) {
      auto first = match_instance(r.premises[0], st.order[a]);
      if (!first) continue;
      std::size_t b_begin = a >= frontier ? 0 : frontier;
      for (std::size_t b = b_begin; b < end; ++b) {
        auto both = match_all({&r.premises[1], 1}, {&st.order[b], 1}, *first);
        if (both) close_with(*both, {st.order[a], st.order[b]});
      }
    }
  }
}

std::optional<derivation> ground_search(const calculus& c, const std::vector<formula>& X,
                                        const formula& goal, const search_limits& limits,
                                        int degree_cap) {
  std::vector<formula> pool = build_pool(X, goal);
  ground_state st{c, degree_cap, /*size_cap*/ 6 * goal.size() + 40};

  std::vector<int> generic_rules;
  for (int ri = 0; ri < static_cast<int>(c.rules.size()); ++ri) {
    const rule& r = c.rules[ri];
    if (r.premises.size() == 2 && r.name == "b-iii")
      st.mp_rule = ri;
    else if (!r.premises.empty())
      generic_rules.push_back(ri);
  }

  for (const formula& x : X) st.add(x, {-1, {}, {}});
  for (int ri = 0; ri < static_cast<int>(c.rules.size()); ++ri)
    if (c.rules[ri].premises.empty()) seed_axiom_instances(st, ri, pool);
  st.propagate_mp();

  std::size_t frontier = 0;
  for (int round = 0; round < 10 && !st.known.count(goal); ++round) {
    std::size_t end = st.order.size();
    if (frontier == end) break;
    for (int ri : generic_rules) generic_round(st, ri, pool, frontier, end);
    frontier = end;
    st.propagate_mp();
    if (generic_rules.empty()) break;  // MP propagation is already a fixpoint
  }
  if (!st.known.count(goal)) return std::nullopt;

  // Extract the used sub-DAG in dependency order.
  derivation d;
  d.premises = X;
  std::map<formula, std::size_t> placed;
  auto place = [&](const formula& f, auto&& self) -> std::size_t {
    auto already = placed.find(f);
    if (already != placed.end()) return already->second;
    const ground_step& how = st.known.at(f);
    std::size_t index;
    if (how.rule_index < 0) {
      d.steps.push_back({f, derivation::premise_tag{}});
      index = d.steps.size() - 1;
    } else {
      std::vector<std::size_t> from;
      for (const formula& cited : how.cited) from.push_back(self(cited, self));
      d.steps.push_back(
          {f, derivation::rule_app{c.rules[how.rule_index].name, std::move(from), how.inst}});
      index = d.steps.size() - 1;
    }
    placed.emplace(f, index);
    return index;
  };
  place(goal, place);
  if (d.steps.size() > limits.max_steps) return std::nullopt;
  return d;
}

}  // namespace

std::optional<derivation> bounded_search(const calculus& c, const std::vector<formula>& X,
                                         const formula& goal, const search_limits& limits) {
  if (!goal.ground()) fail(errc::bad_parameter, "search goals must be formulas");
  int degree_cap = limits.max_instantiation_degree >= 0 ? limits.max_instantiation_degree
                                                        : goal.degree() + 4;

  if (std::find(X.begin(), X.end(), goal) != X.end()) {
    derivation d;
    d.premises = X;
    d.steps.push_back({goal, derivation::premise_tag{}});
    return d;
  }

  if (X.empty() && !c.name.empty()) {
    library& lib = shared_library(c);
    for (;;) {
      if (auto d = try_schema_goal(lib, X, goal, limits, degree_cap)) return d;
      if (lib.exhausted || lib.entries.size() >= lib.max_entries) break;
      saturate_round(lib);
    }
    return ground_search(c, X, goal, limits, degree_cap);
  }

  library lib;
  lib.calc = c;
  lib.max_entries = 20'000;
  int base = goal.size();
  for (const formula& x : X) base = std::max(base, x.size());
  lib.max_schema_size = std::min(base + 8, 22);
  seed(lib, X);
  for (int round = 0; round < 16; ++round) {
    if (auto d = try_schema_goal(lib, X, goal, limits, degree_cap)) return d;
    if (lib.exhausted || lib.entries.size() >= lib.max_entries) break;
    saturate_round(lib);
  }
  if (auto d = try_schema_goal(lib, X, goal, limits, degree_cap)) return d;
  return ground_search(c, X, goal, limits, degree_cap);
}

}  // namespace matlog
