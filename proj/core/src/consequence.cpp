#include "matlog/consequence.hpp"

#include <algorithm>
#include <sstream>

namespace matlog {

// ---------------------------------------------------------------------------
// backends

namespace {

class matrix_backend_impl : public backend {
 public:
  explicit matrix_backend_impl(std::vector<matrix> ms) : matrices_(std::move(ms)) {
    structural = true;
    finitary = true;
    for (const matrix& m : matrices_) name += (name.empty() ? "" : "+") + m.name;
  }
  bool derives(const std::vector<formula>& premises, const formula& f) const override {
    return matrix_consequence(matrices_, premises, f).holds;
  }

 private:
  std::vector<matrix> matrices_;
};

class intersection_impl : public backend {
 public:
  explicit intersection_impl(std::vector<backend_ptr> parts) : parts_(std::move(parts)) {
    structural = true;
    finitary = true;
    for (const auto& p : parts_) {
      structural = structural && p->structural;
      finitary = finitary && p->finitary;
    }
    name = "intersection";
  }
  bool derives(const std::vector<formula>& premises, const formula& f) const override {
    for (const auto& p : parts_)
      if (!p->derives(premises, f)) return false;
    return true;
  }

 private:
  std::vector<backend_ptr> parts_;
};

class relative_impl : public backend {
 public:
  relative_impl(backend_ptr base, std::vector<formula> x0)
      : base_(std::move(base)), x0_(std::move(x0)) {
    structural = false;  // the fixed premise set breaks substitution-invariance
    finitary = base_->finitary;
    name = base_->name + "-relative";
  }
  bool derives(const std::vector<formula>& premises, const formula& f) const override {
    std::vector<formula> all = premises;
    for (const formula& x : x0_)
      if (std::find(all.begin(), all.end(), x) == all.end()) all.push_back(x);
    return base_->derives(all, f);
  }

 private:
  backend_ptr base_;
  std::vector<formula> x0_;
};

class nonempty_impl : public backend {
 public:
  explicit nonempty_impl(backend_ptr base) : base_(std::move(base)) {
    structural = base_->structural;
    finitary = base_->finitary;
    name = base_->name + "-nonempty";
  }
  bool derives(const std::vector<formula>& premises, const formula& f) const override {
    return !premises.empty() && base_->derives(premises, f);
  }

 private:
  backend_ptr base_;
};

}  // namespace

backend_ptr matrix_backend(matrix m) {
  return std::make_shared<matrix_backend_impl>(std::vector<matrix>{std::move(m)});
}
backend_ptr matrix_backend(std::vector<matrix> ms) {
  return std::make_shared<matrix_backend_impl>(std::move(ms));
}
backend_ptr intersection_backend(std::vector<backend_ptr> parts) {
  return std::make_shared<intersection_impl>(std::move(parts));
}
backend_ptr relative_backend(backend_ptr base, std::vector<formula> x0) {
  return std::make_shared<relative_impl>(std::move(base), std::move(x0));
}
backend_ptr nonempty_backend(backend_ptr base) {
  return std::make_shared<nonempty_impl>(std::move(base));
}

// ---------------------------------------------------------------------------
// closure systems

closure_system::closure_system(std::vector<formula> universe,
                               std::vector<std::uint32_t> members)
    : universe_(std::move(universe)), members_(std::move(members)) {
  if (universe_.size() > 31) fail(errc::universe_too_large, "universe past 31 formulas");
  std::uint32_t full = full_mask();
  for (std::uint32_t m : members_)
    if ((m & ~full) != 0) fail(errc::bad_parameter, "member outside the universe");
  if (std::find(members_.begin(), members_.end(), full) == members_.end())
    fail(errc::bad_parameter, "the universe itself must be a member");
  for (std::size_t i = 0; i < members_.size(); ++i)
    for (std::size_t j = i + 1; j < members_.size(); ++j) {
      std::uint32_t both = members_[i] & members_[j];
      if (std::find(members_.begin(), members_.end(), both) == members_.end())
        fail(errc::bad_parameter, "family not closed under intersection");
    }
}

std::uint32_t closure_system::full_mask() const {
  return universe_.empty() ? 0 : (1u << universe_.size()) - 1;
}

std::uint32_t closure_system::cn(std::uint32_t x) const {
  std::uint32_t out = full_mask();
  for (std::uint32_t m : members_)
    if ((x & ~m) == 0) out &= m;
  return out;
}

// ---------------------------------------------------------------------------
// extensional operators

table_operator::table_operator(int universe_size, std::vector<std::uint32_t> table)
    : n_(universe_size), table_(std::move(table)) {
  if (n_ < 0 || n_ > 20) fail(errc::universe_too_large, "operator universe too large");
  if (table_.size() != (1u << n_)) fail(errc::bad_parameter, "table size must be 2^n");
  for (std::uint32_t v : table_)
    if ((v & ~((1u << n_) - 1)) != 0) fail(errc::bad_parameter, "table entry out of range");
}

table_operator table_operator::from_closure_system(const closure_system& cs) {
  int n = static_cast<int>(cs.universe().size());
  std::vector<std::uint32_t> table(1u << n);
  for (std::uint32_t x = 0; x < table.size(); ++x) table[x] = cs.cn(x);
  return table_operator(n, std::move(table));
}

bool operator_axiom_report::axiom(char which) const {
  switch (which) {
    case 'a': return a;
    case 'b': return b;
    case 'c': return c;
    case 'd': return d;
    case 'e': return e;
    case 'f': return f;
    case 'g': return g;
    case 'h': return h;
    case 'i': return i;
    case 'j': return j;
  }
  fail(errc::bad_parameter, "no operator axiom named " + std::string(1, which));
}

operator_axiom_report check_operator_axioms(const table_operator& op) {
  if (op.universe_size() > 5)
    fail(errc::universe_too_large, "exhaustive axiom check supports at most 5 elements");
  const std::uint32_t subsets = 1u << op.universe_size();
  auto subset = [](std::uint32_t x, std::uint32_t y) { return (x & ~y) == 0; };

  operator_axiom_report r{true, true, true, true, true, true, true, true, true, true};
  for (std::uint32_t x = 0; x < subsets; ++x) {
    std::uint32_t cx = op.apply(x);
    r.a = r.a && subset(x, cx);
    r.c = r.c && subset(op.apply(cx), cx);

    // d: Cn(X) ⊆ ⋃{Cn(Y) : Y ⋐ X}; i: the same with Y nonempty when X is.
    std::uint32_t finite_union = 0, nonempty_union = 0;
    for (std::uint32_t y = x;; y = (y - 1) & x) {
      finite_union |= op.apply(y);
      if (y != 0) nonempty_union |= op.apply(y);
      if (y == 0) break;
    }
    r.d = r.d && subset(cx, finite_union);
    if (x != 0) r.i = r.i && subset(cx, nonempty_union);

    // h: ⋃{Cn(Y) : Y ⋐ X} ⊆ Cn(X).
    r.h = r.h && subset(finite_union, cx);

    for (std::uint32_t y = 0; y < subsets; ++y) {
      std::uint32_t cy = op.apply(y);
      if (subset(x, y)) r.b = r.b && subset(cx, cy);
      if (subset(x, cy)) {
        r.e = r.e && subset(cx, cy);
        r.f = r.f && subset(op.apply(x | y), cy);
      }
      if (subset(x, y) && subset(y, cx)) r.g = r.g && subset(cy, cx);
    }

    // j: α ∉ Cn(X) implies a maximal X* ⊇ X with α ∉ Cn(X*).
    for (int alpha = 0; alpha < op.universe_size(); ++alpha) {
      if ((cx >> alpha) & 1) continue;
      bool maximal_found = false;
      for (std::uint32_t star = 0; star < subsets && !maximal_found; ++star) {
        if (!subset(x, star) || ((op.apply(star) >> alpha) & 1)) continue;
        bool maximal = true;
        for (std::uint32_t bigger = 0; bigger < subsets && maximal; ++bigger)
          if (bigger != star && subset(star, bigger) &&
              !((op.apply(bigger) >> alpha) & 1))
            maximal = false;
        maximal_found = maximal;
      }
      r.j = r.j && maximal_found;
    }
  }
  return r;
}

namespace {

bool implication_holds(const operator_axiom_report& r, int which) {
  switch (which) {
    case 1: return !(r.a && r.g) || r.c;
    case 2: return !(r.b && r.c) || r.e;
    case 3: return !r.e || r.g;
    case 4: return !r.f || r.g;
    case 5: return !(r.a && r.g) || r.f;
    case 6: return !(r.a && r.f) || r.c;
    case 7: return !(r.a && r.b && r.c) || r.f;
    case 8: return !r.i || r.d;
    case 9: return !(r.b && r.d) || r.i;
    case 10: return !r.b || r.h;
    case 11: return !(r.b && r.d) || r.j;
    case 12: return !(r.d && r.h) || r.b;
  }
  fail(errc::bad_parameter, "implication out of range");
}

std::optional<int> violated_implication(const table_operator& op) {
  operator_axiom_report r = check_operator_axioms(op);
  for (int i = 1; i <= 12; ++i)
    if (!implication_holds(r, i)) return i;
  return std::nullopt;
}

}  // namespace

con_connections_result verify_con_connections(int universe_size, std::uint64_t sample_budget,
                                              std::uint64_t seed) {
  con_connections_result out{true, 0, seed, std::nullopt};
  const std::uint32_t subsets = 1u << universe_size;
  if (universe_size <= 2) {
    // Exhaustive: every table over P(U).
    std::uint64_t total = 1;
    for (std::uint32_t i = 0; i < subsets; ++i) total *= subsets;
    for (std::uint64_t code = 0; code < total; ++code) {
      std::vector<std::uint32_t> table(subsets);
      std::uint64_t rest = code;
      for (std::uint32_t i = 0; i < subsets; ++i) {
        table[i] = static_cast<std::uint32_t>(rest % subsets);
        rest /= subsets;
      }
      table_operator op(universe_size, std::move(table));
      ++out.operators_checked;
      if (auto bad = violated_implication(op)) {
        out.all_hold = false;
        out.counterexample = {std::move(op), *bad};
        return out;
      }
    }
    return out;
  }
  rng g(seed);
  std::uniform_int_distribution<std::uint32_t> pick(0, subsets - 1);
  for (std::uint64_t k = 0; k < sample_budget; ++k) {
    std::vector<std::uint32_t> table(subsets);
    for (std::uint32_t i = 0; i < subsets; ++i) table[i] = pick(g);
    table_operator op(universe_size, std::move(table));
    ++out.operators_checked;
    if (auto bad = violated_implication(op)) {
      out.all_hold = false;
      out.counterexample = {std::move(op), *bad};
      return out;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// sampled property harnesses

namespace {
std::string render_formulas(const std::vector<formula>& xs) {
  std::string out = "{";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ", ";
    out += print(xs[i]);
  }
  return out + "}";
}
}  // namespace

property_report check_backend_axioms(const backend& b, const formula_generator& gen,
                                     std::uint64_t cases, std::uint64_t seed) {
  property_report report;
  report.property = "consequence-relation axioms (reflexivity, monotonicity, cut)";
  report.seed = seed;
  rng g(seed);
  for (std::uint64_t k = 0; k < cases; ++k) {
    std::vector<formula> xs;
    int size = std::uniform_int_distribution<int>(1, 3)(g);
    for (int i = 0; i < size; ++i) xs.push_back(gen(g));
    formula alpha = xs[std::uniform_int_distribution<std::size_t>(0, xs.size() - 1)(g)];
    ++report.cases;
    if (!b.derives(xs, alpha)) {
      report.failures.push_back({"reflexivity: " + render_formulas(xs) + " ⊬ " + print(alpha)});
      continue;
    }
    // monotonicity: enlarge and re-ask
    std::vector<formula> ys = xs;
    ys.push_back(gen(g));
    formula target = gen(g);
    if (b.derives(xs, target) && !b.derives(ys, target)) {
      report.failures.push_back({"monotonicity: " + render_formulas(ys) + " ⊬ " + print(target)});
      continue;
    }
    // cut: X ⊢ β and Z,β ⊢ α imply X,Z ⊢ α — sampled with β derivable from X
    formula beta = xs[std::uniform_int_distribution<std::size_t>(0, xs.size() - 1)(g)];
    std::vector<formula> z{gen(g)};
    std::vector<formula> z_beta = z;
    z_beta.push_back(beta);
    if (b.derives(xs, beta) && b.derives(z_beta, target)) {
      std::vector<formula> xz = xs;
      xz.insert(xz.end(), z.begin(), z.end());
      if (!b.derives(xz, target))
        report.failures.push_back({"cut: " + render_formulas(xz) + " ⊬ " + print(target)});
    }
  }
  return report;
}

property_report check_backend_structurality(const backend& b, const formula_generator& gen,
                                            std::uint64_t cases, std::uint64_t seed) {
  property_report report;
  report.property = "structurality: X ⊢ α implies σX ⊢ σα";
  report.seed = seed;
  rng g(seed);
  for (std::uint64_t k = 0; k < cases; ++k) {
    std::vector<formula> xs;
    int size = std::uniform_int_distribution<int>(0, 3)(g);
    for (int i = 0; i < size; ++i) xs.push_back(gen(g));
    formula alpha = gen(g);
    substitution sigma = random_substitution(g, gen);
    ++report.cases;
    if (!b.derives(xs, alpha)) continue;
    std::vector<formula> image;
    for (const formula& x : xs) image.push_back(sigma(x));
    if (!b.derives(image, sigma(alpha)))
      report.failures.push_back(
          {render_formulas(xs) + " ⊢ " + print(alpha) + " but " + render_formulas(image) +
           " ⊬ " + print(sigma(alpha))});
  }
  return report;
}

lindenbaum_harness_report lindenbaum_property_harness(
    const backend& b, const std::vector<formula>& schemata, const formula& goal,
    const std::vector<substitution>& sample) {
  lindenbaum_harness_report out;
  out.base.property = "theorem stability over a schema-generated premise set";

  // Identity instances: metavariables read as variables of the same name
  // written into the v-family (α ↦ v1, β ↦ v2, ...).
  std::vector<formula> identity_instances;
  for (const formula& schema : schemata) {
    instantiation inst;
    int k = 0;
    for (const std::string& m : metavariables(schema))
      inst.bind(m, formula::var("v" + std::to_string(++k)));
    identity_instances.push_back(schema.ground() ? schema : instantiate(schema, inst));
  }
  out.premise_derives_goal = b.derives(identity_instances, goal);
  if (!out.premise_derives_goal) {
    out.base.failures.push_back({"the identity instances do not derive " + print(goal) +
                                 " (reported, not counted as a property failure)"});
    return out;
  }
  for (const substitution& sigma : sample) {
    ++out.base.cases;
    std::vector<formula> image;
    for (const formula& x : identity_instances) image.push_back(sigma(x));
    if (!b.derives(image, sigma(goal))) {
      out.base.failures.push_back({"σ image loses the goal: " + print(sigma(goal))});
      continue;
    }
    // The image stays inside the schemata's instance sets.
    for (const formula& y : image) {
      bool instance_of_some = false;
      for (const formula& schema : schemata)
        instance_of_some = instance_of_some || match_instance(schema, y).has_value();
      if (!instance_of_some) {
        out.base.failures.push_back({"σ image leaves the schema set: " + print(y)});
        break;
      }
    }
  }
  return out;
}

property_report brown_suszko_sample(const backend& b, const std::vector<formula>& X,
                                    const substitution& s,
                                    const std::vector<formula>& universe, std::uint64_t cases,
                                    std::uint64_t seed) {
  property_report report;
  report.property = "σ-preimage of a theory is deductively closed (sampled)";
  report.seed = seed;
  rng g(seed);

  std::vector<formula> preimage;
  for (const formula& u : universe) {
    std::vector<formula> xs = X;
    if (b.derives(xs, s(u))) preimage.push_back(u);
  }
  if (preimage.empty()) {
    report.cases = 0;
    return report;
  }
  for (std::uint64_t k = 0; k < cases; ++k) {
    ++report.cases;
    std::vector<formula> y;
    int size = std::uniform_int_distribution<int>(0, 3)(g);
    for (int i = 0; i < size; ++i)
      y.push_back(preimage[std::uniform_int_distribution<std::size_t>(0, preimage.size() - 1)(g)]);
    const formula& alpha =
        universe[std::uniform_int_distribution<std::size_t>(0, universe.size() - 1)(g)];
    if (!b.derives(y, alpha)) continue;
    if (std::find(preimage.begin(), preimage.end(), alpha) == preimage.end())
      report.failures.push_back(
          {render_formulas(y) + " ⊢ " + print(alpha) + " escapes the preimage"});
  }
  return report;
}

}  // namespace matlog
