#include "matlog/json_io.hpp"

namespace matlog {

json formula_to_json(const formula& f) {
  switch (f.kind()) {
    case node_kind::variable: return json{{"var", f.name()}};
    case node_kind::constant: return json{{"const", f.name()}};
    case node_kind::metavariable: return json{{"metavar", f.name()}};
    case node_kind::application: {
      json args = json::array();
      for (const formula& a : f.args()) args.push_back(formula_to_json(a));
      return json{{"app", {{"op", f.name()}, {"args", std::move(args)}}}};
    }
  }
  fail(errc::bad_parameter, "unreachable");
}

formula formula_from_json(const json& j, const signature& sig) {
  if (j.contains("var")) {
    std::string name = j.at("var").get<std::string>();
    if (!signature::is_variable_name(name))
      fail(errc::unreadable_word, name + " is not a variable name");
    return formula::var(std::move(name));
  }
  if (j.contains("const")) {
    std::string name = j.at("const").get<std::string>();
    if (!sig.has_constant(name))
      fail(errc::unreadable_word, name + " is not a constant of the signature");
    return formula::constant(std::move(name));
  }
  if (j.contains("metavar")) return formula::metavar(j.at("metavar").get<std::string>());
  if (j.contains("app")) {
    const json& app = j.at("app");
    std::vector<formula> args;
    for (const json& a : app.at("args")) args.push_back(formula_from_json(a, sig));
    return sig.app(app.at("op").get<std::string>(), std::move(args));
  }
  fail(errc::bad_parameter, "not a formula object");
}

json substitution_to_json(const substitution& s) {
  json out = json::object();
  for (const auto& [var, image] : s.support()) out[var] = formula_to_json(image);
  return out;
}

substitution substitution_from_json(const json& j, const signature& sig) {
  std::map<std::string, formula> bindings;
  for (const auto& [var, image] : j.items())
    bindings.emplace(var, formula_from_json(image, sig));
  return substitution(std::move(bindings));
}

// ---------------------------------------------------------------------------
// matrices

namespace {
json table_to_json(const std::vector<int>& flat, int arity, int n,
                   const std::vector<std::string>& elements) {
  if (arity == 1) {
    json out = json::array();
    for (int x = 0; x < n; ++x) out.push_back(elements[flat[x]]);
    return out;
  }
  // Nested rows, outermost index first.
  json out = json::array();
  int block = 1;
  for (int i = 1; i < arity; ++i) block *= n;
  for (int x = 0; x < n; ++x) {
    std::vector<int> sub(flat.begin() + x * block, flat.begin() + (x + 1) * block);
    out.push_back(table_to_json(sub, arity - 1, n, elements));
  }
  return out;
}

void table_from_json(const json& j, int arity, int n,
                     const std::map<std::string, int>& index, std::vector<int>& out) {
  if (arity == 1) {
    for (const json& cell : j) out.push_back(index.at(cell.get<std::string>()));
    return;
  }
  for (const json& row : j) table_from_json(row, arity - 1, n, index, out);
}
}  // namespace

json matrix_to_json(const matrix& m) {
  const finite_algebra& a = m.algebra;
  json ops = json::object();
  for (const auto& [op, arity] : a.sig().connectives())
    ops[op] = {{"arity", arity},
               {"table", table_to_json(a.table(op), arity, a.size(), a.elements())}};
  json consts = json::object();
  for (const auto& [c, value] : a.constants()) consts[c] = a.elements()[value];
  return json{{"elements", a.elements()},
              {"designated", m.designated_names()},
              {"ops", std::move(ops)},
              {"consts", std::move(consts)}};
}

matrix matrix_from_json(const json& j) {
  std::vector<std::string> elements = j.at("elements").get<std::vector<std::string>>();
  std::map<std::string, int> index;
  for (std::size_t i = 0; i < elements.size(); ++i)
    index[elements[i]] = static_cast<int>(i);

  std::vector<std::pair<std::string, int>> conns;
  std::map<std::string, std::vector<int>> tables;
  for (const auto& [op, spec] : j.at("ops").items()) {
    int arity = spec.at("arity").get<int>();
    conns.emplace_back(op, arity);
    std::vector<int> flat;
    table_from_json(spec.at("table"), arity, static_cast<int>(elements.size()), index, flat);
    tables.emplace(op, std::move(flat));
  }
  std::vector<std::string> const_names;
  std::map<std::string, int> const_values;
  if (j.contains("consts"))
    for (const auto& [c, value] : j.at("consts").items()) {
      const_names.push_back(c);
      const_values.emplace(c, index.at(value.get<std::string>()));
    }
  finite_algebra algebra(signature(std::move(conns), std::move(const_names)), elements,
                         std::move(tables), std::move(const_values));
  matrix m{std::move(algebra), std::vector<bool>(elements.size(), false),
           j.value("name", std::string{})};
  for (const auto& d : j.at("designated"))
    m.designated[index.at(d.get<std::string>())] = true;
  return m;
}

// ---------------------------------------------------------------------------
// proofs

json derivation_to_json(const derivation& d) {
  json premises = json::array();
  for (const formula& x : d.premises) premises.push_back(formula_to_json(x));
  json steps = json::array();
  for (const auto& st : d.steps) {
    json step{{"formula", formula_to_json(st.f)}};
    if (std::holds_alternative<derivation::premise_tag>(st.by)) {
      step["by"] = "Premise";
    } else {
      const auto& app = std::get<derivation::rule_app>(st.by);
      json by{{"rule", app.rule}, {"from", app.from}};
      if (app.inst) {
        json inst = json::object();
        for (const auto& [m, image] : app.inst->bindings())
          inst[m] = formula_to_json(image);
        by["inst"] = std::move(inst);
      }
      step["by"] = std::move(by);
    }
    steps.push_back(std::move(step));
  }
  return json{{"premises", std::move(premises)}, {"steps", std::move(steps)}};
}

derivation derivation_from_json(const json& j, const signature& sig) {
  derivation d;
  for (const json& x : j.at("premises")) d.premises.push_back(formula_from_json(x, sig));
  for (const json& step : j.at("steps")) {
    formula f = formula_from_json(step.at("formula"), sig);
    const json& by = step.at("by");
    if (by.is_string() && by.get<std::string>() == "Premise") {
      d.steps.push_back({std::move(f), derivation::premise_tag{}});
      continue;
    }
    derivation::rule_app app;
    app.rule = by.at("rule").get<std::string>();
    app.from = by.at("from").get<std::vector<std::size_t>>();
    if (by.contains("inst")) {
      std::map<std::string, formula> bindings;
      for (const auto& [m, image] : by.at("inst").items())
        bindings.emplace(m, formula_from_json(image, sig));
      app.inst = instantiation(std::move(bindings));
    }
    d.steps.push_back({std::move(f), std::move(app)});
  }
  return d;
}

json confirmation_to_json(const confirmation& c) {
  json premises = json::array();
  for (const formula& x : c.premises) premises.push_back(formula_to_json(x));
  json node{{"premises", std::move(premises)}, {"goal", formula_to_json(c.goal)}};
  json by;
  switch (c.how) {
    case confirmation::kind::derivation:
      by = json{{"type", 1}, {"derivation", derivation_to_json(*c.embedded)}};
      break;
    case confirmation::kind::hyperrule: {
      json children = json::array();
      for (const confirmation& child : c.children)
        children.push_back(confirmation_to_json(child));
      by = json{{"type", 2}, {"hyperrule", c.hyperrule}, {"children", std::move(children)}};
      break;
    }
    case confirmation::kind::composition: {
      json children = json::array();
      for (const confirmation& child : c.children)
        children.push_back(confirmation_to_json(child));
      by = json{{"type", 3},
                {"children", std::move(children)},
                {"derivation", derivation_to_json(*c.embedded)}};
      break;
    }
  }
  node["by"] = std::move(by);
  return node;
}

confirmation confirmation_from_json(const json& j, const signature& sig) {
  confirmation c;
  for (const json& x : j.at("premises")) c.premises.push_back(formula_from_json(x, sig));
  c.goal = formula_from_json(j.at("goal"), sig);
  const json& by = j.at("by");
  int type = by.at("type").get<int>();
  if (type == 1) {
    c.how = confirmation::kind::derivation;
    c.embedded = derivation_from_json(by.at("derivation"), sig);
  } else if (type == 2) {
    c.how = confirmation::kind::hyperrule;
    c.hyperrule = by.at("hyperrule").get<std::string>();
    for (const json& child : by.at("children"))
      c.children.push_back(confirmation_from_json(child, sig));
  } else if (type == 3) {
    c.how = confirmation::kind::composition;
    for (const json& child : by.at("children"))
      c.children.push_back(confirmation_from_json(child, sig));
    c.embedded = derivation_from_json(by.at("derivation"), sig);
  } else {
    fail(errc::bad_parameter, "confirmation type must be 1, 2 or 3");
  }
  return c;
}

// ---------------------------------------------------------------------------
// models and reports

json model_to_json(const kripke_model& m) {
  json order = json::array();
  for (int a = 0; a < m.frame.n; ++a)
    for (int b = 0; b < m.frame.n; ++b)
      if (a != b && m.frame.leq(a, b)) order.push_back(json::array({a, b}));
  json valuation = json::object();
  for (const auto& [var, ext] : m.extension) {
    json worlds = json::array();
    for (int w = 0; w < m.frame.n; ++w)
      if ((ext >> w) & 1) worlds.push_back(w);
    valuation[var] = std::move(worlds);
  }
  return json{{"worlds", m.frame.n}, {"order", std::move(order)},
              {"valuation", std::move(valuation)}};
}

kripke_model model_from_json(const json& j) {
  int n = j.at("worlds").get<int>();
  std::vector<std::pair<int, int>> pairs;
  for (const json& e : j.at("order")) pairs.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
  kripke_model m;
  m.frame = make_poset(n, pairs);
  if (j.contains("valuation"))
    for (const auto& [var, worlds] : j.at("valuation").items()) {
      std::uint64_t ext = 0;
      for (const json& w : worlds) ext |= 1ULL << w.get<int>();
      m.extension[var] = ext;
    }
  return m;
}

json valuation_to_json(const valuation& v) {
  json out = json::object();
  for (const auto& [var, element] : v) out[var] = element;
  return out;
}

valuation valuation_from_json(const json& j) {
  valuation v;
  for (const auto& [var, element] : j.items()) v[var] = element.get<std::string>();
  return v;
}

json report_to_json(const property_report& r) {
  json failures = json::array();
  for (const auto& f : r.failures) failures.push_back(json{{"inputs", f.inputs}});
  return json{{"property", r.property},
              {"cases", r.cases},
              {"failures", std::move(failures)},
              {"seed", r.seed}};
}

}  // namespace matlog
