#include "matlog/substitution.hpp"

namespace matlog {

substitution::substitution(std::map<std::string, formula> bindings) {
  for (auto& [var, image] : bindings) {
    if (image.kind() == node_kind::variable && image.name() == var) continue;
    map_.emplace(var, std::move(image));
  }
}

substitution substitution::unary(const std::string& variable, formula image) {
  std::map<std::string, formula> m;
  m.emplace(variable, std::move(image));
  return substitution(std::move(m));
}

formula substitution::operator()(const formula& f) const {
  switch (f.kind()) {
    case node_kind::variable: {
      auto it = map_.find(f.name());
      return it == map_.end() ? f : it->second;
    }
    case node_kind::constant:
    case node_kind::metavariable:
      return f;
    case node_kind::application: {
      std::vector<formula> args;
      args.reserve(f.args().size());
      bool changed = false;
      for (const formula& a : f.args()) {
        args.push_back((*this)(a));
        changed = changed || !(args.back() == a);
      }
      if (!changed) return f;
      return formula::app(f.name(), std::move(args));
    }
  }
  return f;
}

substitution compose(const substitution& s1, const substitution& s2) {
  std::map<std::string, formula> out;
  for (const auto& [var, image] : s2.support()) out.emplace(var, s1(image));
  for (const auto& [var, image] : s1.support()) out.emplace(var, image);  // keeps s2 entries
  return substitution(std::move(out));
}

formula_set image(const substitution& s, const formula_set& xs) {
  formula_set out;
  for (const formula& f : xs) out.insert(s(f));
  return out;
}

formula_set preimage(const substitution& s, const formula_set& xs,
                     const formula_set& universe) {
  formula_set out;
  for (const formula& f : universe)
    if (xs.count(s(f))) out.insert(f);
  return out;
}

const formula* instantiation::find(const std::string& metavar) const {
  auto it = map_.find(metavar);
  return it == map_.end() ? nullptr : &it->second;
}

bool instantiation::bind(const std::string& metavar, const formula& image) {
  auto [it, inserted] = map_.emplace(metavar, image);
  return inserted || it->second == image;
}

formula instantiate(const formula& m, const instantiation& i) {
  switch (m.kind()) {
    case node_kind::variable:
    case node_kind::constant:
      return m;
    case node_kind::metavariable: {
      const formula* image = i.find(m.name());
      if (image == nullptr)
        fail(errc::unbound_metavariable, "metavariable " + m.name() + " is unbound");
      return *image;
    }
    case node_kind::application: {
      std::vector<formula> args;
      args.reserve(m.args().size());
      for (const formula& a : m.args()) args.push_back(instantiate(a, i));
      return formula::app(m.name(), std::move(args));
    }
  }
  return m;
}

namespace {
bool match_rec(const formula& m, const formula& f, instantiation& binding) {
  switch (m.kind()) {
    case node_kind::metavariable:
      return binding.bind(m.name(), f);
    case node_kind::variable:
    case node_kind::constant:
      return m == f;
    case node_kind::application: {
      if (f.kind() != node_kind::application || f.name() != m.name() ||
          f.args().size() != m.args().size())
        return false;
      for (std::size_t i = 0; i < m.args().size(); ++i)
        if (!match_rec(m.args()[i], f.args()[i], binding)) return false;
      return true;
    }
  }
  return false;
}
}  // namespace

std::optional<instantiation> match_instance(const formula& m, const formula& f) {
  instantiation binding;
  if (match_rec(m, f, binding)) return binding;
  return std::nullopt;
}

std::optional<instantiation> match_all(std::span<const formula> metas,
                                       std::span<const formula> fs, instantiation seed) {
  if (metas.size() != fs.size()) return std::nullopt;
  for (std::size_t i = 0; i < metas.size(); ++i)
    if (!match_rec(metas[i], fs[i], seed)) return std::nullopt;
  return seed;
}

}  // namespace matlog
