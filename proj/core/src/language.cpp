#include "matlog/language.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace matlog {

const char* errc_name(errc code) {
  switch (code) {
    case errc::unreadable_word: return "UnreadableWord";
    case errc::arity_mismatch: return "ArityMismatch";
    case errc::unbalanced_parentheses: return "UnbalancedParentheses";
    case errc::signature_mismatch: return "SignatureMismatch";
    case errc::unassigned_variable: return "UnassignedVariable";
    case errc::unbound_metavariable: return "UnboundMetavariable";
    case errc::bad_path: return "BadPath";
    case errc::bad_parameter: return "BadParameter";
    case errc::rank_exceeded: return "RankExceeded";
    case errc::out_of_range: return "OutOfRange";
    case errc::budget_exceeded: return "BudgetExceeded";
    case errc::universe_too_large: return "UniverseTooLarge";
    case errc::too_large: return "TooLarge";
    case errc::too_many_variables: return "TooManyVariables";
    case errc::not_boolean: return "NotBoolean";
  }
  return "Error";
}

// ---------------------------------------------------------------------------
// formula

namespace {

std::size_t combine_hash(std::size_t seed, std::size_t value) {
  return seed ^ (value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

std::size_t leaf_hash(node_kind kind, const std::string& name) {
  return combine_hash(static_cast<std::size_t>(kind) + 1,
                      std::hash<std::string>{}(name));
}

}  // namespace

formula formula::var(std::string name) {
  auto n = std::make_shared<node>();
  n->kind = node_kind::variable;
  n->hash = leaf_hash(n->kind, name);
  n->name = std::move(name);
  return formula(std::move(n));
}

formula formula::constant(std::string name) {
  auto n = std::make_shared<node>();
  n->kind = node_kind::constant;
  n->hash = leaf_hash(n->kind, name);
  n->name = std::move(name);
  return formula(std::move(n));
}

formula formula::metavar(std::string name) {
  auto n = std::make_shared<node>();
  n->kind = node_kind::metavariable;
  n->hash = leaf_hash(n->kind, name);
  n->name = std::move(name);
  n->ground = false;
  return formula(std::move(n));
}

formula formula::app(std::string op, std::vector<formula> args) {
  auto n = std::make_shared<node>();
  n->kind = node_kind::application;
  n->hash = leaf_hash(n->kind, op);
  n->degree = 1;
  for (const formula& a : args) {
    n->hash = combine_hash(n->hash, a.hash());
    n->degree += a.degree();
    n->size += a.size();
    n->ground = n->ground && a.ground();
  }
  n->name = std::move(op);
  n->args = std::move(args);
  return formula(std::move(n));
}

bool formula::operator==(const formula& other) const {
  if (node_ == other.node_) return true;
  if (node_->hash != other.node_->hash) return false;
  return compare(other) == 0;
}

int formula::compare(const formula& other) const {
  if (node_ == other.node_) return 0;
  if (node_->kind != other.node_->kind)
    return node_->kind < other.node_->kind ? -1 : 1;
  if (int c = node_->name.compare(other.node_->name); c != 0) return c < 0 ? -1 : 1;
  const auto& a = node_->args;
  const auto& b = other.node_->args;
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (int c = a[i].compare(b[i]); c != 0) return c;
  return 0;
}

// ---------------------------------------------------------------------------
// signature

signature::signature(std::vector<std::pair<std::string, int>> connectives,
                     std::vector<std::string> constants)
    : connectives_(std::move(connectives)), constants_(std::move(constants)) {
  for (const auto& [name, ar] : connectives_) {
    if (ar < 1) fail(errc::bad_parameter, "connective " + name + " must have arity >= 1");
    if (is_variable_name(name))
      fail(errc::bad_parameter, "connective name collides with a variable: " + name);
    if (!arity_.emplace(name, ar).second)
      fail(errc::bad_parameter, "duplicate connective: " + name);
  }
  for (const auto& name : constants_) {
    if (is_variable_name(name))
      fail(errc::bad_parameter, "constant name collides with a variable: " + name);
    if (arity_.count(name))
      fail(errc::bad_parameter, "constant name collides with a connective: " + name);
    if (!constant_set_.insert(name).second)
      fail(errc::bad_parameter, "duplicate constant: " + name);
  }
}

const signature& signature::assertoric() {
  static const signature sig(
      {{"∧", 2}, {"∨", 2}, {"→", 2}, {"¬", 1}, {"↔", 2}}, {});
  return sig;
}

const signature& signature::bounded() {
  static const signature sig(
      {{"∧", 2}, {"∨", 2}, {"→", 2}, {"¬", 1}, {"↔", 2}}, {"⊤", "⊥"});
  return sig;
}

const signature& signature::modal() {
  static const signature sig(
      {{"∧", 2}, {"∨", 2}, {"→", 2}, {"¬", 1}, {"↔", 2}, {"□", 1}, {"◇", 1}},
      {"⊤", "⊥"});
  return sig;
}

bool signature::has_connective(const std::string& name) const {
  return arity_.count(name) != 0;
}

bool signature::has_constant(const std::string& name) const {
  return constant_set_.count(name) != 0;
}

int signature::arity(const std::string& name) const {
  auto it = arity_.find(name);
  if (it == arity_.end()) fail(errc::bad_parameter, "unknown connective: " + name);
  return it->second;
}

bool signature::is_variable_name(const std::string& name) {
  if (name.empty()) return false;
  if (name[0] < 'p' || name[0] > 'z') return false;
  for (std::size_t i = 1; i < name.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(name[i]))) return false;
  return true;
}

formula signature::app(const std::string& op, std::vector<formula> args) const {
  int ar = arity(op);
  if (static_cast<std::size_t>(ar) != args.size())
    fail(errc::arity_mismatch, op + " expects " + std::to_string(ar) + " arguments, got " +
                                   std::to_string(args.size()));
  return formula::app(op, std::move(args));
}

bool signature::admits(const formula& f) const {
  switch (f.kind()) {
    case node_kind::variable: return is_variable_name(f.name());
    case node_kind::constant: return has_constant(f.name());
    case node_kind::metavariable: return true;
    case node_kind::application: {
      if (!has_connective(f.name())) return false;
      if (arity_.at(f.name()) != static_cast<int>(f.args().size())) return false;
      for (const formula& a : f.args())
        if (!admits(a)) return false;
      return true;
    }
  }
  return false;
}

void signature::require(const formula& f) const {
  if (!admits(f))
    fail(errc::signature_mismatch, "formula uses symbols outside the signature: " + print(f));
}

// ---------------------------------------------------------------------------
// tokenizer / parser

namespace {

struct token {
  enum class kind { lparen, rparen, symbol } what;
  std::string text;    // canonical spelling for symbols
  std::size_t pos;     // byte offset in the input
};

// ASCII aliases for the standard spellings; applied only when the alias does
// not name a symbol of the signature itself.
const std::vector<std::pair<std::string, std::string>>& standard_aliases() {
  static const std::vector<std::pair<std::string, std::string>> table = {
      {"<->", "↔"}, {"->", "→"}, {"&", "∧"}, {"|", "∨"}, {"~", "¬"},
      {"T", "⊤"},   {"F", "⊥"},  {"[]", "□"}, {"<>", "◇"},
  };
  return table;
}

std::vector<token> tokenize(const std::string& text, const signature& sig) {
  // Spelling table: canonical names plus applicable aliases, matched longest
  // first so that "<->" wins over "<>" prefix ambiguity at the same offset.
  std::vector<std::pair<std::string, std::string>> spellings;  // spelling -> canonical
  for (const auto& [name, ar] : sig.connectives()) spellings.emplace_back(name, name);
  for (const auto& name : sig.constants()) spellings.emplace_back(name, name);
  for (const auto& [alias, canonical] : standard_aliases()) {
    if (!sig.has_connective(canonical) && !sig.has_constant(canonical)) continue;
    if (sig.has_connective(alias) || sig.has_constant(alias)) continue;
    spellings.emplace_back(alias, canonical);
  }
  std::sort(spellings.begin(), spellings.end(),
            [](const auto& a, const auto& b) { return a.first.size() > b.first.size(); });

  std::vector<token> out;
  std::size_t i = 0;
  while (i < text.size()) {
    unsigned char c = text[i];
    if (std::isspace(c)) {
      ++i;
      continue;
    }
    if (c == '(') {
      out.push_back({token::kind::lparen, "(", i});
      ++i;
      continue;
    }
    if (c == ')') {
      out.push_back({token::kind::rparen, ")", i});
      ++i;
      continue;
    }
    bool matched = false;
    for (const auto& [spelling, canonical] : spellings) {
      if (text.compare(i, spelling.size(), spelling) == 0) {
        // A variable-letter spelling like "T" must not split an identifier.
        if (std::isalpha(static_cast<unsigned char>(spelling.back())) &&
            i + spelling.size() < text.size() &&
            std::isalnum(static_cast<unsigned char>(text[i + spelling.size()])) &&
            signature::is_variable_name(spelling))
          continue;
        out.push_back({token::kind::symbol, canonical, i});
        i += spelling.size();
        matched = true;
        break;
      }
    }
    if (matched) continue;
    if (c >= 'p' && c <= 'z') {
      std::size_t j = i + 1;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      out.push_back({token::kind::symbol, text.substr(i, j - i), i});
      i = j;
      continue;
    }
    fail(errc::unreadable_word, "unreadable symbol at byte " + std::to_string(i), i);
  }
  return out;
}

class parser {
 public:
  parser(std::vector<token> tokens, const signature& sig)
      : tokens_(std::move(tokens)), sig_(sig) {}

  formula run(notation n) {
    formula f = n == notation::prefix ? parse_prefix() : parse_infix();
    if (pos_ != tokens_.size())
      fail(errc::unbalanced_parentheses,
           "trailing input after a complete formula at byte " +
               std::to_string(tokens_[pos_].pos),
           tokens_[pos_].pos);
    return f;
  }

 private:
  const token& peek() const {
    if (pos_ >= tokens_.size())
      fail(errc::arity_mismatch, "unexpected end of input", end_pos());
    return tokens_[pos_];
  }
  const token& next() {
    const token& t = peek();
    ++pos_;
    return t;
  }
  std::size_t end_pos() const {
    return tokens_.empty() ? 0 : tokens_.back().pos + tokens_.back().text.size();
  }

  formula atom_or_fail(const token& t) {
    if (sig_.has_constant(t.text)) return formula::constant(t.text);
    if (signature::is_variable_name(t.text)) return formula::var(t.text);
    fail(errc::unreadable_word, "token " + t.text + " is not in the signature", t.pos);
  }

  formula parse_prefix() {
    const token& t = next();
    if (t.what != token::kind::symbol)
      fail(errc::unbalanced_parentheses, "parentheses have no role in prefix notation",
           t.pos);
    if (sig_.has_connective(t.text)) {
      int ar = sig_.arity(t.text);
      std::vector<formula> args;
      args.reserve(ar);
      for (int i = 0; i < ar; ++i) args.push_back(parse_prefix());
      return formula::app(t.text, std::move(args));
    }
    return atom_or_fail(t);
  }

  formula parse_infix() {
    const token& t = peek();
    if (t.what == token::kind::lparen) {
      std::size_t open = next().pos;
      formula lhs = parse_infix();
      const token& op = next();
      if (op.what != token::kind::symbol || !sig_.has_connective(op.text))
        fail(errc::unreadable_word, "expected a binary connective", op.pos);
      if (sig_.arity(op.text) != 2)
        fail(errc::arity_mismatch, op.text + " is not binary", op.pos);
      formula rhs = parse_infix();
      if (pos_ >= tokens_.size() || tokens_[pos_].what != token::kind::rparen)
        fail(errc::unbalanced_parentheses, "missing ) for ( at byte " + std::to_string(open),
             open);
      ++pos_;
      return formula::app(op.text, {std::move(lhs), std::move(rhs)});
    }
    if (t.what == token::kind::rparen)
      fail(errc::unbalanced_parentheses, "unexpected )", t.pos);
    next();
    if (sig_.has_connective(t.text)) {
      if (sig_.arity(t.text) != 1)
        fail(errc::unbalanced_parentheses,
             "binary connectives require explicit parentheses", t.pos);
      return formula::app(t.text, {parse_infix()});
    }
    return atom_or_fail(t);
  }

  std::vector<token> tokens_;
  const signature& sig_;
  std::size_t pos_ = 0;
};

bool needs_space(const std::string& left, const std::string& right) {
  // Prefix printing only separates tokens where gluing them would merge an
  // identifier, e.g. "F a" or "p q"; connective glyphs never merge.
  auto wordish = [](const std::string& s) {
    return !s.empty() && std::isalnum(static_cast<unsigned char>(s.back()));
  };
  auto starts_wordish = [](const std::string& s) {
    return !s.empty() && std::isalnum(static_cast<unsigned char>(s.front()));
  };
  return wordish(left) && starts_wordish(right);
}

void print_prefix(const formula& f, std::string& out) {
  const std::string& tok = f.name();
  if (!out.empty() && needs_space(out, tok)) out += ' ';
  out += tok;
  for (const formula& a : f.args()) print_prefix(a, out);
}

void print_infix(const formula& f, std::string& out) {
  switch (f.kind()) {
    case node_kind::variable:
    case node_kind::constant:
    case node_kind::metavariable:
      out += f.name();
      return;
    case node_kind::application:
      if (f.args().size() == 1) {
        out += f.name();
        print_infix(f.args()[0], out);
      } else if (f.args().size() == 2) {
        out += '(';
        print_infix(f.args()[0], out);
        out += f.name();
        print_infix(f.args()[1], out);
        out += ')';
      } else {
        out += f.name();
        out += '(';
        for (std::size_t i = 0; i < f.args().size(); ++i) {
          if (i) out += ',';
          print_infix(f.args()[i], out);
        }
        out += ')';
      }
      return;
  }
}

}  // namespace

formula parse(const std::string& text, const signature& sig, notation n) {
  parser p(tokenize(text, sig), sig);
  return p.run(n);
}

std::string print(const formula& f, notation n) {
  std::string out;
  if (n == notation::prefix)
    print_prefix(f, out);
  else
    print_infix(f, out);
  return out;
}

// ---------------------------------------------------------------------------
// structural measures

int degree(const formula& f) { return f.degree(); }

namespace {
void collect_subformulas(const formula& f, formula_set& out) {
  if (!out.insert(f).second) return;
  for (const formula& a : f.args()) collect_subformulas(a, out);
}

template <node_kind K>
void collect_names(const formula& f, std::set<std::string>& out) {
  if (f.kind() == K) out.insert(f.name());
  for (const formula& a : f.args()) collect_names<K>(a, out);
}
}  // namespace

formula_set subformulas(const formula& f) {
  formula_set out;
  collect_subformulas(f, out);
  return out;
}

std::set<std::string> variables(const formula& f) {
  std::set<std::string> out;
  collect_names<node_kind::variable>(f, out);
  return out;
}

std::set<std::string> metavariables(const formula& f) {
  std::set<std::string> out;
  collect_names<node_kind::metavariable>(f, out);
  return out;
}

// ---------------------------------------------------------------------------
// formula trees

namespace {

/// Primes by index, extended on demand: prime_at(0) = 2.
unsigned long prime_at(std::size_t index) {
  static std::vector<unsigned long> primes = {2, 3, 5, 7, 11, 13};
  while (index >= primes.size()) {
    unsigned long candidate = primes.back() + 2;
    for (;;) {
      bool is_prime = true;
      for (unsigned long p : primes) {
        if (p * p > candidate) break;
        if (candidate % p == 0) {
          is_prime = false;
          break;
        }
      }
      if (is_prime) break;
      candidate += 2;
    }
    primes.push_back(candidate);
  }
  return primes[index];
}

// id and the index of its greatest prime factor travel together, so ids are
// never factored.
void build_tree_rec(const formula& f, const mpz_class& id, std::size_t greatest_index,
                    std::size_t parent, formula_tree& out) {
  std::size_t self = out.nodes.size();
  out.nodes.push_back({id, f});
  if (self != 0)
    out.edges.push_back({parent, self, 0});  // weight patched by caller
  for (std::size_t i = 1; i <= f.args().size(); ++i) {
    std::size_t child_prime_index = greatest_index + i;
    mpz_class child_id = id * prime_at(child_prime_index);
    std::size_t edge_slot = out.edges.size();
    build_tree_rec(f.args()[i - 1], child_id, child_prime_index, self, out);
    out.edges[edge_slot].weight = static_cast<int>(i);
  }
}

}  // namespace

formula_tree build_tree(const formula& f) {
  formula_tree out;
  build_tree_rec(f, mpz_class(2), 0, 0, out);
  return out;
}

std::variant<formula_tree, not_a_tree> assemble_tree(
    const std::vector<std::pair<mpz_class, formula>>& pairs) {
  const formula* root_label = nullptr;
  std::map<mpz_class, const formula*> by_id;
  for (const auto& [id, label] : pairs) {
    if (!by_id.emplace(id, &label).second)
      return not_a_tree{not_a_tree::reason::duplicate_id,
                        "node id " + id.get_str() + " occurs twice"};
    if (id == 2) root_label = &label;
  }
  if (root_label == nullptr)
    return not_a_tree{not_a_tree::reason::missing_root, "no node carries the root id 2"};

  formula_tree expected = build_tree(*root_label);
  for (const auto& n : expected.nodes) {
    auto it = by_id.find(n.id);
    if (it == by_id.end())
      return not_a_tree{not_a_tree::reason::missing_node,
                        "missing node id " + n.id.get_str() + " labeled " + print(n.label)};
    if (!(*it->second == n.label))
      return not_a_tree{not_a_tree::reason::label_mismatch,
                        "node id " + n.id.get_str() + " is labeled " + print(*it->second) +
                            " but its parent's subformula there is " + print(n.label)};
  }
  if (by_id.size() != expected.nodes.size()) {
    std::set<mpz_class> known;
    for (const auto& n : expected.nodes) known.insert(n.id);
    for (const auto& [id, label] : by_id)
      if (!known.count(id))
        return not_a_tree{not_a_tree::reason::orphan_id,
                          "node id " + id.get_str() + " does not belong to the tree"};
  }
  return expected;
}

// ---------------------------------------------------------------------------
// replacement

formula subformula_at(const formula& f, const std::vector<int>& path) {
  formula cur = f;
  for (std::size_t i = 0; i < path.size(); ++i) {
    int w = path[i];
    if (w < 1 || static_cast<std::size_t>(w) > cur.args().size())
      fail(errc::bad_path, "no edge of weight " + std::to_string(w) + " at depth " +
                               std::to_string(i));
    cur = cur.args()[w - 1];
  }
  return cur;
}

namespace {
formula replace_rec(const formula& f, const std::vector<int>& path, std::size_t depth,
                    const formula& g) {
  if (depth == path.size()) return g;
  int w = path[depth];
  if (w < 1 || static_cast<std::size_t>(w) > f.args().size())
    fail(errc::bad_path, "no edge of weight " + std::to_string(w) + " at depth " +
                             std::to_string(depth));
  std::vector<formula> args = f.args();
  args[w - 1] = replace_rec(args[w - 1], path, depth + 1, g);
  return formula::app(f.name(), std::move(args));
}
}  // namespace

formula replace_at(const formula& f, const std::vector<int>& path, const formula& g) {
  return replace_rec(f, path, 0, g);
}

}  // namespace matlog
