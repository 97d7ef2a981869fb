#pragma once

#include <gmpxx.h>

#include <compare>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "matlog/errors.hpp"

namespace matlog {

enum class node_kind { variable, constant, metavariable, application };

/// Immutable sentential formula (or metaformula, when metavariable leaves
/// occur). Cheap to copy; structural equality with hash shortcut.
class formula {
 public:
  /// Null handle; every accessor requires a real formula assigned first.
  formula() = default;
  explicit operator bool() const { return node_ != nullptr; }

  static formula var(std::string name);
  static formula constant(std::string name);
  static formula metavar(std::string name);
  static formula app(std::string op, std::vector<formula> args);

  node_kind kind() const { return node_->kind; }
  /// Variable/constant/metavariable name, or connective name for applications.
  const std::string& name() const { return node_->name; }
  const std::vector<formula>& args() const { return node_->args; }

  bool is_atom() const {
    return node_->kind == node_kind::variable || node_->kind == node_kind::constant;
  }
  /// True when no metavariable occurs, i.e. this is a plain formula.
  bool ground() const { return node_->ground; }

  /// Number of connective occurrences.
  int degree() const { return node_->degree; }
  /// Number of AST nodes (subformula occurrences).
  int size() const { return node_->size; }

  std::size_t hash() const { return node_->hash; }
  bool operator==(const formula& other) const;
  bool operator!=(const formula& other) const { return !(*this == other); }
  /// Total structural order; used for deterministic set iteration.
  bool operator<(const formula& other) const { return compare(other) < 0; }
  int compare(const formula& other) const;

  /// Identity of the underlying node; distinct formulas may share nodes.
  const void* id() const { return node_.get(); }

 private:
  struct node {
    node_kind kind;
    std::string name;
    std::vector<formula> args;
    std::size_t hash = 0;
    int degree = 0;
    int size = 1;
    bool ground = true;
  };
  explicit formula(std::shared_ptr<const node> n) : node_(std::move(n)) {}
  std::shared_ptr<const node> node_;
};

using metaformula = formula;

struct formula_hasher {
  std::size_t operator()(const formula& f) const { return f.hash(); }
};

using formula_set = std::set<formula>;

/// Connective/constant alphabet of a sentential language. Variables are the
/// unbounded generated family p..z with an optional numeric suffix; the
/// constructor rejects connective or constant names that collide with it.
class signature {
 public:
  /// Empty signature; a placeholder until assigned.
  signature() = default;
  signature(std::vector<std::pair<std::string, int>> connectives,
            std::vector<std::string> constants);

  /// ∧,∨,→,¬,↔ (the assertoric language).
  static const signature& assertoric();
  /// assertoric plus constants ⊤,⊥.
  static const signature& bounded();
  /// bounded plus modalities □,◇.
  static const signature& modal();

  bool has_connective(const std::string& name) const;
  bool has_constant(const std::string& name) const;
  /// Arity of a declared connective; throws bad_parameter otherwise.
  int arity(const std::string& name) const;
  static bool is_variable_name(const std::string& name);

  const std::vector<std::pair<std::string, int>>& connectives() const {
    return connectives_;
  }
  const std::vector<std::string>& constants() const { return constants_; }

  /// Arity-checked application.
  formula app(const std::string& op, std::vector<formula> args) const;
  /// True when every symbol of f belongs to this signature.
  bool admits(const formula& f) const;
  /// Throws signature_mismatch when !admits(f).
  void require(const formula& f) const;

 private:
  std::vector<std::pair<std::string, int>> connectives_;
  std::vector<std::string> constants_;
  std::map<std::string, int> arity_;
  std::set<std::string> constant_set_;
};

enum class notation { prefix, infix };

/// Reads `text` as a single formula over `sig`. Infix follows the convention
/// that binary connectives are fully parenthesized while unary connectives
/// and atoms are not. ASCII aliases (&, |, ->, ~, <->, T, F, [], <>) are
/// accepted on input; printing always uses the canonical spellings.
formula parse(const std::string& text, const signature& sig, notation n);
std::string print(const formula& f, notation n = notation::infix);

int degree(const formula& f);
formula_set subformulas(const formula& f);
std::set<std::string> variables(const formula& f);
std::set<std::string> metavariables(const formula& f);

/// Formula tree with the prime-product node ids: the root carries id 2, and
/// the i-th child of a node with id n whose greatest prime factor is the j-th
/// prime carries id n·p_{j+i}.
struct formula_tree {
  struct tree_node {
    mpz_class id;
    formula label;
  };
  struct tree_edge {
    std::size_t parent;  // index into nodes
    std::size_t child;
    int weight;  // 1-based argument position
  };
  std::vector<tree_node> nodes;  // preorder; nodes[0] is the root
  std::vector<tree_edge> edges;
};

formula_tree build_tree(const formula& f);

struct not_a_tree {
  enum class reason { missing_root, duplicate_id, orphan_id, missing_node, label_mismatch };
  reason why;
  std::string detail;
};

/// Reassembles a formula tree from its (id, label) node multiset, or reports
/// why the pairs are not the node set of any build_tree output.
std::variant<formula_tree, not_a_tree> assemble_tree(
    const std::vector<std::pair<mpz_class, formula>>& pairs);

/// Subformula occurrence addressed by edge weights from the root; the empty
/// path addresses the whole formula.
formula subformula_at(const formula& f, const std::vector<int>& path);
/// Replaces the addressed occurrence by g, leaving every other occurrence
/// untouched. Throws bad_path.
formula replace_at(const formula& f, const std::vector<int>& path, const formula& g);

}  // namespace matlog
