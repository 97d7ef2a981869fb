#include <doctest.h>

#include "matlog/language.hpp"
#include "matlog/random.hpp"
#include "test_util.hpp"

using namespace matlog;
using namespace matlog::test;

namespace {
const signature fig1_sig({{"Fi", 2}, {"Fj", 2}}, {"a"});
}

TEST_CASE("parse: infix and prefix agree on the paper's example") {
  formula infix = F("((p∧q)→p)");
  formula prefix = parse("→∧pqp", signature::assertoric(), notation::prefix);
  CHECK(infix == prefix);
  CHECK(infix.kind() == node_kind::application);
  CHECK(infix.name() == "→");
  CHECK(infix.args()[0].name() == "∧");
}

TEST_CASE("parse: ASCII aliases map to canonical spellings") {
  CHECK(F("((p&q)->p)") == F("((p∧q)→p)"));
  CHECK(F("~p") == F("¬p"));
  CHECK(F("(p<->q)") == F("(p↔q)"));
  CHECK(FB("(T|F)") == FB("(⊤∨⊥)"));
  CHECK(FM("[]p") == FM("□p"));
  CHECK(FM("<>p") == FM("◇p"));
}

TEST_CASE("parse: error reporting with positions") {
  CHECK_THROWS_AS(parse("F a", fig1_sig, notation::prefix), error);
  try {
    parse("Fi a", fig1_sig, notation::prefix);
    FAIL("expected arity mismatch");
  } catch (const error& e) {
    CHECK(e.code() == errc::arity_mismatch);
  }
  try {
    parse("(p∧q", signature::assertoric(), notation::infix);
    FAIL("expected unbalanced parentheses");
  } catch (const error& e) {
    CHECK(e.code() == errc::unbalanced_parentheses);
    CHECK(e.position().has_value());
  }
  try {
    parse("(p∧#)", signature::assertoric(), notation::infix);
    FAIL("expected unreadable word");
  } catch (const error& e) {
    CHECK(e.code() == errc::unreadable_word);
    CHECK(*e.position() == 5);  // byte offset of '#': '(' 'p' '∧'(3 bytes)
  }
  // trailing input is not a single readable formula
  CHECK_THROWS_AS(parse("p∧q", signature::assertoric(), notation::infix), error);
}

TEST_CASE("print/parse round-trips on random formulas") {
  rng g(20240801);
  formula_generator gen(signature::bounded(), {"p", "q", "r", "p1", "p2"}, 7);
  for (int i = 0; i < 1200; ++i) {
    formula f = gen(g);
    for (notation n : {notation::infix, notation::prefix}) {
      std::string text = print(f, n);
      formula back = parse(text, signature::bounded(), n);
      CHECK(back == f);
      CHECK(print(back, n) == text);
    }
  }
}

TEST_CASE("degree: base cases and the connective-count oracle") {
  CHECK(degree(F("p")) == 0);
  CHECK(degree(F("¬p")) == 1);
  CHECK(degree(F("(p∨¬p)")) == 2);
  CHECK(degree(FB("⊤")) == 0);

  // oracle: count connective spellings in the prefix printing
  rng g(7);
  formula_generator gen(signature::assertoric(), {"p", "q", "r"}, 8);
  for (int i = 0; i < 500; ++i) {
    formula f = gen(g);
    std::string text = print(f, notation::prefix);
    int count = 0;
    for (const char* conn : {"∧", "∨", "→", "¬", "↔"}) {
      std::size_t at = 0;
      while ((at = text.find(conn, at)) != std::string::npos) {
        ++count;
        at += std::string(conn).size();
      }
    }
    CHECK(degree(f) == count);
  }
}

TEST_CASE("subformulas") {
  CHECK(subformulas(F("p")) == formula_set{F("p")});
  CHECK(subformulas(F("(p→q)")) == formula_set{F("(p→q)"), F("p"), F("q")});
  CHECK(subformulas(F("((p→q)∨(q→p))")).size() == 5);
}

TEST_CASE("variables") {
  CHECK(variables(FB("⊤")).empty());
  CHECK(variables(F("((p∧q)→p)")) == std::set<std::string>{"p", "q"});

  // image under substitution has exactly the variables of the image formulas
  rng g(99);
  formula_generator gen(signature::assertoric(), {"p", "q", "r"}, 5);
  for (int i = 0; i < 100; ++i) {
    formula f = gen(g);
    substitution s = random_substitution(g, gen);
    std::set<std::string> expected;
    for (const auto& v : variables(f)) {
      auto it = s.support().find(v);
      if (it == s.support().end())
        expected.insert(v);
      else
        for (const auto& w : variables(it->second)) expected.insert(w);
    }
    CHECK(variables(s(f)) == expected);
  }
}

TEST_CASE("build_tree: prime-product ids") {
  formula_tree single = build_tree(F("p"));
  REQUIRE(single.nodes.size() == 1);
  CHECK(single.nodes[0].id == 2);
  CHECK(single.nodes[0].label == F("p"));
  CHECK(single.edges.empty());

  // Fi Fj a p p: root 2, children 6 and 10, grandchildren 30 and 42.
  formula fig1 = parse("Fi Fj a p p", fig1_sig, notation::prefix);
  formula_tree t = build_tree(fig1);
  REQUIRE(t.nodes.size() == 5);
  std::map<std::string, formula> by_id;
  for (const auto& n : t.nodes) by_id.emplace(n.id.get_str(), n.label);
  CHECK(by_id.at("2") == fig1);
  CHECK(by_id.at("6") == parse("Fj a p", fig1_sig, notation::prefix));
  CHECK(by_id.at("10") == F("p"));
  CHECK(by_id.at("30") == parse("a", fig1_sig, notation::prefix));
  CHECK(by_id.at("42") == F("p"));
  // two distinct leaves share the label p
  CHECK(!(by_id.at("10") != by_id.at("42")));

  // edge weights address argument positions
  CHECK(t.edges.size() == 4);
  for (const auto& e : t.edges) CHECK((e.weight == 1 || e.weight == 2));
}

TEST_CASE("build_tree: node count equals subformula occurrences, ids distinct") {
  rng g(12345);
  formula_generator gen(signature::assertoric(), {"p", "q"}, 12);
  for (int i = 0; i < 500; ++i) {
    formula f = gen(g);
    formula_tree t = build_tree(f);
    CHECK(static_cast<int>(t.nodes.size()) == f.size());
    std::set<std::string> ids;
    for (const auto& n : t.nodes) ids.insert(n.id.get_str());
    CHECK(ids.size() == t.nodes.size());
  }
}

TEST_CASE("assemble_tree: round-trip, mutations, shuffles") {
  formula f = F("¬p");
  formula_tree t = build_tree(f);
  std::vector<std::pair<mpz_class, formula>> pairs;
  for (const auto& n : t.nodes) pairs.emplace_back(n.id, n.label);

  auto ok = assemble_tree(pairs);
  REQUIRE(std::holds_alternative<formula_tree>(ok));
  CHECK(std::get<formula_tree>(ok).nodes.size() == t.nodes.size());

  auto missing = assemble_tree({pairs[0]});
  REQUIRE(std::holds_alternative<not_a_tree>(missing));
  CHECK(std::get<not_a_tree>(missing).why == not_a_tree::reason::missing_node);

  auto rootless = assemble_tree({pairs[1]});
  REQUIRE(std::holds_alternative<not_a_tree>(rootless));
  CHECK(std::get<not_a_tree>(rootless).why == not_a_tree::reason::missing_root);

  // orphan: extra node that no build_tree produces
  auto orphaned = pairs;
  orphaned.emplace_back(mpz_class(9999), F("q"));
  auto orphan = assemble_tree(orphaned);
  REQUIRE(std::holds_alternative<not_a_tree>(orphan));
  CHECK(std::get<not_a_tree>(orphan).why == not_a_tree::reason::orphan_id);

  // label mismatch
  auto wrong = pairs;
  for (auto& [id, label] : wrong)
    if (id == 3 * 2) label = F("q");
  auto mismatch = assemble_tree(wrong);
  REQUIRE(std::holds_alternative<not_a_tree>(mismatch));
  CHECK(std::get<not_a_tree>(mismatch).why == not_a_tree::reason::label_mismatch);

  // shuffled valid pair lists reassemble to build_tree's output
  rng g(500);
  formula_generator gen(signature::assertoric(), {"p", "q", "r"}, 8);
  for (int i = 0; i < 200; ++i) {
    formula h = gen(g);
    formula_tree expected = build_tree(h);
    std::vector<std::pair<mpz_class, formula>> shuffled;
    for (const auto& n : expected.nodes) shuffled.emplace_back(n.id, n.label);
    std::shuffle(shuffled.begin(), shuffled.end(), g);
    auto result = assemble_tree(shuffled);
    REQUIRE(std::holds_alternative<formula_tree>(result));
    const formula_tree& got = std::get<formula_tree>(result);
    REQUIRE(got.nodes.size() == expected.nodes.size());
    for (std::size_t k = 0; k < got.nodes.size(); ++k) {
      CHECK(got.nodes[k].id == expected.nodes[k].id);
      CHECK(got.nodes[k].label == expected.nodes[k].label);
    }
  }
}

TEST_CASE("replace_at: the mirrored-occurrence example and properties") {
  formula fig1 = parse("Fi Fj a p p", fig1_sig, notation::prefix);
  formula beta = parse("Fj a a", fig1_sig, notation::prefix);

  // replace the second p (path: argument 2 of the root)
  formula replaced = replace_at(fig1, {2}, beta);
  CHECK(replaced == parse("Fi Fj a p Fj a a", fig1_sig, notation::prefix));
  // the first occurrence (path 1,2) is untouched
  CHECK(subformula_at(replaced, {1, 2}) == F("p"));

  CHECK(replace_at(fig1, {}, beta) == beta);
  CHECK_THROWS_AS(replace_at(fig1, {3}, beta), error);

  rng g(41);
  formula_generator gen(signature::assertoric(), {"p", "q"}, 7);
  for (int i = 0; i < 300; ++i) {
    formula f = gen(g);
    formula h = gen(g);
    // random path into f
    std::vector<int> path;
    formula cur = f;
    while (cur.kind() == node_kind::application &&
           std::uniform_int_distribution<int>(0, 2)(g) > 0) {
      int w = std::uniform_int_distribution<int>(1, static_cast<int>(cur.args().size()))(g);
      path.push_back(w);
      cur = cur.args()[w - 1];
    }
    formula replaced2 = replace_at(f, path, h);
    CHECK(subformula_at(replaced2, path) == h);
    // outside the path, everything is untouched: replacing back restores f
    CHECK(replace_at(replaced2, path, cur) == f);
  }
}
