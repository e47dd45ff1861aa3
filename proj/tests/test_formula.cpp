#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "strongnet/errors.hpp"
#include "strongnet/feature_model.hpp"
#include "strongnet/formula.hpp"
#include "support.hpp"

using namespace strongnet;

namespace {

std::size_t error_line(std::string_view text) {
  try {
    parse_dimacs_string(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return 0;
}

}  // namespace

TEST_CASE("literal basics") {
  Literal l = Literal::from_dimacs(-3);
  CHECK(l.var() == 3);
  CHECK_FALSE(l.positive());
  CHECK(~~l == l);
  CHECK((~l).to_dimacs() == 3);
  CHECK(Literal::neg(1) < Literal::pos(1));
  CHECK(Literal::pos(1) < Literal::neg(2));
  CHECK_THROWS_AS(Literal::from_dimacs(0), InvalidArgument);
}

TEST_CASE("parse plain clause") {
  CnfFormula f = parse_dimacs_string("p cnf 2 1\n1 -2 0");
  CHECK(f.num_vars() == 2);
  REQUIRE(f.clauses().size() == 1);
  CHECK(f.clauses()[0] == Clause{Literal::pos(1), Literal::neg(2)});
  CHECK(f.names().empty());
  CHECK(f.name_of(2) == "v2");
}

TEST_CASE("name comments before and after the problem line") {
  CnfFormula f = parse_dimacs_string("c 1 PCI\np cnf 2 1\nc 2 VGA_ROM_RUN\n1 0");
  CHECK(f.names().at(1) == "PCI");
  CHECK(f.names().at(2) == "VGA_ROM_RUN");
  CHECK(f.find("VGA_ROM_RUN") == Var{2});
  CHECK_FALSE(f.find("NOPE").has_value());
  CHECK(f.clauses() == std::vector<Clause>{{Literal::pos(1)}});
}

TEST_CASE("free-text comments are not names") {
  CnfFormula f = parse_dimacs_string("c generated by a tool\nc 1 two words\nc x Y\np cnf 1 0\n");
  CHECK(f.names().empty());
}

TEST_CASE("tautologies and duplicate literals are normalized") {
  CHECK(parse_dimacs_string("p cnf 1 1\n1 -1 0").clauses().empty());
  CnfFormula f = parse_dimacs_string("p cnf 2 1\n2 1 2 1 0\n");
  CHECK(f.clauses()[0] == Clause{Literal::pos(2), Literal::pos(1)});
}

TEST_CASE("clauses may span lines and share lines") {
  CnfFormula f = parse_dimacs_string("p cnf 3 3\n1 2\n 3 0 -1 0\r\n-2 -3 0\n%\n0\n");
  CHECK(f.clauses().size() == 3);
}

TEST_CASE("empty clause flags the formula") {
  CnfFormula f = parse_dimacs_string("p cnf 2 2\n1 0\n0\n");
  CHECK(f.has_empty_clause());
  CHECK(f.clauses().size() == 1);
  CHECK_FALSE(evaluates_true(f, {true, true}));
  CHECK(emit_dimacs(f) == "p cnf 2 2\n1 0\n0\n");
}

TEST_CASE("parse errors carry line numbers") {
  CHECK(error_line("c hi\np cnf x 1\n1 0\n") == 2);
  CHECK(error_line("p dnf 1 1\n1 0\n") == 1);
  CHECK(error_line("p cnf 2 1\n\n1 3 0\n") == 3);
  CHECK(error_line("p cnf 2 2\n1 0\n2 -1\n") == 3);
  CHECK(error_line("c 1 A\nc 1 B\np cnf 1 0\n") == 2);
  CHECK(error_line("c 1 A\nc 2 A\np cnf 2 0\n") == 2);
  CHECK(error_line("c 3 A\np cnf 2 0\n") == 1);
  CHECK(error_line("p cnf 2 0\nc 3 A\n") == 2);
  CHECK(error_line("1 0\np cnf 1 1\n") == 1);
  CHECK(error_line("p cnf 1 1\np cnf 1 1\n1 0\n") == 2);
  CHECK(error_line("p cnf 1 2\n1 0\n") == 2);
  CHECK(error_line("p cnf 2 1\n1 a 0\n") == 2);
  CHECK(error_line("c nothing here\n") == 1);
  CHECK(error_line("") == 1);
}

TEST_CASE("formula constructor validates") {
  CHECK_THROWS_AS(CnfFormula(1, {{Literal::pos(2)}}), InvalidArgument);
  CHECK_THROWS_AS(CnfFormula(2, {}, {{1, "A"}, {2, "A"}}), InvalidArgument);
  CHECK_THROWS_AS(CnfFormula(2, {}, {{3, "A"}}), InvalidArgument);
}

TEST_CASE("emit") {
  CnfFormula f(2, {{Literal::pos(1), Literal::neg(2)}});
  std::string text = emit_dimacs(f);
  CHECK(text.find("p cnf 2 1") != std::string::npos);
  CHECK(text.find("1 -2 0") != std::string::npos);
  CHECK(emit_dimacs(CnfFormula(3, {})) == "p cnf 3 0\n");
  CnfFormula named(2, {}, {{2, "B"}});
  CHECK(emit_dimacs(named) == "c 2 B\np cnf 2 0\n");
}

TEST_CASE("round trip parse . emit . parse = parse on random formulas") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    std::uniform_int_distribution<std::size_t> k(1, 5);
    CnfFormula f = testsupport::random_kcnf(rng, 12, 30, k(rng));
    std::map<Var, std::string> names;
    for (Var v = 1; v <= 12; v += 3) names[v] = "F" + std::to_string(v);
    f = CnfFormula(f.num_vars(), f.clauses(), names);
    CnfFormula once = parse_dimacs_string(emit_dimacs(f));
    CHECK(once == f);
    CHECK(parse_dimacs_string(emit_dimacs(once)) == once);
  }
}

TEST_CASE("coreboot encoding round-trips byte-identically") {
  CnfFormula f = testsupport::coreboot();
  std::string first = emit_dimacs(f);
  std::string second = emit_dimacs(parse_dimacs_string(first));
  CHECK(first == second);
  CHECK(parse_dimacs_string(first) == f);
}
