#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <set>

#include "strongnet/errors.hpp"
#include "strongnet/sat_engine.hpp"
#include "support.hpp"

using namespace strongnet;

TEST_CASE("unit propagation under an assumption") {
  CnfFormula f(2, {{Literal::neg(1), Literal::pos(2)}});
  std::vector<Literal> a{Literal::pos(1)};
  SatOutcome r = solve_under_assumptions(f, a);
  REQUIRE(r.sat());
  CHECK(r.model->value(1));
  CHECK(r.model->value(2));
}

TEST_CASE("direct contradiction is unsat") {
  CnfFormula f(1, {{Literal::pos(1)}, {Literal::neg(1)}});
  SatOutcome r = solve_under_assumptions(f, {});
  CHECK_FALSE(r.sat());
  CHECK_FALSE(r.model.has_value());
  CHECK(enumerate_models(f).empty());
}

TEST_CASE("empty clause and empty formula") {
  CHECK_FALSE(solve_under_assumptions(parse_dimacs_string("p cnf 1 1\n0\n"), {}).sat());
  CnfFormula none(3, {});
  CHECK(solve_under_assumptions(none, {}).sat());
  CHECK(enumerate_models(none).size() == 8);
  CHECK(enumerate_models(CnfFormula(0, {})).size() == 1);
}

TEST_CASE("contradictory assumptions") {
  CnfFormula f(2, {});
  std::vector<Literal> a{Literal::pos(1), Literal::neg(1)};
  CHECK_FALSE(solve_under_assumptions(f, a).sat());
}

TEST_CASE("assumption out of range is rejected") {
  SatEngine e(CnfFormula(2, {}));
  std::vector<Literal> a{Literal::pos(3)};
  CHECK_THROWS_AS(e.solve(a), InvalidArgument);
}

TEST_CASE("implication has three models") {
  CnfFormula f(2, {{Literal::neg(1), Literal::pos(2)}});
  CHECK(enumerate_models(f).size() == 3);
}

TEST_CASE("enumeration limit") {
  CHECK_THROWS_AS(enumerate_models(CnfFormula(26, {})), InvalidArgument);
  CHECK_THROWS_AS(enumerate_models(CnfFormula(5, {}), 4), InvalidArgument);
  std::size_t seen = 0;
  for_each_model(CnfFormula(4, {}), [&](const Model&) { return ++seen < 3; });
  CHECK(seen == 3);
}

TEST_CASE("coreboot fixture") {
  CnfFormula f = testsupport::coreboot();
  Var no_gfx = *f.find("NO_GFX_INIT");
  Var have_vbe = *f.find("HAVE_VBE_LINEAR_FRAMEBUFFER");
  std::vector<Literal> a{Literal::pos(no_gfx)};
  SatOutcome r = solve_under_assumptions(f, a);
  REQUIRE(r.sat());
  CHECK(r.model->value(have_vbe));
  CHECK(enumerate_models(f).size() == testsupport::truth_table_models(f).size());
}

TEST_CASE("random 3-CNF status and model soundness against truth tables") {
  std::mt19937_64 rng(20240611);
  std::uniform_int_distribution<Var> nv(3, 20);
  std::uniform_real_distribution<double> ratio(3.0, 6.0);
  std::size_t sat_count = 0;
  for (int i = 0; i < 500; ++i) {
    Var n = nv(rng);
    CnfFormula f = testsupport::random_kcnf(rng, n, static_cast<std::size_t>(ratio(rng) * n));
    bool expected = !testsupport::truth_table_models(f).empty();
    SatOutcome r = solve_under_assumptions(f, {});
    REQUIRE(r.sat() == expected);
    if (r.sat()) {
      ++sat_count;
      CHECK(evaluates_true(f, r.model->values()));
    }
  }
  // both outcomes must actually be exercised
  CHECK(sat_count > 50);
  CHECK(sat_count < 450);
}

TEST_CASE("random incremental queries under assumptions") {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 100; ++i) {
    CnfFormula f = testsupport::random_kcnf(rng, 12, 40);
    auto models = testsupport::truth_table_models(f);
    SatEngine engine(f);
    for (int q = 0; q < 10; ++q) {
      std::uniform_int_distribution<Var> var(1, 12);
      std::vector<Literal> a{Literal(var(rng), rng() & 1), Literal(var(rng), rng() & 1)};
      bool expected = std::any_of(models.begin(), models.end(), [&](const auto& m) {
        return std::all_of(a.begin(), a.end(), [&](Literal l) { return m[l.var() - 1] == l.positive(); });
      });
      SatOutcome r = engine.solve(a);
      REQUIRE(r.sat() == expected);
      if (r.sat()) {
        CHECK(evaluates_true(f, r.model->values()));
        for (Literal l : a) CHECK(r.model->holds(l));
      }
    }
    CHECK(engine.solve_calls() == 10);
  }
}

TEST_CASE("enumeration matches the truth table exactly") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 150; ++i) {
    std::uniform_int_distribution<Var> nv(2, 12);
    Var n = nv(rng);
    CnfFormula f = testsupport::random_kcnf(rng, n, n * 2);
    auto expected = testsupport::truth_table_models(f);
    std::set<std::vector<bool>> got;
    for (const Model& m : enumerate_models(f)) {
      CHECK(evaluates_true(f, m.values()));
      got.insert(m.values());
    }
    CHECK(got.size() == expected.size());
    CHECK(got == std::set<std::vector<bool>>(expected.begin(), expected.end()));
  }
}

TEST_CASE("pluggable backend seam") {
  struct Counting : SolverBackend {
    std::unique_ptr<SolverBackend> inner = make_cdcl_backend();
    int* solves;
    explicit Counting(int* s) : solves(s) {}
    void reserve_vars(Var n) override { inner->reserve_vars(n); }
    void add_clause(std::span<const Literal> c) override { inner->add_clause(c); }
    bool solve(std::span<const Literal> a) override {
      ++*solves;
      return inner->solve(a);
    }
    bool model_value(Var v) const override { return inner->model_value(v); }
  };
  int solves = 0;
  CnfFormula f(2, {{Literal::neg(1), Literal::pos(2)}});
  SatEngine e(f, [&] { return std::make_unique<Counting>(&solves); });
  CHECK(e.solve().sat());
  std::vector<Literal> block{Literal::neg(2)};
  e.add_clause(block);
  std::vector<Literal> a{Literal::pos(1)};
  CHECK_FALSE(e.solve(a).sat());
  CHECK(e.solve().sat());
  CHECK(solves == 3);
}
