#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "mutations.hpp"
#include "strongnet/errors.hpp"
#include "strongnet/oracle.hpp"
#include "support.hpp"

using namespace strongnet;

namespace {

ValidationOptions full() {
  ValidationOptions o;
  o.sample_size = 1u << 20;
  o.absence_checks = 1u << 20;
  return o;
}

}  // namespace

TEST_CASE("oracle on a single implication") {
  CnfFormula f(2, {{Literal::neg(1), Literal::pos(2)}});
  CHECK(oracle_strong_relations(f) == extract_strong_relations(f));
}

TEST_CASE("oracle limits") {
  CHECK_THROWS_AS(oracle_strong_relations(CnfFormula(26, {})), InvalidArgument);
  CHECK_THROWS_AS(oracle_strong_relations(CnfFormula(1, {{Literal::pos(1)}, {Literal::neg(1)}})),
                  UnsatisfiableError);
}

TEST_CASE("oracle on the coreboot fixture") {
  CnfFormula f = testsupport::coreboot();
  auto truth = oracle_strong_relations(f);
  CHECK(truth == extract_strong_relations(f));
  auto deps = truth.relations.at(*f.find("NO_GFX_INIT")).depends_on;
  CHECK(std::find(deps.begin(), deps.end(), *f.find("HAVE_VBE_LINEAR_FRAMEBUFFER")) != deps.end());
}

TEST_CASE("oracle equals extraction on random 15-variable formulas") {
  std::mt19937_64 rng(15);
  for (int i = 0; i < 60; ++i) {
    CnfFormula f = testsupport::random_satisfiable(rng, 15, 15, 2.5, 4.0);
    REQUIRE(oracle_strong_relations(f) == extract_strong_relations(f));
  }
}

TEST_CASE("validation of correct graphs") {
  CnfFormula f = testsupport::coreboot();
  StrongGraphs g = compute_strong_graphs(f);
  ValidationReport r = validate_model(f, g, full());
  CHECK(r.passed());
  CHECK(r.checked_nodes == g.nodes.size());
  CHECK(r.checked_arcs == g.dep_arcs.size());
  CHECK(r.checked_edges == 2 * g.conflict_edges.size());
  CHECK(r.checked_core == 3);
  // every claimed absence, counted from both sides of each relation
  std::size_t nc = g.nodes.size();
  CHECK(r.checked_absences == 2 * nc * (nc - 1) - g.dep_arcs.size() - 2 * g.conflict_edges.size());
}

TEST_CASE("injected bogus arc") {
  CnfFormula f = testsupport::coreboot();
  StrongGraphs g = compute_strong_graphs(f);
  Var a = *f.find("PCI"), b = *f.find("NO_GFX_INIT");
  g.dep_arcs.emplace_back(a, b);
  ValidationReport r = validate_model(f, g, full());
  REQUIRE(r.discrepancies.size() == 1);
  CHECK(r.discrepancies[0].kind == "arc");
  CHECK(r.discrepancies[0].features == std::vector<Var>{a, b});
}

TEST_CASE("corrupted core set") {
  CnfFormula f = testsupport::coreboot();
  StrongGraphs g = compute_strong_graphs(f);
  g.classification.core.push_back(*f.find("PCI"));
  ValidationReport r = validate_model(f, g, full());
  REQUIRE(r.discrepancies.size() == 1);
  CHECK(r.discrepancies[0].kind == "core");
}

TEST_CASE("every single mutation kind is detected exactly once") {
  std::mt19937_64 rng(2718);
  std::size_t applied = 0;
  for (int i = 0; i < 40; ++i) {
    CnfFormula f = mutations::structured_formula(rng, 14);
    StrongGraphs g = compute_strong_graphs(f);
    REQUIRE(validate_model(f, g, full()).passed());
    for (std::size_t which = 0; which < std::size(mutations::kNames); ++which) {
      auto m = mutations::mutate(g, which, rng);
      if (!m) continue;
      ++applied;
      ValidationReport r = validate_model(f, m->graphs, full());
      CAPTURE(m->name);
      REQUIRE(r.discrepancies.size() == 1);
      CHECK(r.discrepancies[0].kind == m->expected_kind);
    }
  }
  CHECK(applied > 250);
}

TEST_CASE("unclassified variables are reported") {
  CnfFormula f = testsupport::coreboot();
  StrongGraphs g = compute_strong_graphs(f);
  Var pci = *f.find("PCI");
  std::erase(g.nodes, pci);
  std::erase_if(g.dep_arcs, [&](const Arc& a) { return a.first == pci || a.second == pci; });
  ValidationReport r = validate_model(f, g, full());
  REQUIRE(r.discrepancies.size() == 1);
  CHECK(r.discrepancies[0].kind == "node");
  CHECK(r.discrepancies[0].actual == "unclassified");
}

TEST_CASE("sampling is reproducible and capped") {
  std::mt19937_64 rng(5);
  CnfFormula f = mutations::structured_formula(rng, 60);
  StrongGraphs g = compute_strong_graphs(f);
  ValidationOptions o;
  o.sample_size = 10;
  o.seed = 99;
  o.absence_checks = 5;
  ValidationReport a = validate_model(f, g, o);
  ValidationReport b = validate_model(f, g, o);
  CHECK(a.sampled_nodes == b.sampled_nodes);
  CHECK(a.checked_absences == b.checked_absences);
  CHECK(a.sampled_nodes.size() == std::min<std::size_t>(10, g.nodes.size()));
  o.jobs = 4;
  ValidationReport c = validate_model(f, g, o);
  CHECK(c.sampled_nodes == a.sampled_nodes);
  CHECK(c.checked_absences == a.checked_absences);
  o.seed = 100;
  o.jobs = 1;
  if (g.nodes.size() > 12) CHECK(validate_model(f, g, o).sampled_nodes != a.sampled_nodes);
}
