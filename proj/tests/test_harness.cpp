#include "doctest.h"
#include "kp/harness.hpp"
#include "kp/parser.hpp"
#include "kp/prover.hpp"

#include <set>

using namespace kp;

namespace {

// Size of the depth-bounded formula grammar, by direct recursion (an
// independent check on the closed form).
std::uint64_t grammar_count(int atoms, int depth) {
  if (depth <= 0) return 0;
  if (depth == 1) return atoms + 1;
  std::uint64_t below = grammar_count(atoms, depth - 1);
  return atoms + 1 + 3 * below * below;
}

SweepConfig cfg(Property p, int atoms, int depth) {
  SweepConfig c;
  c.property = p;
  c.atoms = atoms;
  c.max_depth = depth;
  return c;
}

}  // namespace

TEST_SUITE("harness") {

TEST_CASE("enumeration examples") {
  auto d1 = enumerate_formulas(1, 1);
  REQUIRE(d1.size() == 2);
  CHECK(d1[0] == fm::atom("p"));
  CHECK(d1[1] == fm::falsum());
  auto d2 = enumerate_formulas(1, 2);
  std::set<Formula> s(d2.begin(), d2.end());
  for (const char* f : {"p /\\ p", "p \\/ p", "p -> p", "~p", "_|_ -> p", "_|_ /\\ _|_"}) {
    CHECK(s.count(parse_formula(f)) == 1);
  }
  CHECK(d2.size() == 14);
  CHECK(enumerate_formulas(2, 2).size() == 30);
  CHECK(enumerate_formulas(2, 3).size() == 2703);
  for (int a = 1; a <= 3; ++a) {
    for (int d = 1; d <= 3; ++d) {
      auto fs = enumerate_formulas(a, d);
      CHECK(fs.size() == grammar_count(a, d));
      CHECK(count_formulas(a, d) == grammar_count(a, d));
      std::set<Formula> uniq(fs.begin(), fs.end());
      CHECK(uniq.size() == fs.size());
      for (Formula f : fs) CHECK(f.depth() <= d);
    }
  }
  CHECK(enumerate_formulas(2, 3) == enumerate_formulas(2, 3));
}

TEST_CASE("kripke bank") {
  KripkeBank bank(1, 2);
  CHECK(bank.valid(bank.truth(parse_formula("p -> p"))));
  CHECK_FALSE(bank.valid(bank.truth(parse_formula("p \\/ ~p"))));
  CHECK_FALSE(bank.valid(bank.truth(parse_formula("~~p -> p"))));
  KripkeBank big(2, 4);
  CHECK_FALSE(big.valid(big.truth(parse_formula("((p -> q) -> p) -> p"))));
  CHECK_FALSE(big.valid(big.truth(parse_formula("(p -> q) \\/ (q -> p)"))));
  CHECK(big.valid(big.truth(parse_formula("~~(p \\/ ~p)"))));
}

TEST_CASE("sweeps at small scale") {
  for (Property p : {Property::SplitAdmissibility, Property::DisjunctionProperty,
                     Property::HarropSelfSlash}) {
    SweepReport r = run_sweep(cfg(p, 1, 2));
    CHECK(r.counterexample_total == 0);
    CHECK(r.instances_checked > 0);
  }
  CHECK(sweep_split_admissibility(cfg(Property::HarropSelfSlash, 1, 2)).property ==
        Property::SplitAdmissibility);
}

TEST_CASE("class reduction agrees with brute force") {
  for (int atoms : {1, 2}) {
    for (bool filter : {true, false}) {
      SweepConfig c = cfg(Property::SplitAdmissibility, atoms, 2);
      c.harrop_filter = filter;
      SweepReport fast = run_sweep(c);
      c.brute = true;
      SweepReport slow = run_sweep(c);
      CHECK(slow.mode == SweepMode::Brute);
      CHECK(fast.instances_checked == slow.instances_checked);
      CHECK(fast.theorems == slow.theorems);
      CHECK(fast.counterexample_total == slow.counterexample_total);
    }
  }
  for (int atoms : {1, 2}) {
    SweepConfig c = cfg(Property::DisjunctionProperty, atoms, 2);
    SweepReport fast = run_sweep(c);
    c.brute = true;
    SweepReport slow = run_sweep(c);
    CHECK(fast.instances_checked == slow.instances_checked);
    CHECK(fast.theorems == slow.theorems);
    CHECK(fast.slash_agreements == slow.slash_agreements);
  }
}

TEST_CASE("negative control finds the non-Harrop counterexamples") {
  SweepConfig c = cfg(Property::SplitAdmissibility, 2, 2);
  c.harrop_filter = false;
  SweepReport r = run_sweep(c);
  CHECK(r.counterexample_total > 0);
  Prover pr;
  for (const auto& cx : r.counterexamples) {
    REQUIRE(cx.formulas.size() == 3);
    Formula C = cx.formulas[0], A = cx.formulas[1], B = cx.formulas[2];
    CHECK_FALSE(is_harrop(C));
    CHECK(pr.provable(fm::imp(C, fm::disj(A, B))));
    CHECK_FALSE(pr.provable(fm::disj(fm::imp(C, A), fm::imp(C, B))));
  }
}

TEST_CASE("determinism and sampled mode") {
  SweepConfig c = cfg(Property::DisjunctionProperty, 3, 3);
  c.seed = 9;
  c.samples = 300;
  SweepReport a = run_sweep(c), b = run_sweep(c);
  CHECK(a.mode == SweepMode::Sampled);
  CHECK(a.instances_checked == 300);
  CHECK(a.theorems == b.theorems);
  CHECK(a.counterexample_total == 0);
  CHECK(a.slash_agreements == a.theorems);
  SweepConfig s = cfg(Property::SplitAdmissibility, 3, 4);
  s.samples = 200;
  SweepReport sr = run_sweep(s);
  CHECK(sr.counterexample_total == 0);
  SweepReport e1 = run_sweep(cfg(Property::SplitAdmissibility, 2, 2));
  SweepReport e2 = run_sweep(cfg(Property::SplitAdmissibility, 2, 2));
  CHECK(e1.instances_checked == e2.instances_checked);
  CHECK(e1.theorems == e2.theorems);
}

TEST_CASE("property names") {
  CHECK(parse_property("split-admissibility") == Property::SplitAdmissibility);
  CHECK(parse_property("dp") == Property::DisjunctionProperty);
  CHECK(parse_property("harrop-self-slash") == Property::HarropSelfSlash);
  CHECK_FALSE(parse_property("nonsense"));
  CHECK(atom_name(0) == "p");
  CHECK(atom_name(7) == "p7");
}

}
