#include "doctest.h"
#include "gen.hpp"
#include "kp/checker.hpp"
#include "kp/harness.hpp"
#include "kp/parser.hpp"
#include "kp/prover.hpp"

using namespace kp;

namespace {

Formula P(const char* s) { return parse_formula(s); }

bool provable(const char* s) { return prove(Sequent{{}, P(s)}).provable; }

}  // namespace

TEST_SUITE("prover") {

TEST_CASE("worked examples") {
  ProofResult id = prove(Sequent{{}, P("p -> p")});
  REQUIRE(id.provable);
  CHECK(alpha_equal(id.witness, parse_term("\\x:p. x")));
  CHECK_FALSE(provable("p \\/ ~p"));
  CHECK_FALSE(provable("(p -> (q \\/ r)) -> ((p -> q) \\/ (p -> r))"));
  ProofResult nn = prove(Sequent{{}, P("~~(p \\/ ~p)")});
  REQUIRE(nn.provable);
  CHECK_FALSE(check_judgment({}, nn.witness, P("~~(p \\/ ~p)")));
}

TEST_CASE("extraction examples") {
  ProofResult swap = prove(Sequent{{P("p /\\ q")}, P("q /\\ p")});
  REQUIRE(swap.provable);
  CHECK(alpha_equal(swap.witness, parse_term("(snd h, fst h)")));
  ProofResult efq = prove(Sequent{{fm::falsum()}, P("p")});
  REQUIRE(efq.provable);
  CHECK(alpha_equal(efq.witness, parse_term("abort[p] h")));
  Prover pr;
  Context ctx{{"a", P("p")}, {"f", P("p -> q")}};
  ProofResult app = pr.prove(ctx, P("q"));
  REQUIRE(app.provable);
  CHECK_FALSE(check_judgment(ctx, app.witness, P("q")));
}

TEST_CASE("known-answer battery") {
  CHECK_FALSE(provable("((p -> q) -> p) -> p"));
  CHECK_FALSE(provable("~~p -> p"));
  CHECK(provable("p -> ~~p"));
  CHECK(provable("~~(p \\/ ~p)"));
  CHECK_FALSE(provable("~(p /\\ q) -> ~p \\/ ~q"));
  CHECK(provable("~p \\/ ~q -> ~(p /\\ q)"));
  CHECK(provable("~(p \\/ q) -> ~p /\\ ~q"));
  CHECK(provable("~~~p -> ~p"));
  CHECK_FALSE(provable("(p -> q) \\/ (q -> p)"));
  CHECK(provable("(p -> q -> r) -> (p /\\ q -> r)"));
  CHECK(provable("((p \\/ q) -> r) -> (p -> r) /\\ (q -> r)"));
  CHECK(provable("~~(((p -> q) -> p) -> p)"));
  CHECK_FALSE(provable("(~p -> q \\/ r) -> (~p -> q) \\/ (~p -> r)"));
  CHECK(provable("_|_ -> p"));
  CHECK_FALSE(provable("_|_"));
  CHECK_FALSE(provable("p"));
}

TEST_CASE("soundness loop and monotonicity over a fuzzed corpus") {
  kptest::TermGen g(7);
  Prover pr;
  int proved = 0;
  for (int i = 0; i < 3000; ++i) {
    Formula f = g.formula(4, 3);
    std::vector<Formula> ants;
    if (i % 2) ants.push_back(g.formula(3, 3));
    ProofResult r = pr.prove(Sequent{ants, f});
    CHECK(r.provable == pr.provable(ants, f));
    if (!r.provable) continue;
    ++proved;
    Context ctx;
    if (ants.size() == 1) ctx.push("h", ants[0]);
    CHECK_FALSE(check_judgment(ctx, r.witness, f));
    auto more = ants;
    more.push_back(g.formula(3, 3));
    CHECK(pr.provable(more, f));
  }
  CHECK(proved > 300);
}

TEST_CASE("determinism") {
  kptest::TermGen g(8);
  for (int i = 0; i < 200; ++i) {
    Formula f = g.formula(4);
    ProofResult a = prove(Sequent{{}, f}), b = prove(Sequent{{}, f});
    CHECK(a.provable == b.provable);
    if (a.provable) CHECK(to_string(a.witness) == to_string(b.witness));
  }
}

TEST_CASE("canonical antecedents and sequent printing") {
  auto c = canonical_antecedents({P("q"), P("p"), P("q")});
  CHECK(c.size() == 2);
  CHECK(to_string(Sequent{{P("p"), P("q")}, P("p /\\ q")}) == "p, q |- p /\\ q");
}

TEST_CASE("agreement with the Kripke bank on refutations") {
  KripkeBank bank(2, 4);
  for (Formula f : enumerate_formulas(2, 3)) {
    if (!bank.valid(bank.truth(f))) CHECK_FALSE(provable(to_string(f).c_str()));
  }
}

}
