#include "doctest.h"
#include "gen.hpp"
#include "kp/checker.hpp"
#include "kp/eval.hpp"
#include "kp/parser.hpp"
#include "oracle.hpp"

using namespace kp;

namespace {

Formula P(const char* s) { return parse_formula(s); }
Term T(const char* s) { return parse_term(s); }

const char* kGolden =
    "\\f:(p->(q\\/r)). scase z:p => f z of inl-fn x:(p->q) => inl[p->r] x | inr-fn y:(p->r) => inr[p->q] y";

}  // namespace

TEST_SUITE("eval") {

TEST_CASE("step: worked examples") {
  // With x annotated p->p so that the instance is well typed.
  Term sc = T("scase z:p => inl[r] z of inl-fn x:(p->p) => inl[p->r] x | inr-fn y:(p->r) => inr[p->p] y");
  auto s = step(sc);
  REQUIRE(s);
  CHECK(s->rule == Rule::SCompL);
  CHECK(alpha_equal(s->after, T("inl[p->r] (\\z:p. z)")));
  auto s2 = step(T("fst (a, b)"));
  REQUIRE(s2);
  CHECK(s2->rule == Rule::ProjFst);
  CHECK(alpha_equal(s2->after, T("a")));
  Context ctx{{"f", P("p -> q \\/ r")}};
  auto s3 = step(T("ssel f"), ctx);
  REQUIRE(s3);
  CHECK(s3->rule == Rule::SSelElab);
  REQUIRE(s3->after->kind() == TermKind::SCase);
  const auto& n = s3->after->as<node::SCase>();
  CHECK(alpha_equal(n.major, tm::ap(tm::var("f"), tm::var(n.z.name))));
  CHECK(n.x.type == P("p -> q"));
  CHECK(n.y.type == P("p -> r"));
  CHECK(synth(ctx, s3->after).formula() == P("(p -> q) \\/ (p -> r)"));
}

TEST_CASE("normalize: worked examples") {
  Context ctx{{"y", P("p")}};
  ReductionTrace t1 = normalize(T("(\\x:p. x) y"), ctx);
  CHECK(t1.normal());
  CHECK(t1.steps.size() == 1);
  CHECK(alpha_equal(t1.result, T("y")));
  ReductionTrace t2 = normalize(tm::ap(T(kGolden), T("\\z:p. inl[r] z")));
  CHECK(t2.normal());
  CHECK(alpha_equal(t2.result, T("inl[p->r] (\\z:p. z)")));
  ReductionTrace t3 = normalize(T("ssel (\\z:p. inl[r] z)"));
  CHECK(t3.normal());
  CHECK(alpha_equal(t3.result, T("inl[p->r] (\\z:p. z)")));
  CHECK(t3.steps.front().rule == Rule::SSelElab);
  ReductionTrace t4 = normalize(T("ssel (\\z:p. inl[r] z)"), {}, EvalOptions{kDefaultFuel, true});
  CHECK(t4.steps.size() == 1);
  CHECK(t4.steps.front().rule == Rule::SplitRed2);
  CHECK(alpha_equal(t4.result, t3.result));
}

TEST_CASE("reduction rules") {
  CHECK(step(T("snd (a, b)"))->rule == Rule::ProjSnd);
  auto l = step(T("case inl[q] a of inl x:p => x | inr y:q => y"));
  CHECK(l->rule == Rule::DCaseL);
  CHECK(alpha_equal(l->after, T("a")));
  auto r = step(T("case inr[p] b of inl x:p => x | inr y:q => y"));
  CHECK(r->rule == Rule::DCaseR);
  CHECK(alpha_equal(r->after, T("b")));
  auto sr = step(T("scase z:p => inr[q] z of inl-fn x:p->q => inl[p->p] x | inr-fn y:p->p => inr[p->q] y"));
  CHECK(sr->rule == Rule::SCompR);
  CHECK(alpha_equal(sr->after, T("inr[p->q] (\\z:p. z)")));
  CHECK_FALSE(step(T("abort[p] h")));
  CHECK_FALSE(step(T("\\x:p. f x")));
}

TEST_CASE("leftmost-outermost order and paths") {
  ReductionTrace t = normalize(T("((\\x:p. x) a, (\\y:p. y) b)"));
  REQUIRE(t.steps.size() == 2);
  CHECK(path_to_string(t.steps[0].position) == "0");
  CHECK(path_to_string(t.steps[1].position) == "1");
  // The outer redex contracts before the inner one in its argument.
  ReductionTrace u = normalize(T("(\\x:p. x) ((\\y:p. y) a)"));
  REQUIRE(u.steps.size() == 2);
  CHECK(path_to_string(u.steps[0].position) == "root");
  for (std::size_t i = 0; i + 1 < u.steps.size(); ++i) CHECK(u.steps[i].after == u.steps[i + 1].before);
}

TEST_CASE("stuck terms and fuel") {
  CHECK_THROWS_AS(step(T("fst (\\x:p. x)")), EvalError);
  CHECK_THROWS_AS(step(T("(a, b) c")), EvalError);
  CHECK_THROWS_AS(step(T("case (a, b) of inl x:p => x | inr y:p => y")), EvalError);
  try {
    step(T("(inl[q] a) b"));
    FAIL("expected StuckTerm");
  } catch (const EvalError& e) {
    CHECK(e.kind() == EvalError::Kind::StuckTerm);
  }
  // Self-application is ill-typed but exercises the fuel guard.
  Term omega = T("(\\x:p. x x) (\\x:p. x x)");
  ReductionTrace t = normalize(omega, 50);
  CHECK_FALSE(t.normal());
  CHECK(t.steps.size() == 50);
}

TEST_CASE("scase with an open non-Harrop dependency stays neutral") {
  Context ctx{{"w", P("q \\/ r")}};
  Term sc = T("scase z:p => w of inl-fn x:p->q => inl[p->r] x | inr-fn y:p->r => inr[p->q] y");
  REQUIRE(synth(ctx, sc).ok());
  CHECK_FALSE(step(sc, ctx));
  CHECK(classify(sc) == CanonicalShape::CNeutralAtomic);
  // A redex inside a branch of the neutral scase still fires.
  Term sc2 = T("scase z:p => w of inl-fn x:p->q => (\\u:p->q. inl[p->r] u) x | inr-fn y:p->r => inr[p->q] y");
  auto s = step(sc2, ctx);
  REQUIRE(s);
  CHECK(path_to_string(s->position) == "1");
}

TEST_CASE("eta expansion at Harrop types") {
  CHECK(alpha_equal(eta_expand_harrop(P("p"), T("z")), T("z")));
  CHECK(alpha_equal(eta_expand_harrop(P("p /\\ q"), T("z")), T("(fst z, snd z)")));
  Term e = eta_expand_harrop(P("(q \\/ r) -> p"), T("z"));
  CHECK(alpha_equal(e, T("\\x:(q \\/ r). z x")));
  kptest::TermGen g(17);
  for (int i = 0; i < 300; ++i) {
    Formula c = g.harrop();
    Context ctx{{"z", c}};
    Term t = eta_expand_harrop(c, tm::var("z"));
    CHECK_FALSE(check_judgment(ctx, t, c));
    CHECK(oracle::same(t, oracle::nf(t)));
  }
}

TEST_CASE("split_red2 contraction") {
  CHECK(alpha_equal(*split_red2_contract(T("ssel (\\z:p. inl[r] z)")), T("inl[p->r] (\\z:p. z)")));
  CHECK(alpha_equal(*split_red2_contract(T("ssel (\\z:p. inr[q] z)")), T("inr[p->q] (\\z:p. z)")));
  CHECK_FALSE(split_red2_contract(T("ssel f")));
  CHECK_FALSE(split_red2_contract(T("f")));
}

TEST_CASE("classify") {
  CHECK(classify(T("inl[r] (\\z:p. z)")) == CanonicalShape::CInl);
  CHECK(classify(T("inr[r] a")) == CanonicalShape::CInr);
  CHECK(classify(T("(a, b)")) == CanonicalShape::CPair);
  CHECK(classify(T("\\x:p. x")) == CanonicalShape::CLam);
  CHECK(classify(T("f z")) == CanonicalShape::CNeutralAtomic);
  CHECK(to_string(CanonicalShape::CInl) == "CInl");
}

TEST_CASE("library normal forms agree with the oracle") {
  kptest::TermGen g(23, kptest::GenOptions{4, true, false});
  for (int i = 0; i < 300; ++i) {
    Formula goal = g.theorem();
    auto t = g.term({}, goal);
    REQUIRE(t);
    ReductionTrace tr = normalize(*t);
    REQUIRE(tr.normal());
    CHECK_MESSAGE(oracle::same(tr.result, oracle::nf(*t)), to_string(*t));
  }
}

TEST_CASE("determinism of traces") {
  kptest::TermGen g(29);
  for (int i = 0; i < 100; ++i) {
    auto t = g.term({}, g.split_formula());
    REQUIRE(t);
    ReductionTrace a = normalize(*t), b = normalize(*t);
    REQUIRE(a.steps.size() == b.steps.size());
    for (std::size_t k = 0; k < a.steps.size(); ++k) {
      CHECK(a.steps[k].rule == b.steps[k].rule);
      CHECK(a.steps[k].position == b.steps[k].position);
      CHECK(to_string(a.steps[k].after) == to_string(b.steps[k].after));
    }
  }
}

}
