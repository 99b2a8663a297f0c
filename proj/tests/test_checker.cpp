#include "doctest.h"
#include "gen.hpp"
#include "kp/checker.hpp"
#include "kp/parser.hpp"

using namespace kp;

namespace {

Formula P(const char* s) { return parse_formula(s); }
Term T(const char* s) { return parse_term(s); }

const char* kGolden =
    "\\f:(p->(q\\/r)). scase z:p => f z of inl-fn x:(p->q) => inl[p->r] x | inr-fn y:(p->r) => inr[p->q] y";
const char* kGoldenDisj =
    "\\f:(s\\/t->(q\\/r)). scase z:s\\/t => f z of inl-fn x:(s\\/t->q) => inl[s\\/t->r] x "
    "| inr-fn y:(s\\/t->r) => inr[s\\/t->q] y";

CheckError err(const Context& ctx, const char* t) {
  Synthesis s = synth(ctx, T(t));
  REQUIRE_FALSE(s.ok());
  return s.error();
}

}  // namespace

TEST_SUITE("checker") {

TEST_CASE("synthesis: worked examples") {
  CHECK(synth({}, T(kGolden)).formula() == P("(p -> (q \\/ r)) -> ((p -> q) \\/ (p -> r))"));
  CheckError e = err({}, kGoldenDisj);
  CHECK(e.kind == CheckErrorKind::HarropViolation);
  REQUIRE(e.actual);
  CHECK(*e.actual == P("s \\/ t"));
  CHECK(synth({}, T("\\x:p. x")).formula() == P("p -> p"));
  CHECK(synth({}, T("\\f:(p->(q\\/r)). ssel f")).formula() ==
        P("(p -> (q \\/ r)) -> ((p -> q) \\/ (p -> r))"));
}

TEST_CASE("check_judgment") {
  CHECK_FALSE(check_judgment({}, T("\\x:p. x"), P("p -> p")));
  auto e = check_judgment({}, T("\\x:p. x"), P("p -> q"));
  REQUIRE(e);
  CHECK(e->kind == CheckErrorKind::Mismatch);
  CHECK(*e->expected == P("p -> q"));
  CHECK(*e->actual == P("p -> p"));
  auto e2 = check_judgment({{"z", P("p")}}, T("inl[r] z"), P("q \\/ r"));
  REQUIRE(e2);
  CHECK(e2->kind == CheckErrorKind::Mismatch);
  CHECK(*e2->actual == P("p \\/ r"));
}

TEST_CASE("every IPC rule") {
  Context ctx{{"a", P("p")}, {"b", P("q")}, {"d", P("p /\\ q")}, {"o", P("p \\/ q")}, {"bot", fm::falsum()}};
  CHECK(synth(ctx, T("(a, b)")).formula() == P("p /\\ q"));
  CHECK(synth(ctx, T("fst d")).formula() == P("p"));
  CHECK(synth(ctx, T("snd d")).formula() == P("q"));
  CHECK(synth(ctx, T("inr[r] b")).formula() == P("r \\/ q"));
  CHECK(synth(ctx, T("case o of inl x:p => inr[q] x | inr y:q => inl[p] y")).formula() == P("q \\/ p"));
  CHECK(synth(ctx, T("abort[r -> r] bot")).formula() == P("r -> r"));
  CHECK(synth(ctx, T("(\\x:p. x) a")).formula() == P("p"));
  CHECK(synth(ctx, T("a")).formula() == P("p"));
}

TEST_CASE("errors name their kind and path") {
  Context ctx{{"a", P("p")}, {"o", P("p \\/ q")}, {"f", P("p -> q")}};
  CheckError e = err(ctx, "g");
  CHECK(e.kind == CheckErrorKind::UnboundVariable);
  CHECK(path_to_string(e.path) == "root");
  CHECK(err(ctx, "a a").kind == CheckErrorKind::NotAFunction);
  CHECK(err(ctx, "f f").kind == CheckErrorKind::Mismatch);
  CHECK(err(ctx, "fst a").kind == CheckErrorKind::NotAPair);
  CHECK(err(ctx, "case a of inl x:p => x | inr y:q => y").kind == CheckErrorKind::NotADisjunction);
  CHECK(err(ctx, "case o of inl x:q => x | inr y:q => y").kind == CheckErrorKind::AnnotationClash);
  CHECK(err(ctx, "case o of inl x:p => x | inr y:q => y").kind == CheckErrorKind::BranchTypeClash);
  CHECK(err(ctx, "abort[q] a").kind == CheckErrorKind::Mismatch);
  CheckError deep = err(ctx, "\\x:p. (x, fst x)");
  CHECK(deep.kind == CheckErrorKind::NotAPair);
  CHECK(path_to_string(deep.path) == "0.1");
}

TEST_CASE("scase rule") {
  Context ctx{{"f", P("p -> q \\/ r")}};
  CHECK(synth(ctx, T("scase z:p => f z of inl-fn x:p->q => x | inr-fn y:p->r => f")).ok() == false);
  CHECK(err(ctx, "scase z:p => f z of inl-fn x:p->q => inl[p->r] x | inr-fn y:p->q => inr[p->q] y")
            .kind == CheckErrorKind::AnnotationClash);
  CHECK(err(ctx, "scase z:p => z of inl-fn x:p->q => x | inr-fn y:p->r => y").kind ==
        CheckErrorKind::NotADisjunction);
  CHECK(err(ctx, "scase z:p => f z of inl-fn x:p->q => x | inr-fn y:p->r => y").kind ==
        CheckErrorKind::BranchTypeClash);
  // z is bound in the major premise only.
  CHECK(err(ctx, "scase z:p => f z of inl-fn x:p->q => z | inr-fn y:p->r => z").kind ==
        CheckErrorKind::UnboundVariable);
  CHECK(err({{"g", P("(q \\/ r) -> p \\/ q")}}, "ssel g").kind == CheckErrorKind::HarropViolation);
  CHECK(err({{"g", P("p -> q")}}, "ssel g").kind == CheckErrorKind::NotADisjunction);
}

TEST_CASE("harrop gate under fuzzing") {
  kptest::TermGen g(41);
  int rejected = 0;
  for (int i = 0; i < 500; ++i) {
    Formula c = g.formula(3);
    if (is_harrop(c)) continue;
    Formula a = g.formula(2), b = g.formula(2);
    Context ctx{{"f", fm::imp(c, fm::disj(a, b))}};
    Formula ca = fm::imp(c, a), cb = fm::imp(c, b);
    Term sc = tm::scase("z", c, tm::ap(tm::var("f"), tm::var("z")), "x", ca, tm::inl(tm::var("x"), cb),
                        "y", cb, tm::inr(tm::var("y"), ca));
    Synthesis s = synth(ctx, sc);
    REQUIRE_FALSE(s.ok());
    CHECK(s.error().kind == CheckErrorKind::HarropViolation);
    CHECK(*s.error().actual == c);
    Synthesis s2 = synth(ctx, tm::ssel(tm::var("f")));
    REQUIRE_FALSE(s2.ok());
    CHECK(s2.error().kind == CheckErrorKind::HarropViolation);
    ++rejected;
  }
  CHECK(rejected > 100);
}

TEST_CASE("determinism, weakening and substitution over generated terms") {
  kptest::TermGen g(42);
  int checked = 0;
  for (int i = 0; i < 300; ++i) {
    Formula goal = i % 3 ? g.theorem() : g.split_formula();
    auto t = g.term({}, goal);
    REQUIRE(t);
    REQUIRE_FALSE(check_judgment({}, *t, goal));
    CHECK(synth({}, *t).formula() == synth({}, *t).formula());
    Context weak{{"unused_w", g.formula(3)}};
    CHECK_FALSE(check_judgment(weak, *t, goal));
    // Substitution: abstract over a fresh hypothesis of a theorem type.
    Formula a = g.theorem();
    Context hyp{{"h0", a}};
    auto body = g.term(hyp, goal);
    auto arg = g.term({}, a);
    REQUIRE(body);
    REQUIRE(arg);
    REQUIRE_FALSE(check_judgment(hyp, *body, goal));
    CHECK_FALSE(check_judgment({}, subst_term(*body, "h0", *arg), goal));
    ++checked;
  }
  CHECK(checked == 300);
}

TEST_CASE("error messages") {
  CheckError e = err({}, kGoldenDisj);
  CHECK(e.message().find("HarropViolation") != std::string::npos);
  CHECK(to_string(CheckErrorKind::Mismatch) == "Mismatch");
}

}
