#include "kp/transforms.hpp"

#include "kp/eval.hpp"

namespace kp {

std::string to_string(TransformRule r) {
  switch (r) {
    case TransformRule::SplitToS: return "split-to-s";
    case TransformRule::SToSplit: return "s-to-split";
    case TransformRule::SplitRed: return "split-red";
    case TransformRule::SplitRed2: return "split-red2";
  }
  return "?";
}

namespace {

Formula synth_or_throw(const Context& ctx, const Term& t) {
  Synthesis s = synth(ctx, t);
  if (!s) throw TransformError(s.error());
  return s.formula();
}

void require_harrop(Formula c) {
  if (!is_harrop(c)) {
    throw TransformError(CheckError{CheckErrorKind::HarropViolation, {}, std::nullopt, c,
                                    harrop_diagnosis(c)});
  }
}

void finish(TransformReport& r) {
  auto err = check_judgment(r.output.context, r.output.term, r.output.formula);
  if (err) throw std::logic_error("transform output failed to re-check: " + err->message());
  r.recheck = true;
}

}  // namespace

TransformReport split_to_s(const Context& ctx, const Term& f, Formula typeof_f) {
  Formula actual = synth_or_throw(ctx, f);
  if (actual != typeof_f) {
    throw TransformError(CheckError{CheckErrorKind::Mismatch, {}, typeof_f, actual, ""});
  }
  if (!typeof_f.is(FormulaKind::Imp) || !typeof_f.right().is(FormulaKind::Or)) {
    throw TransformError(CheckError{CheckErrorKind::Mismatch, {}, std::nullopt, typeof_f,
                                    "expected a type of the form C -> A \\/ B"});
  }
  Formula c = typeof_f.left();
  require_harrop(c);
  Formula ca = fm::imp(c, typeof_f.right().left());
  Formula cb = fm::imp(c, typeof_f.right().right());
  std::string z = fresh_name("z", free_vars(f));
  Term out = tm::scase(z, c, tm::ap(f, tm::var(z)), "x", ca, tm::inl(tm::var("x"), cb), "y", cb,
                       tm::inr(tm::var("y"), ca));
  TransformReport r{{ctx, f, typeof_f}, {ctx, out, fm::disj(ca, cb)}, TransformRule::SplitToS};
  finish(r);
  return r;
}

TransformReport s_to_split(const Context& ctx, const Binder& z, const Term& c,
                           const std::string& x, const Term& d, const std::string& y,
                           const Term& e) {
  require_harrop(z.type);
  Formula major = synth_or_throw(ctx.extended(z.name, z.type), c);
  if (!major.is(FormulaKind::Or)) {
    throw TransformError(CheckError{CheckErrorKind::NotADisjunction, {0}, std::nullopt, major, ""});
  }
  Formula ca = fm::imp(z.type, major.left());
  Formula cb = fm::imp(z.type, major.right());
  Term direct = tm::scase(z.name, z.type, c, x, ca, d, y, cb, e);
  Formula goal = synth_or_throw(ctx, direct);
  Term out = tm::dcase(tm::ssel(tm::lam(z.name, z.type, c)), x, ca, d, y, cb, e);
  TransformReport r{{ctx, direct, goal}, {ctx, out, goal}, TransformRule::SToSplit};
  finish(r);
  return r;
}

TransformReport s_to_split(const Context& ctx, const Term& scase) {
  const auto* n = scase->get_if<node::SCase>();
  if (!n) {
    throw TransformError(CheckError{CheckErrorKind::Mismatch, {}, std::nullopt, std::nullopt,
                                    "expected an scase term"});
  }
  return s_to_split(ctx, n->z, n->major, n->x.name, n->lbranch, n->y.name, n->rbranch);
}

std::optional<TransformReport> apply_split_red2(const Context& ctx, const Term& t) {
  auto out = split_red2_contract(t);
  if (!out) return std::nullopt;
  Formula f = synth_or_throw(ctx, t);
  TransformReport r{{ctx, t, f}, {ctx, *out, f}, TransformRule::SplitRed2};
  finish(r);
  return r;
}

}  // namespace kp
