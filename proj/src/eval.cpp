#include "kp/eval.hpp"

#include <cassert>
#include <unordered_map>

#include "kp/checker.hpp"

namespace kp {

std::string to_string(Rule r) {
  switch (r) {
    case Rule::BetaImp: return "BetaImp";
    case Rule::ProjFst: return "ProjFst";
    case Rule::ProjSnd: return "ProjSnd";
    case Rule::DCaseL: return "DCaseL";
    case Rule::DCaseR: return "DCaseR";
    case Rule::SCompL: return "SCompL";
    case Rule::SCompR: return "SCompR";
    case Rule::SSelElab: return "SSelElab";
    case Rule::SplitRed2: return "SplitRed2";
  }
  return "?";
}

std::string to_string(CanonicalShape s) {
  switch (s) {
    case CanonicalShape::CInl: return "CInl";
    case CanonicalShape::CInr: return "CInr";
    case CanonicalShape::CPair: return "CPair";
    case CanonicalShape::CLam: return "CLam";
    case CanonicalShape::CNeutralAtomic: return "CNeutralAtomic";
  }
  return "?";
}

CanonicalShape classify(const Term& t) {
  switch (t->kind()) {
    case TermKind::Inl: return CanonicalShape::CInl;
    case TermKind::Inr: return CanonicalShape::CInr;
    case TermKind::Pair: return CanonicalShape::CPair;
    case TermKind::Lam: return CanonicalShape::CLam;
    default: return CanonicalShape::CNeutralAtomic;
  }
}

Term eta_expand_harrop(Formula c, const Term& seed) {
  assert(is_harrop(c));
  switch (c.kind()) {
    case FormulaKind::And:
      return tm::pair(eta_expand_harrop(c.left(), tm::fst(seed)),
                      eta_expand_harrop(c.right(), tm::snd(seed)));
    case FormulaKind::Imp: {
      std::string x = fresh_name("x", free_vars(seed));
      return tm::lam(x, c.left(), eta_expand_harrop(c.right(), tm::ap(seed, tm::var(x))));
    }
    default: return seed;
  }
}

std::optional<Term> split_red2_contract(const Term& t) {
  const auto* sel = t->get_if<node::SSel>();
  if (!sel) return std::nullopt;
  const auto* fn = sel->fun->get_if<node::Lam>();
  if (!fn) return std::nullopt;
  const Binder& z = fn->x;
  if (const auto* l = fn->body->get_if<node::Inl>()) {
    return tm::inl(tm::lam(z.name, z.type, l->arg), fm::imp(z.type, l->other));
  }
  if (const auto* r = fn->body->get_if<node::Inr>()) {
    return tm::inr(tm::lam(z.name, z.type, r->arg), fm::imp(z.type, r->other));
  }
  return std::nullopt;
}

namespace {

struct FuelOut {};

bool canonical(const Term& t) {
  auto k = t->kind();
  return k == TermKind::Lam || k == TermKind::Pair || k == TermKind::Inl || k == TermKind::Inr;
}

class Engine {
 public:
  Engine(const EvalOptions& opts) : opts_(opts), remaining_(opts.fuel) {}

  std::optional<StepResult> step(const Term& t, const Context& ctx) {
    Context local = ctx;
    TermPath path;
    auto found = find(t, local, path);
    if (!found) return std::nullopt;
    return StepResult{found->rule, std::move(found->position), std::move(found->after)};
  }

  bool spend() {
    if (remaining_ == 0) return false;
    --remaining_;
    return true;
  }

  std::size_t remaining() const { return remaining_; }

 private:
  struct Local {
    Rule rule;
    TermPath position;
    Term after;
  };

  struct Contraction {
    Rule rule;
    Term after;
  };

  [[noreturn]] static void stuck(const TermPath& path, const std::string& what) {
    throw EvalError(EvalError::Kind::StuckTerm, path, "stuck term at " + path_to_string(path) + ": " + what);
  }

  std::optional<Local> find(const Term& t, Context& ctx, TermPath& path) {
    if (auto c = contract(t, ctx, path)) return Local{c->rule, path, c->after};
    auto kids = children(t);
    for (std::size_t i = 0; i < kids.size(); ++i) {
      path.push_back(static_cast<int>(i));
      if (kids[i].bound) ctx.push(kids[i].bound->name, kids[i].bound->type);
      auto r = find(kids[i].term, ctx, path);
      if (kids[i].bound) ctx.pop();
      path.pop_back();
      if (r) {
        std::vector<Term> rebuilt;
        rebuilt.reserve(kids.size());
        for (const auto& k : kids) rebuilt.push_back(k.term);
        rebuilt[i] = std::move(r->after);
        r->after = with_children(t, rebuilt);
        return r;
      }
    }
    return std::nullopt;
  }

  std::optional<Contraction> contract(const Term& t, const Context& ctx, const TermPath& path) {
    switch (t->kind()) {
      case TermKind::Ap: {
        const auto& n = t->as<node::Ap>();
        if (const auto* f = n.fun->get_if<node::Lam>()) {
          return Contraction{Rule::BetaImp, subst_term(f->body, f->x.name, n.arg)};
        }
        if (canonical(n.fun)) stuck(path, "application of a non-function");
        return std::nullopt;
      }
      case TermKind::Fst:
      case TermKind::Snd: {
        const bool first = t->kind() == TermKind::Fst;
        const Term& arg = first ? t->as<node::Fst>().arg : t->as<node::Snd>().arg;
        if (const auto* p = arg->get_if<node::Pair>()) {
          return Contraction{first ? Rule::ProjFst : Rule::ProjSnd, first ? p->first : p->second};
        }
        if (canonical(arg)) stuck(path, "projection of a non-pair");
        return std::nullopt;
      }
      case TermKind::DCase: {
        const auto& n = t->as<node::DCase>();
        if (const auto* l = n.scrutinee->get_if<node::Inl>()) {
          return Contraction{Rule::DCaseL, subst_term(n.lbranch, n.left.name, l->arg)};
        }
        if (const auto* r = n.scrutinee->get_if<node::Inr>()) {
          return Contraction{Rule::DCaseR, subst_term(n.rbranch, n.right.name, r->arg)};
        }
        if (canonical(n.scrutinee)) stuck(path, "case analysis of a non-injection");
        return std::nullopt;
      }
      case TermKind::SCase: return contract_scase(t, ctx, path);
      case TermKind::SSel: {
        if (opts_.split_red2) {
          if (auto r = split_red2_contract(t)) return Contraction{Rule::SplitRed2, *r};
        }
        const auto& n = t->as<node::SSel>();
        Synthesis s = synth(ctx, n.fun);
        if (!s || !s.formula().is(FormulaKind::Imp) || !s.formula().right().is(FormulaKind::Or)) {
          stuck(path, "ssel of a term without type C -> A \\/ B");
        }
        Formula c = s.formula().left();
        Formula a = s.formula().right().left();
        Formula b = s.formula().right().right();
        std::string z = fresh_name("z", free_vars(n.fun));
        Term elaborated = tm::scase(z, c, tm::ap(n.fun, tm::var(z)),
                                    "x", fm::imp(c, a), tm::inl(tm::var("x"), fm::imp(c, b)),
                                    "y", fm::imp(c, b), tm::inr(tm::var("y"), fm::imp(c, a)));
        return Contraction{Rule::SSelElab, elaborated};
      }
      default: return std::nullopt;
    }
  }

  // scase z:C => c of inl-fn x => d | inr-fn y => e. The major premise is
  // normalized with z replaced by its Harrop eta-expansion; an injection
  // there fires the computation rule, anything else leaves the node neutral.
  std::optional<Contraction> contract_scase(const Term& t, const Context& ctx, const TermPath& path) {
    if (neutral_.count(t.get())) return std::nullopt;
    const auto& n = t->as<node::SCase>();
    Term seed = tm::var(n.z.name);
    Term expanded = eta_expand_harrop(n.z.type, seed);
    Term major = subst_term(n.major, n.z.name, expanded);
    Context inner = ctx.extended(n.z.name, n.z.type);
    Term value = normalize_inner(major, inner);
    if (const auto* l = value->get_if<node::Inl>()) {
      Term fn = tm::lam(n.z.name, n.z.type, l->arg);
      return Contraction{Rule::SCompL, subst_term(n.lbranch, n.x.name, fn)};
    }
    if (const auto* r = value->get_if<node::Inr>()) {
      Term fn = tm::lam(n.z.name, n.z.type, r->arg);
      return Contraction{Rule::SCompR, subst_term(n.rbranch, n.y.name, fn)};
    }
    if (canonical(value)) stuck(path, "scase major premise is not a disjunction");
    const auto& fv = n.major->free_vars();
    const bool only_z = fv.empty() || (fv.size() == 1 && fv.front() == n.z.name);
    if (only_z) {
      throw EvalError(EvalError::Kind::SCaseNonCanonical, path,
                      "scase major premise over a Harrop assumption normalized to non-canonical " +
                          to_string(value));
    }
    neutral_.emplace(t.get(), t);
    return std::nullopt;
  }

  Term normalize_inner(Term t, const Context& ctx) {
    for (;;) {
      auto r = step(t, ctx);
      if (!r) return t;
      if (!spend()) throw FuelOut{};
      t = std::move(r->after);
    }
  }

  EvalOptions opts_;
  std::size_t remaining_;
  // scase nodes already found neutral; the Term keeps the key alive.
  std::unordered_map<const TermNode*, Term> neutral_;
};

}  // namespace

std::optional<StepResult> step(const Term& t, const Context& ctx, const EvalOptions& opts) {
  Engine engine(opts);
  try {
    return engine.step(t, ctx);
  } catch (const FuelOut&) {
    throw EvalError(EvalError::Kind::StuckTerm, {}, "fuel exhausted while normalizing an scase major premise");
  }
}

ReductionTrace normalize(const Term& t, const Context& ctx, const EvalOptions& opts) {
  ReductionTrace trace;
  Engine engine(opts);
  Term current = t;
  try {
    for (;;) {
      auto r = engine.step(current, ctx);
      if (!r) {
        trace.outcome = ReductionTrace::Outcome::NormalForm;
        break;
      }
      if (!engine.spend()) {
        trace.outcome = ReductionTrace::Outcome::FuelExhausted;
        break;
      }
      trace.steps.push_back(TraceStep{r->rule, r->position, current, r->after});
      current = std::move(r->after);
    }
  } catch (const FuelOut&) {
    trace.outcome = ReductionTrace::Outcome::FuelExhausted;
  }
  trace.result = current;
  return trace;
}

}  // namespace kp
