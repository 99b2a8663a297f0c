#include "kp/slash.hpp"

namespace kp {

namespace {

std::vector<std::uint32_t> context_key(const std::vector<Formula>& ctx) {
  std::vector<std::uint32_t> key;
  for (Formula f : canonical_antecedents(ctx)) key.push_back(f.id());
  return key;
}

}  // namespace

bool SlashEngine::derivable(const std::vector<Formula>& ctx, Formula f,
                            std::vector<ProvabilityCall>* calls) {
  bool ok = prover().provable(ctx, f);
  if (calls) calls->push_back({Sequent{ctx, f}, ok});
  return ok;
}

SlashNode SlashEngine::build(const std::vector<Formula>& ctx, Formula f,
                             std::vector<ProvabilityCall>& calls) {
  SlashNode n;
  n.formula = f;
  switch (f.kind()) {
    case FormulaKind::Atom:
    case FormulaKind::Falsum:
      n.clause = f.is(FormulaKind::Atom) ? "atom" : "falsum";
      n.derivable = derivable(ctx, f, &calls);
      n.holds = *n.derivable;
      break;
    case FormulaKind::And:
    case FormulaKind::Or: {
      n.clause = f.is(FormulaKind::And) ? "and" : "or";
      n.children.push_back(build(ctx, f.left(), calls));
      n.children.push_back(build(ctx, f.right(), calls));
      const bool l = n.children[0].holds, r = n.children[1].holds;
      n.holds = f.is(FormulaKind::And) ? (l && r) : (l || r);
      break;
    }
    case FormulaKind::Imp: {
      n.clause = "imp";
      n.derivable = derivable(ctx, f, &calls);
      n.children.push_back(build(ctx, f.left(), calls));
      n.children.push_back(build(ctx, f.right(), calls));
      n.holds = *n.derivable && (!n.children[0].holds || n.children[1].holds);
      break;
    }
  }
  return n;
}

SlashVerdict SlashEngine::slash_formula(const std::vector<Formula>& ctx, Formula f) {
  SlashVerdict v;
  v.trace = build(ctx, f, v.provability_calls);
  v.holds = v.trace.holds;
  return v;
}

bool SlashEngine::holds(const std::vector<Formula>& ctx, Formula f) {
  auto key = std::make_pair(context_key(ctx), f.id());
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  bool result = false;
  switch (f.kind()) {
    case FormulaKind::Atom:
    case FormulaKind::Falsum: result = derivable(ctx, f, nullptr); break;
    case FormulaKind::And: result = holds(ctx, f.left()) && holds(ctx, f.right()); break;
    case FormulaKind::Or: result = holds(ctx, f.left()) || holds(ctx, f.right()); break;
    case FormulaKind::Imp:
      result = derivable(ctx, f, nullptr) && (!holds(ctx, f.left()) || holds(ctx, f.right()));
      break;
  }
  memo_.emplace(std::move(key), result);
  return result;
}

SlashVerdict slash_formula(const std::vector<Formula>& ctx, Formula f) {
  SlashEngine engine;
  return engine.slash_formula(ctx, f);
}

// ---------------------------------------------------------------------------
// Canonical inhabitants

namespace {

class Enumerator {
 public:
  Enumerator(std::size_t limit, bool* truncated) : limit_(limit), truncated_(truncated) {}

  std::vector<Term> inhabitants(Context& ctx, Formula f, int depth) {
    std::vector<Term> out;
    if (depth <= 0) {
      *truncated_ = true;
      return out;
    }
    switch (f.kind()) {
      case FormulaKind::Imp: {
        std::string x = fresh_name("v", ctx.names());
        ctx.push(x, f.left());
        for (Term& body : inhabitants(ctx, f.right(), depth - 1)) {
          add(out, tm::lam(x, f.left(), body));
        }
        ctx.pop();
        break;
      }
      case FormulaKind::And: {
        auto ls = inhabitants(ctx, f.left(), depth - 1);
        auto rs = ls.empty() ? std::vector<Term>{} : inhabitants(ctx, f.right(), depth - 1);
        for (const Term& l : ls) {
          for (const Term& r : rs) add(out, tm::pair(l, r));
        }
        break;
      }
      case FormulaKind::Or:
        for (Term& l : inhabitants(ctx, f.left(), depth - 1)) add(out, tm::inl(l, f.right()));
        for (Term& r : inhabitants(ctx, f.right(), depth - 1)) add(out, tm::inr(r, f.left()));
        break;
      default: break;
    }
    const auto items = ctx.items();
    for (const auto& [name, type] : items) {
      spines(ctx, tm::var(name), type, f, depth - 1, out);
    }
    return out;
  }

 private:
  void add(std::vector<Term>& out, Term t) {
    if (out.size() >= limit_) {
      *truncated_ = true;
      return;
    }
    out.push_back(std::move(t));
  }

  // Elimination spines from head e : type reaching target.
  void spines(Context& ctx, const Term& e, Formula type, Formula target, int depth,
              std::vector<Term>& out) {
    if (type == target) add(out, e);
    if (depth <= 0) {
      if (type != target && !type.is(FormulaKind::Atom)) *truncated_ = true;
      return;
    }
    switch (type.kind()) {
      case FormulaKind::And:
        spines(ctx, tm::fst(e), type.left(), target, depth - 1, out);
        spines(ctx, tm::snd(e), type.right(), target, depth - 1, out);
        break;
      case FormulaKind::Imp:
        for (Term& arg : inhabitants(ctx, type.left(), depth - 1)) {
          spines(ctx, tm::ap(e, arg), type.right(), target, depth - 1, out);
        }
        break;
      case FormulaKind::Or: {
        std::string x = fresh_name("v", ctx.names());
        ctx.push(x, type.left());
        auto ls = inhabitants(ctx, target, depth - 1);
        ctx.pop();
        if (ls.empty()) break;
        ctx.push(x, type.right());
        auto rs = inhabitants(ctx, target, depth - 1);
        ctx.pop();
        for (const Term& l : ls) {
          for (const Term& r : rs) add(out, tm::dcase(e, x, type.left(), l, x, type.right(), r));
        }
        break;
      }
      case FormulaKind::Falsum:
        if (target != type) add(out, tm::abort_to(e, target));
        break;
      default: break;
    }
  }

  std::size_t limit_;
  bool* truncated_;
};

class Auditor {
 public:
  explicit Auditor(AuditReport& report) : report_(report) {}

  bool audit(const Term& t, Formula f, int depth, const std::string& position) {
    ReductionTrace tr = normalize(t);
    if (!tr.normal()) return fail(position, "fuel exhausted");
    const Term& nf = tr.result;
    CanonicalShape shape = classify(nf);
    report_.audited.push_back({position, f, shape, nf, 0});
    const std::size_t entry = report_.audited.size() - 1;
    switch (f.kind()) {
      case FormulaKind::Or:
        if (shape == CanonicalShape::CInl) {
          return audit(nf->as<node::Inl>().arg, f.left(), depth, position + ".inl");
        }
        if (shape == CanonicalShape::CInr) {
          return audit(nf->as<node::Inr>().arg, f.right(), depth, position + ".inr");
        }
        return fail(position, "expected an injection, found " + to_string(nf));
      case FormulaKind::And:
        if (shape != CanonicalShape::CPair) return fail(position, "expected a pair, found " + to_string(nf));
        return audit(nf->as<node::Pair>().first, f.left(), depth, position + ".fst") &&
               audit(nf->as<node::Pair>().second, f.right(), depth, position + ".snd");
      case FormulaKind::Imp: {
        if (shape != CanonicalShape::CLam) {
          return fail(position, "expected an abstraction, found " + to_string(nf));
        }
        bool truncated = false;
        std::vector<Term> args = enumerate_inhabitants(f.left(), depth, &truncated);
        report_.audited[entry].arguments = args.size();
        if (truncated) report_.unexhausted.push_back(position);
        for (std::size_t k = 0; k < args.size(); ++k) {
          if (!audit(tm::ap(nf, args[k]), f.right(), depth - 1,
                     position + "@" + std::to_string(k))) {
            return false;
          }
        }
        return true;
      }
      default: return true;
    }
  }

 private:
  bool fail(const std::string& position, const std::string& why) {
    report_.failure = position + ": " + why;
    return false;
  }

  AuditReport& report_;
};

}  // namespace

std::vector<Term> enumerate_inhabitants(Formula f, int depth, bool* truncated, std::size_t limit) {
  bool dummy = false;
  Enumerator e(limit, truncated ? truncated : &dummy);
  Context ctx;
  return e.inhabitants(ctx, f, depth);
}

AuditReport audit_term(const Term& t, Formula f, int depth) {
  AuditReport report;
  if (auto err = check_judgment({}, t, f)) {
    report.type_error = *err;
    report.failure = err->message();
    return report;
  }
  Auditor auditor(report);
  try {
    report.passed = auditor.audit(t, f, depth, "root");
  } catch (const EvalError& e) {
    report.failure = e.what();
    report.passed = false;
  }
  return report;
}

}  // namespace kp
