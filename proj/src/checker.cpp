#include "kp/checker.hpp"

namespace kp {

std::string to_string(CheckErrorKind k) {
  switch (k) {
    case CheckErrorKind::UnboundVariable: return "UnboundVariable";
    case CheckErrorKind::Mismatch: return "Mismatch";
    case CheckErrorKind::HarropViolation: return "HarropViolation";
    case CheckErrorKind::NotAFunction: return "NotAFunction";
    case CheckErrorKind::NotAPair: return "NotAPair";
    case CheckErrorKind::NotADisjunction: return "NotADisjunction";
    case CheckErrorKind::BranchTypeClash: return "BranchTypeClash";
    case CheckErrorKind::AnnotationClash: return "AnnotationClash";
  }
  return "Unknown";
}

std::string CheckError::message() const {
  std::string out = to_string(kind) + " at " + path_to_string(path);
  if (kind == CheckErrorKind::HarropViolation && actual) {
    out += ": " + to_string(*actual) + " is not Harrop (" + harrop_diagnosis(*actual) + ")";
    return out;
  }
  if (!detail.empty()) out += ": " + detail;
  if (expected) out += "; expected " + to_string(*expected);
  if (actual) out += "; actual " + to_string(*actual);
  return out;
}

namespace {

class Synthesizer {
 public:
  explicit Synthesizer(Context ctx) : ctx_(std::move(ctx)) {}

  Synthesis run(const Term& t) {
    path_.clear();
    return go(t);
  }

 private:
  CheckError err(CheckErrorKind k, std::optional<Formula> expected = std::nullopt,
                 std::optional<Formula> actual = std::nullopt, std::string detail = {}) const {
    return CheckError{k, path_, expected, actual, std::move(detail)};
  }

  // Synthesize child i, optionally under a binder.
  Synthesis child(int i, const Term& t, const Binder* b = nullptr) {
    path_.push_back(i);
    if (b) ctx_.push(b->name, b->type);
    Synthesis s = go(t);
    if (b) ctx_.pop();
    path_.pop_back();
    return s;
  }

  Synthesis go(const Term& t) {
    switch (t->kind()) {
      case TermKind::Var: {
        const auto& n = t->as<node::Var>();
        if (auto f = ctx_.lookup(n.name)) return *f;
        return err(CheckErrorKind::UnboundVariable, std::nullopt, std::nullopt, n.name);
      }
      case TermKind::Lam: {
        const auto& n = t->as<node::Lam>();
        Synthesis body = child(0, n.body, &n.x);
        if (!body) return body;
        return fm::imp(n.x.type, body.formula());
      }
      case TermKind::Ap: {
        const auto& n = t->as<node::Ap>();
        Synthesis f = child(0, n.fun);
        if (!f) return f;
        if (!f.formula().is(FormulaKind::Imp)) {
          return err(CheckErrorKind::NotAFunction, std::nullopt, f.formula());
        }
        Synthesis a = child(1, n.arg);
        if (!a) return a;
        if (a.formula() != f.formula().left()) {
          path_.push_back(1);
          CheckError e = err(CheckErrorKind::Mismatch, f.formula().left(), a.formula());
          path_.pop_back();
          return e;
        }
        return f.formula().right();
      }
      case TermKind::Pair: {
        const auto& n = t->as<node::Pair>();
        Synthesis a = child(0, n.first);
        if (!a) return a;
        Synthesis b = child(1, n.second);
        if (!b) return b;
        return fm::conj(a.formula(), b.formula());
      }
      case TermKind::Fst:
      case TermKind::Snd: {
        const Term& arg = t->kind() == TermKind::Fst ? t->as<node::Fst>().arg : t->as<node::Snd>().arg;
        Synthesis a = child(0, arg);
        if (!a) return a;
        if (!a.formula().is(FormulaKind::And)) {
          return err(CheckErrorKind::NotAPair, std::nullopt, a.formula());
        }
        return t->kind() == TermKind::Fst ? a.formula().left() : a.formula().right();
      }
      case TermKind::Inl: {
        const auto& n = t->as<node::Inl>();
        Synthesis a = child(0, n.arg);
        if (!a) return a;
        return fm::disj(a.formula(), n.other);
      }
      case TermKind::Inr: {
        const auto& n = t->as<node::Inr>();
        Synthesis a = child(0, n.arg);
        if (!a) return a;
        return fm::disj(n.other, a.formula());
      }
      case TermKind::DCase: {
        const auto& n = t->as<node::DCase>();
        Synthesis s = child(0, n.scrutinee);
        if (!s) return s;
        if (!s.formula().is(FormulaKind::Or)) {
          return err(CheckErrorKind::NotADisjunction, std::nullopt, s.formula());
        }
        if (n.left.type != s.formula().left()) {
          return err(CheckErrorKind::AnnotationClash, s.formula().left(), n.left.type,
                     "left binder " + n.left.name);
        }
        if (n.right.type != s.formula().right()) {
          return err(CheckErrorKind::AnnotationClash, s.formula().right(), n.right.type,
                     "right binder " + n.right.name);
        }
        return branches(n.lbranch, &n.left, n.rbranch, &n.right);
      }
      case TermKind::SCase: {
        const auto& n = t->as<node::SCase>();
        if (!is_harrop(n.z.type)) {
          return err(CheckErrorKind::HarropViolation, std::nullopt, n.z.type);
        }
        Synthesis c = child(0, n.major, &n.z);
        if (!c) return c;
        if (!c.formula().is(FormulaKind::Or)) {
          path_.push_back(0);
          CheckError e = err(CheckErrorKind::NotADisjunction, std::nullopt, c.formula());
          path_.pop_back();
          return e;
        }
        Formula want_x = fm::imp(n.z.type, c.formula().left());
        Formula want_y = fm::imp(n.z.type, c.formula().right());
        if (n.x.type != want_x) {
          return err(CheckErrorKind::AnnotationClash, want_x, n.x.type, "binder " + n.x.name);
        }
        if (n.y.type != want_y) {
          return err(CheckErrorKind::AnnotationClash, want_y, n.y.type, "binder " + n.y.name);
        }
        return branches(n.lbranch, &n.x, n.rbranch, &n.y);
      }
      case TermKind::SSel: {
        const auto& n = t->as<node::SSel>();
        Synthesis f = child(0, n.fun);
        if (!f) return f;
        Formula ty = f.formula();
        if (!ty.is(FormulaKind::Imp)) return err(CheckErrorKind::NotAFunction, std::nullopt, ty);
        if (!ty.right().is(FormulaKind::Or)) {
          return err(CheckErrorKind::NotADisjunction, std::nullopt, ty.right());
        }
        if (!is_harrop(ty.left())) {
          return err(CheckErrorKind::HarropViolation, std::nullopt, ty.left());
        }
        return fm::disj(fm::imp(ty.left(), ty.right().left()),
                        fm::imp(ty.left(), ty.right().right()));
      }
      case TermKind::Abort: {
        const auto& n = t->as<node::Abort>();
        Synthesis a = child(0, n.arg);
        if (!a) return a;
        if (!a.formula().is(FormulaKind::Falsum)) {
          path_.push_back(0);
          CheckError e = err(CheckErrorKind::Mismatch, fm::falsum(), a.formula());
          path_.pop_back();
          return e;
        }
        return n.target;
      }
    }
    return err(CheckErrorKind::Mismatch);
  }

  Synthesis branches(const Term& l, const Binder* lb, const Term& r, const Binder* rb) {
    Synthesis d = child(1, l, lb);
    if (!d) return d;
    Synthesis e = child(2, r, rb);
    if (!e) return e;
    if (d.formula() != e.formula()) {
      return err(CheckErrorKind::BranchTypeClash, d.formula(), e.formula());
    }
    return d;
  }

  Context ctx_;
  TermPath path_;
};

}  // namespace

Synthesis synth(const Context& ctx, const Term& t) { return Synthesizer(ctx).run(t); }

std::optional<CheckError> check_judgment(const Context& ctx, const Term& t, Formula f) {
  Synthesis s = synth(ctx, t);
  if (!s) return s.error();
  if (s.formula() != f) return CheckError{CheckErrorKind::Mismatch, {}, f, s.formula(), {}};
  return std::nullopt;
}

}  // namespace kp
