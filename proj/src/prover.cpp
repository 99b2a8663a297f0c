#include "kp/prover.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace kp {

namespace {

// Structural total order, independent of interning history.
int compare(Formula a, Formula b) {
  if (a == b) return 0;
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  if (a.kind() != b.kind()) return a.kind() < b.kind() ? -1 : 1;
  if (a.is(FormulaKind::Atom)) return a.name().compare(b.name()) < 0 ? -1 : 1;
  if (int c = compare(a.left(), b.left())) return c;
  return compare(a.right(), b.right());
}

struct Hyp {
  Formula f;
  Term t;  // null during search
};

using Hyps = std::vector<Hyp>;

void canonicalize(Hyps& hs) {
  std::stable_sort(hs.begin(), hs.end(),
                   [](const Hyp& a, const Hyp& b) { return compare(a.f, b.f) < 0; });
  hs.erase(std::unique(hs.begin(), hs.end(), [](const Hyp& a, const Hyp& b) { return a.f == b.f; }),
           hs.end());
}

Hyps without(const Hyps& hs, std::size_t i) {
  Hyps out;
  out.reserve(hs.size() + 1);
  for (std::size_t k = 0; k < hs.size(); ++k) {
    if (k != i) out.push_back(hs[k]);
  }
  return out;
}

class NameSupply {
 public:
  explicit NameSupply(std::set<std::string> avoid) : used_(std::move(avoid)) {}

  std::string next(const std::string& base) {
    std::string name = base;
    for (int n = 1; used_.count(name); ++n) name = base + std::to_string(n);
    used_.insert(name);
    return name;
  }

 private:
  std::set<std::string> used_;
};

// Premise antecedents for left rules. Terms are built only when the
// principal hypothesis carries one.
bool building(const Hyp& h) { return h.t != nullptr; }

Hyps and_left(const Hyps& hs, std::size_t i) {
  const Hyp& h = hs[i];
  Hyps out = without(hs, i);
  out.push_back({h.f.left(), building(h) ? tm::fst(h.t) : nullptr});
  out.push_back({h.f.right(), building(h) ? tm::snd(h.t) : nullptr});
  canonicalize(out);
  return out;
}

Hyps or_left(const Hyps& hs, std::size_t i, bool left, const std::string& name) {
  const Hyp& h = hs[i];
  Hyps out = without(hs, i);
  out.push_back({left ? h.f.left() : h.f.right(), building(h) ? tm::var(name) : nullptr});
  canonicalize(out);
  return out;
}

Hyps imp_falsum_left(const Hyps& hs, std::size_t i) { return without(hs, i); }

Hyps imp_atom_left(const Hyps& hs, std::size_t i, std::size_t j) {
  const Hyp& h = hs[i];
  Hyps out = without(hs, i);
  out.push_back({h.f.right(), building(h) ? tm::ap(h.t, hs[j].t) : nullptr});
  canonicalize(out);
  return out;
}

Hyps imp_and_left(const Hyps& hs, std::size_t i, NameSupply* names) {
  const Hyp& h = hs[i];
  Formula a = h.f.left().left(), b = h.f.left().right(), c = h.f.right();
  Term t;
  if (building(h)) {
    std::string x = names->next("a"), y = names->next("b");
    t = tm::lam(x, a, tm::lam(y, b, tm::ap(h.t, tm::pair(tm::var(x), tm::var(y)))));
  }
  Hyps out = without(hs, i);
  out.push_back({fm::imp(a, fm::imp(b, c)), t});
  canonicalize(out);
  return out;
}

Hyps imp_or_left(const Hyps& hs, std::size_t i, NameSupply* names) {
  const Hyp& h = hs[i];
  Formula a = h.f.left().left(), b = h.f.left().right(), c = h.f.right();
  Term ta, tb;
  if (building(h)) {
    std::string x = names->next("a"), y = names->next("b");
    ta = tm::lam(x, a, tm::ap(h.t, tm::inl(tm::var(x), b)));
    tb = tm::lam(y, b, tm::ap(h.t, tm::inr(tm::var(y), a)));
  }
  Hyps out = without(hs, i);
  out.push_back({fm::imp(a, c), ta});
  out.push_back({fm::imp(b, c), tb});
  canonicalize(out);
  return out;
}

// (A -> B) -> C, first premise: B -> C |- A -> B.
Hyps imp_imp_left1(const Hyps& hs, std::size_t i, NameSupply* names) {
  const Hyp& h = hs[i];
  Formula a = h.f.left().left(), b = h.f.left().right(), c = h.f.right();
  Term t;
  if (building(h)) {
    std::string y = names->next("b"), x = names->next("a");
    t = tm::lam(y, b, tm::ap(h.t, tm::lam(x, a, tm::var(y))));
  }
  Hyps out = without(hs, i);
  out.push_back({fm::imp(b, c), t});
  canonicalize(out);
  return out;
}

// (A -> B) -> C, second premise: C |- goal, with C proved by h applied to
// the first premise's proof of A -> B.
Hyps imp_imp_left2(const Hyps& hs, std::size_t i, const Term& first) {
  const Hyp& h = hs[i];
  Hyps out = without(hs, i);
  out.push_back({h.f.right(), building(h) ? tm::ap(h.t, first) : nullptr});
  canonicalize(out);
  return out;
}

Hyps with_extra(const Hyps& hs, Formula f, Term t) {
  Hyps out = hs;
  out.push_back({f, std::move(t)});
  canonicalize(out);
  return out;
}

std::vector<Formula> formulas_of(const Hyps& hs) {
  std::vector<Formula> out;
  out.reserve(hs.size());
  for (const auto& h : hs) out.push_back(h.f);
  return out;
}

Hyps bare(const std::vector<Formula>& fs) {
  Hyps out;
  out.reserve(fs.size());
  for (Formula f : fs) out.push_back({f, nullptr});
  return out;
}

std::optional<std::size_t> find_formula(const Hyps& hs, Formula f) {
  for (std::size_t k = 0; k < hs.size(); ++k) {
    if (hs[k].f == f) return k;
  }
  return std::nullopt;
}

Term extract(const Derivation& d, const Hyps& hs, NameSupply& names) {
  using R = Derivation::Rule;
  assert(formulas_of(hs) == d.antecedents);
  const std::size_t i = d.principal;
  switch (d.rule) {
    case R::Axiom: return hs[i].t;
    case R::FalsumL: return tm::abort_to(hs[i].t, d.goal);
    case R::AndL: return extract(*d.premises[0], and_left(hs, i), names);
    case R::OrL: {
      std::string x = names.next("x"), y = names.next("y");
      Term l = extract(*d.premises[0], or_left(hs, i, true, x), names);
      Term r = extract(*d.premises[1], or_left(hs, i, false, y), names);
      return tm::dcase(hs[i].t, x, hs[i].f.left(), l, y, hs[i].f.right(), r);
    }
    case R::ImpFalsumL: return extract(*d.premises[0], imp_falsum_left(hs, i), names);
    case R::ImpAtomL: return extract(*d.premises[0], imp_atom_left(hs, i, d.aux), names);
    case R::ImpAndL: return extract(*d.premises[0], imp_and_left(hs, i, &names), names);
    case R::ImpOrL: return extract(*d.premises[0], imp_or_left(hs, i, &names), names);
    case R::ImpImpL: {
      Term first = extract(*d.premises[0], imp_imp_left1(hs, i, &names), names);
      return extract(*d.premises[1], imp_imp_left2(hs, i, first), names);
    }
    case R::AndR:
      return tm::pair(extract(*d.premises[0], hs, names), extract(*d.premises[1], hs, names));
    case R::ImpR: {
      std::string x = names.next("x");
      Term body = extract(*d.premises[0], with_extra(hs, d.goal.left(), tm::var(x)), names);
      return tm::lam(x, d.goal.left(), body);
    }
    case R::OrR1: return tm::inl(extract(*d.premises[0], hs, names), d.goal.right());
    case R::OrR2: return tm::inr(extract(*d.premises[0], hs, names), d.goal.left());
  }
  throw std::logic_error("unknown derivation rule");
}

}  // namespace

std::string to_string(const Sequent& s) {
  std::string out;
  for (std::size_t i = 0; i < s.antecedents.size(); ++i) {
    if (i) out += ", ";
    out += to_string(s.antecedents[i]);
  }
  out += out.empty() ? "|- " : " |- ";
  out += to_string(s.succedent);
  return out;
}

std::vector<Formula> canonical_antecedents(std::vector<Formula> fs) {
  Hyps hs = bare(fs);
  canonicalize(hs);
  return formulas_of(hs);
}

std::size_t Prover::KeyHash::operator()(const std::vector<std::uint32_t>& k) const noexcept {
  std::size_t h = k.size();
  for (auto v : k) h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

bool Prover::provable(const std::vector<Formula>& antecedents, Formula goal) {
  return derive(antecedents, goal) != nullptr;
}

DerivationPtr Prover::derive(const std::vector<Formula>& antecedents, Formula goal) {
  return search(canonical_antecedents(antecedents), goal);
}

DerivationPtr Prover::search(const std::vector<Formula>& fs, Formula goal) {
  using R = Derivation::Rule;
  std::vector<std::uint32_t> key;
  key.reserve(fs.size() + 1);
  key.push_back(goal.id());
  for (Formula f : fs) key.push_back(f.id());
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  ++searches_;

  const Hyps hs = bare(fs);
  auto node = [&](R rule, std::size_t principal, std::vector<DerivationPtr> premises,
                  std::size_t aux = 0) {
    auto d = std::make_shared<Derivation>();
    d->rule = rule;
    d->antecedents = fs;
    d->goal = goal;
    d->principal = principal;
    d->aux = aux;
    d->premises = std::move(premises);
    return DerivationPtr(d);
  };
  auto solve = [&]() -> DerivationPtr {
    for (std::size_t i = 0; i < hs.size(); ++i) {
      if (hs[i].f == goal) return node(R::Axiom, i, {});
    }
    for (std::size_t i = 0; i < hs.size(); ++i) {
      if (hs[i].f.is(FormulaKind::Falsum)) return node(R::FalsumL, i, {});
    }
    // Invertible left rules.
    for (std::size_t i = 0; i < hs.size(); ++i) {
      Formula f = hs[i].f;
      switch (f.kind()) {
        case FormulaKind::And: {
          auto p = search(formulas_of(and_left(hs, i)), goal);
          return p ? node(R::AndL, i, {p}) : nullptr;
        }
        case FormulaKind::Or: {
          auto l = search(formulas_of(or_left(hs, i, true, {})), goal);
          if (!l) return nullptr;
          auto r = search(formulas_of(or_left(hs, i, false, {})), goal);
          return r ? node(R::OrL, i, {l, r}) : nullptr;
        }
        case FormulaKind::Imp: {
          Formula a = f.left();
          if (a.is(FormulaKind::Falsum)) {
            auto p = search(formulas_of(imp_falsum_left(hs, i)), goal);
            return p ? node(R::ImpFalsumL, i, {p}) : nullptr;
          }
          if (a.is(FormulaKind::Atom)) {
            if (auto j = find_formula(hs, a)) {
              auto p = search(formulas_of(imp_atom_left(hs, i, *j)), goal);
              return p ? node(R::ImpAtomL, i, {p}, *j) : nullptr;
            }
            break;
          }
          if (a.is(FormulaKind::And)) {
            auto p = search(formulas_of(imp_and_left(hs, i, nullptr)), goal);
            return p ? node(R::ImpAndL, i, {p}) : nullptr;
          }
          if (a.is(FormulaKind::Or)) {
            auto p = search(formulas_of(imp_or_left(hs, i, nullptr)), goal);
            return p ? node(R::ImpOrL, i, {p}) : nullptr;
          }
          break;
        }
        default: break;
      }
    }
    // Invertible right rules.
    if (goal.is(FormulaKind::And)) {
      auto l = search(fs, goal.left());
      if (!l) return nullptr;
      auto r = search(fs, goal.right());
      return r ? node(R::AndR, 0, {l, r}) : nullptr;
    }
    if (goal.is(FormulaKind::Imp)) {
      auto p = search(formulas_of(with_extra(hs, goal.left(), nullptr)), goal.right());
      return p ? node(R::ImpR, 0, {p}) : nullptr;
    }
    // Non-invertible choices.
    if (goal.is(FormulaKind::Or)) {
      if (auto l = search(fs, goal.left())) return node(R::OrR1, 0, {l});
      if (auto r = search(fs, goal.right())) return node(R::OrR2, 0, {r});
    }
    for (std::size_t i = 0; i < hs.size(); ++i) {
      Formula f = hs[i].f;
      if (!f.is(FormulaKind::Imp) || !f.left().is(FormulaKind::Imp)) continue;
      auto first = search(formulas_of(imp_imp_left1(hs, i, nullptr)), f.left());
      if (!first) continue;
      auto second = search(formulas_of(imp_imp_left2(hs, i, nullptr)), goal);
      if (second) return node(R::ImpImpL, i, {first, second});
    }
    return nullptr;
  };
  DerivationPtr result = solve();
  memo_.emplace(std::move(key), result);
  return result;
}

Term extract_term(const Derivation& d, const Context& ctx) {
  Hyps hs;
  for (Formula f : d.antecedents) {
    Term t;
    const auto& items = ctx.items();
    for (auto it = items.rbegin(); it != items.rend(); ++it) {
      if (it->second == f) {
        t = tm::var(it->first);
        break;
      }
    }
    if (!t) throw std::invalid_argument("context does not cover antecedent " + to_string(f));
    hs.push_back({f, t});
  }
  NameSupply names(ctx.names());
  return extract(d, hs, names);
}

ProofResult Prover::prove(const Context& ctx, Formula goal) {
  DerivationPtr d = derive(ctx.formulas(), goal);
  if (!d) return {};
  return {true, extract_term(*d, ctx)};
}

ProofResult Prover::prove(const Sequent& s) {
  Context ctx;
  if (s.antecedents.size() == 1) {
    ctx.push("h", s.antecedents[0]);
  } else {
    for (std::size_t i = 0; i < s.antecedents.size(); ++i) {
      ctx.push("h" + std::to_string(i + 1), s.antecedents[i]);
    }
  }
  return prove(ctx, s.succedent);
}

ProofResult prove(const Sequent& s) {
  Prover p;
  return p.prove(s);
}

}  // namespace kp
