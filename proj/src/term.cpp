#include "kp/term.hpp"

#include <algorithm>
#include <cassert>
#include <ostream>

namespace kp {

namespace {

template <class... Ts>
struct overloaded : Ts... { using Ts::operator()...; };
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void merge_into(std::vector<std::string>& acc, const std::vector<std::string>& add,
                const std::string* minus = nullptr) {
  std::vector<std::string> out;
  out.reserve(acc.size() + add.size());
  std::set_union(acc.begin(), acc.end(), add.begin(), add.end(), std::back_inserter(out));
  if (minus) std::erase(out, *minus);
  acc = std::move(out);
}

std::vector<ChildRef> children_of(const TermVariant& v);

}  // namespace

TermNode::TermNode(TermVariant v) : v_(std::move(v)) {
  std::visit(overloaded{
                 [&](const node::Var& n) { free_.push_back(n.name); },
                 [&](const node::Lam& n) {
                   merge_into(free_, n.body->free_vars(), &n.x.name);
                   size_ += n.body->size();
                 },
                 [&](const auto&) {
                   for (const auto& c : children_of(v_)) {
                     std::vector<std::string> part = c.term->free_vars();
                     if (c.bound) std::erase(part, c.bound->name);
                     merge_into(free_, part);
                     size_ += c.term->size();
                   }
                 },
             },
             v_);
}

bool TermNode::has_free(const std::string& x) const {
  return std::binary_search(free_.begin(), free_.end(), x);
}

namespace tm {
Term var(std::string name) { return std::make_shared<const TermNode>(node::Var{std::move(name)}); }
Term lam(std::string x, Formula a, Term body) {
  return std::make_shared<const TermNode>(node::Lam{{std::move(x), a}, std::move(body)});
}
Term ap(Term f, Term a) { return std::make_shared<const TermNode>(node::Ap{std::move(f), std::move(a)}); }
Term pair(Term a, Term b) {
  return std::make_shared<const TermNode>(node::Pair{std::move(a), std::move(b)});
}
Term fst(Term t) { return std::make_shared<const TermNode>(node::Fst{std::move(t)}); }
Term snd(Term t) { return std::make_shared<const TermNode>(node::Snd{std::move(t)}); }
Term inl(Term t, Formula other) { return std::make_shared<const TermNode>(node::Inl{std::move(t), other}); }
Term inr(Term t, Formula other) { return std::make_shared<const TermNode>(node::Inr{std::move(t), other}); }
Term dcase(Term scrutinee, std::string x, Formula a, Term l, std::string y, Formula b, Term r) {
  return std::make_shared<const TermNode>(node::DCase{std::move(scrutinee), {std::move(x), a},
                                                      std::move(l), {std::move(y), b}, std::move(r)});
}
Term scase(std::string z, Formula c, Term major, std::string x, Formula xa, Term l, std::string y,
           Formula ya, Term r) {
  return std::make_shared<const TermNode>(node::SCase{{std::move(z), c}, std::move(major),
                                                      {std::move(x), xa}, std::move(l),
                                                      {std::move(y), ya}, std::move(r)});
}
Term ssel(Term f) { return std::make_shared<const TermNode>(node::SSel{std::move(f)}); }
Term abort_to(Term t, Formula target) {
  return std::make_shared<const TermNode>(node::Abort{std::move(t), target});
}
}  // namespace tm

namespace {

std::vector<ChildRef> children_of(const TermVariant& v) {
  return std::visit(
      overloaded{
          [](const node::Var&) { return std::vector<ChildRef>{}; },
          [](const node::Lam& n) { return std::vector<ChildRef>{{n.body, &n.x}}; },
          [](const node::Ap& n) { return std::vector<ChildRef>{{n.fun}, {n.arg}}; },
          [](const node::Pair& n) { return std::vector<ChildRef>{{n.first}, {n.second}}; },
          [](const node::Fst& n) { return std::vector<ChildRef>{{n.arg}}; },
          [](const node::Snd& n) { return std::vector<ChildRef>{{n.arg}}; },
          [](const node::Inl& n) { return std::vector<ChildRef>{{n.arg}}; },
          [](const node::Inr& n) { return std::vector<ChildRef>{{n.arg}}; },
          [](const node::DCase& n) {
            return std::vector<ChildRef>{{n.scrutinee}, {n.lbranch, &n.left}, {n.rbranch, &n.right}};
          },
          [](const node::SCase& n) {
            return std::vector<ChildRef>{{n.major, &n.z}, {n.lbranch, &n.x}, {n.rbranch, &n.y}};
          },
          [](const node::SSel& n) { return std::vector<ChildRef>{{n.fun}}; },
          [](const node::Abort& n) { return std::vector<ChildRef>{{n.arg}}; },
      },
      v);
}

}  // namespace

std::vector<ChildRef> children(const Term& t) { return children_of(t->variant()); }

Term with_children(const Term& t, const std::vector<Term>& k) {
  return std::visit(
      overloaded{
          [&](const node::Var&) { return t; },
          [&](const node::Lam& n) { return tm::lam(n.x.name, n.x.type, k[0]); },
          [&](const node::Ap&) { return tm::ap(k[0], k[1]); },
          [&](const node::Pair&) { return tm::pair(k[0], k[1]); },
          [&](const node::Fst&) { return tm::fst(k[0]); },
          [&](const node::Snd&) { return tm::snd(k[0]); },
          [&](const node::Inl& n) { return tm::inl(k[0], n.other); },
          [&](const node::Inr& n) { return tm::inr(k[0], n.other); },
          [&](const node::DCase& n) {
            return tm::dcase(k[0], n.left.name, n.left.type, k[1], n.right.name, n.right.type, k[2]);
          },
          [&](const node::SCase& n) {
            return tm::scase(n.z.name, n.z.type, k[0], n.x.name, n.x.type, k[1], n.y.name,
                             n.y.type, k[2]);
          },
          [&](const node::SSel&) { return tm::ssel(k[0]); },
          [&](const node::Abort& n) { return tm::abort_to(k[0], n.target); },
      },
      t->variant());
}

std::set<std::string> free_vars(const Term& t) {
  return {t->free_vars().begin(), t->free_vars().end()};
}

std::string fresh_name(const std::string& base, const std::set<std::string>& avoid) {
  std::string name = base;
  while (avoid.count(name)) name += '\'';
  return name;
}

namespace {

// Substitute under a binder; renames the binder when it would capture a free
// variable of s. Returns the (possibly renamed) binder name and new body.
std::pair<std::string, Term> subst_under(const Binder& b, const Term& body, const std::string& x,
                                         const Term& s) {
  if (b.name == x || !body->has_free(x)) return {b.name, body};
  if (!s->has_free(b.name)) return {b.name, subst_term(body, x, s)};
  std::set<std::string> avoid = free_vars(s);
  for (const auto& v : body->free_vars()) avoid.insert(v);
  avoid.insert(x);
  std::string fresh = fresh_name(b.name, avoid);
  Term renamed = subst_term(body, b.name, tm::var(fresh));
  return {fresh, subst_term(renamed, x, s)};
}

}  // namespace

Term subst_term(const Term& t, const std::string& x, const Term& s) {
  if (!t->has_free(x)) return t;
  return std::visit(
      overloaded{
          [&](const node::Var&) { return s; },
          [&](const node::Lam& n) {
            auto [name, body] = subst_under(n.x, n.body, x, s);
            return tm::lam(name, n.x.type, body);
          },
          [&](const node::DCase& n) {
            auto [ln, lb] = subst_under(n.left, n.lbranch, x, s);
            auto [rn, rb] = subst_under(n.right, n.rbranch, x, s);
            return tm::dcase(subst_term(n.scrutinee, x, s), ln, n.left.type, lb, rn, n.right.type,
                             rb);
          },
          [&](const node::SCase& n) {
            auto [zn, zb] = subst_under(n.z, n.major, x, s);
            auto [xn, xb] = subst_under(n.x, n.lbranch, x, s);
            auto [yn, yb] = subst_under(n.y, n.rbranch, x, s);
            return tm::scase(zn, n.z.type, zb, xn, n.x.type, xb, yn, n.y.type, yb);
          },
          [&](const auto&) {
            std::vector<Term> kids;
            for (const auto& c : children(t)) kids.push_back(subst_term(c.term, x, s));
            return with_children(t, kids);
          },
      },
      t->variant());
}

namespace {

using BindStack = std::vector<std::pair<std::string, std::string>>;

bool vars_match(const std::string& a, const std::string& b, const BindStack& stack) {
  for (auto it = stack.rbegin(); it != stack.rend(); ++it) {
    const bool ha = it->first == a;
    const bool hb = it->second == b;
    if (ha || hb) return ha && hb;
  }
  return a == b;
}

bool alpha(const Term& a, const Term& b, BindStack& stack) {
  if (a == b && stack.empty()) return true;
  if (a->kind() != b->kind()) return false;
  if (const auto* va = a->get_if<node::Var>()) {
    return vars_match(va->name, b->as<node::Var>().name, stack);
  }
  // Annotations must agree syntactically.
  bool annots = std::visit(
      overloaded{
          [&](const node::Lam& n) { return n.x.type == b->as<node::Lam>().x.type; },
          [&](const node::Inl& n) { return n.other == b->as<node::Inl>().other; },
          [&](const node::Inr& n) { return n.other == b->as<node::Inr>().other; },
          [&](const node::Abort& n) { return n.target == b->as<node::Abort>().target; },
          [&](const node::DCase& n) {
            const auto& m = b->as<node::DCase>();
            return n.left.type == m.left.type && n.right.type == m.right.type;
          },
          [&](const node::SCase& n) {
            const auto& m = b->as<node::SCase>();
            return n.z.type == m.z.type && n.x.type == m.x.type && n.y.type == m.y.type;
          },
          [](const auto&) { return true; },
      },
      a->variant());
  if (!annots) return false;
  auto ka = children(a);
  auto kb = children(b);
  for (std::size_t i = 0; i < ka.size(); ++i) {
    if (ka[i].bound) stack.emplace_back(ka[i].bound->name, kb[i].bound->name);
    bool ok = alpha(ka[i].term, kb[i].term, stack);
    if (ka[i].bound) stack.pop_back();
    if (!ok) return false;
  }
  return true;
}

// Printing positions: 0 final (open-ended terms allowed), 1 delimited but
// not final, 2 application head, 3 atomic argument.
bool open_ended(const Term& t) {
  auto k = t->kind();
  return k == TermKind::Lam || k == TermKind::DCase || k == TermKind::SCase;
}

bool app_level(const Term& t) {
  switch (t->kind()) {
    case TermKind::Ap:
    case TermKind::Fst:
    case TermKind::Snd:
    case TermKind::Inl:
    case TermKind::Inr:
    case TermKind::SSel:
    case TermKind::Abort: return true;
    default: return false;
  }
}

void annot(std::string& out, Formula f) {
  if (f.is(FormulaKind::Atom) || f.is(FormulaKind::Falsum)) {
    out += to_string(f);
  } else {
    out += '(' + to_string(f) + ')';
  }
}

void print(std::string& out, const Term& t, int pos) {
  bool parens = false;
  if (open_ended(t)) parens = pos >= 1;
  else if (app_level(t)) parens = pos >= 3;
  if (parens) out += '(';
  std::visit(overloaded{
                 [&](const node::Var& n) { out += n.name; },
                 [&](const node::Lam& n) {
                   out += '\\' + n.x.name + ':';
                   annot(out, n.x.type);
                   out += ". ";
                   print(out, n.body, 0);
                 },
                 [&](const node::Ap& n) {
                   print(out, n.fun, 2);
                   out += ' ';
                   print(out, n.arg, 3);
                 },
                 [&](const node::Pair& n) {
                   out += '(';
                   print(out, n.first, 0);
                   out += ", ";
                   print(out, n.second, 0);
                   out += ')';
                 },
                 [&](const node::Fst& n) { out += "fst "; print(out, n.arg, 3); },
                 [&](const node::Snd& n) { out += "snd "; print(out, n.arg, 3); },
                 [&](const node::Inl& n) {
                   out += "inl[" + to_string(n.other) + "] ";
                   print(out, n.arg, 3);
                 },
                 [&](const node::Inr& n) {
                   out += "inr[" + to_string(n.other) + "] ";
                   print(out, n.arg, 3);
                 },
                 [&](const node::DCase& n) {
                   out += "case ";
                   print(out, n.scrutinee, 1);
                   out += " of inl " + n.left.name + ':';
                   annot(out, n.left.type);
                   out += " => ";
                   print(out, n.lbranch, 1);
                   out += " | inr " + n.right.name + ':';
                   annot(out, n.right.type);
                   out += " => ";
                   print(out, n.rbranch, 0);
                 },
                 [&](const node::SCase& n) {
                   out += "scase " + n.z.name + ':';
                   annot(out, n.z.type);
                   out += " => ";
                   print(out, n.major, 1);
                   out += " of inl-fn " + n.x.name + ':';
                   annot(out, n.x.type);
                   out += " => ";
                   print(out, n.lbranch, 1);
                   out += " | inr-fn " + n.y.name + ':';
                   annot(out, n.y.type);
                   out += " => ";
                   print(out, n.rbranch, 0);
                 },
                 [&](const node::SSel& n) { out += "ssel "; print(out, n.fun, 3); },
                 [&](const node::Abort& n) {
                   out += "abort[" + to_string(n.target) + "] ";
                   print(out, n.arg, 3);
                 },
             },
             t->variant());
  if (parens) out += ')';
}

}  // namespace

bool alpha_equal(const Term& a, const Term& b) {
  BindStack stack;
  return alpha(a, b, stack);
}

std::string to_string(const Term& t) {
  std::string out;
  print(out, t, 0);
  return out;
}

std::ostream& operator<<(std::ostream& os, const Term& t) { return os << to_string(t); }

std::string path_to_string(const TermPath& p) {
  if (p.empty()) return "root";
  std::string out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) out += '.';
    out += std::to_string(p[i]);
  }
  return out;
}

}  // namespace kp
