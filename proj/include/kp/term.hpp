#pragma once

#include <iosfwd>
#include <memory>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "kp/formula.hpp"

namespace kp {

class TermNode;
using Term = std::shared_ptr<const TermNode>;

struct Binder {
  std::string name;
  Formula type;
};

namespace node {
struct Var { std::string name; };
struct Lam { Binder x; Term body; };
struct Ap { Term fun; Term arg; };
struct Pair { Term first; Term second; };
struct Fst { Term arg; };
struct Snd { Term arg; };
// Inl(arg, other): arg inhabits the left disjunct, other names the right one.
struct Inl { Term arg; Formula other; };
// Inr(arg, other): arg inhabits the right disjunct, other names the left one.
struct Inr { Term arg; Formula other; };
struct DCase { Term scrutinee; Binder left; Term lbranch; Binder right; Term rbranch; };
// z is bound in major only, x in lbranch only, y in rbranch only.
struct SCase { Binder z; Term major; Binder x; Term lbranch; Binder y; Term rbranch; };
struct SSel { Term fun; };
struct Abort { Term arg; Formula target; };
}  // namespace node

enum class TermKind { Var, Lam, Ap, Pair, Fst, Snd, Inl, Inr, DCase, SCase, SSel, Abort };

using TermVariant = std::variant<node::Var, node::Lam, node::Ap, node::Pair, node::Fst, node::Snd,
                                 node::Inl, node::Inr, node::DCase, node::SCase, node::SSel,
                                 node::Abort>;

class TermNode {
 public:
  explicit TermNode(TermVariant v);

  TermKind kind() const { return static_cast<TermKind>(v_.index()); }
  const TermVariant& variant() const { return v_; }
  template <class T>
  const T& as() const { return std::get<T>(v_); }
  template <class T>
  const T* get_if() const { return std::get_if<T>(&v_); }

  // Sorted, duplicate-free.
  const std::vector<std::string>& free_vars() const { return free_; }
  bool has_free(const std::string& x) const;
  std::size_t size() const { return size_; }

 private:
  TermVariant v_;
  std::vector<std::string> free_;
  std::size_t size_ = 1;
};

namespace tm {
Term var(std::string name);
Term lam(std::string x, Formula a, Term body);
Term ap(Term f, Term a);
Term pair(Term a, Term b);
Term fst(Term t);
Term snd(Term t);
Term inl(Term t, Formula other);
Term inr(Term t, Formula other);
Term dcase(Term scrutinee, std::string x, Formula a, Term l, std::string y, Formula b, Term r);
Term scase(std::string z, Formula c, Term major, std::string x, Formula xa, Term l, std::string y,
           Formula ya, Term r);
Term ssel(Term f);
Term abort_to(Term t, Formula target);
}  // namespace tm

// A child position together with the binder (if any) it is under.
struct ChildRef {
  Term term;
  const Binder* bound = nullptr;
};

std::vector<ChildRef> children(const Term& t);
// Rebuild t with new children (same arity and order as children(t)).
Term with_children(const Term& t, const std::vector<Term>& kids);

std::set<std::string> free_vars(const Term& t);

// Fresh variant of base not in avoid, formed by appending primes.
std::string fresh_name(const std::string& base, const std::set<std::string>& avoid);

// Capture-avoiding substitution t[s/x].
Term subst_term(const Term& t, const std::string& x, const Term& s);

bool alpha_equal(const Term& a, const Term& b);

std::string to_string(const Term& t);
std::ostream& operator<<(std::ostream& os, const Term& t);

// Path as child indices from the root, as produced by children().
using TermPath = std::vector<int>;
std::string path_to_string(const TermPath& p);

}  // namespace kp
