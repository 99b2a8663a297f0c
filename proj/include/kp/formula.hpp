#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>

namespace kp {

enum class FormulaKind : std::uint8_t { Atom, Falsum, And, Or, Imp };

class FormulaNode;

// Hash-consed handle to an immutable formula. Structurally equal formulas
// share one node, so equality and hashing are pointer operations.
class Formula {
 public:
  Formula() = default;

  FormulaKind kind() const;
  bool is(FormulaKind k) const { return kind() == k; }

  // Atom name; empty for non-atoms.
  const std::string& name() const;
  // Left conjunct/disjunct or antecedent.
  Formula left() const;
  // Right conjunct/disjunct or consequent.
  Formula right() const;

  std::uint32_t id() const;
  std::size_t size() const;
  int depth() const;

  bool valid() const { return node_ != nullptr; }
  explicit operator bool() const { return valid(); }

  friend bool operator==(Formula a, Formula b) { return a.node_ == b.node_; }
  friend bool operator!=(Formula a, Formula b) { return a.node_ != b.node_; }
  // Total order by interning id; deterministic within a process.
  friend bool operator<(Formula a, Formula b) { return a.id() < b.id(); }

  const FormulaNode* node() const { return node_; }

 private:
  friend class FormulaTable;
  explicit Formula(const FormulaNode* n) : node_(n) {}
  const FormulaNode* node_ = nullptr;
};

namespace fm {
Formula atom(std::string_view name);
Formula falsum();
Formula conj(Formula a, Formula b);
Formula disj(Formula a, Formula b);
Formula imp(Formula a, Formula b);
// ~a is sugar for a -> _|_.
Formula neg(Formula a);
}  // namespace fm

// Concrete syntax with minimal parentheses; parse_formula(print(f)) == f.
std::string to_string(Formula f);
std::ostream& operator<<(std::ostream& os, Formula f);

// Harrop class: every disjunction sits inside an implication antecedent and
// falsum never appears at a strictly positive position.
bool is_harrop(Formula f);

// Human-readable reason a formula fails the Harrop test, e.g.
// "disjunction at root" or "falsum at consequent.left". Empty when Harrop.
std::string harrop_diagnosis(Formula f);

enum class Polarity : std::uint8_t { Positive, Negative };
constexpr Polarity flip(Polarity p) {
  return p == Polarity::Positive ? Polarity::Negative : Polarity::Positive;
}

// True iff some occurrence of x in host is negative. Polarity flips through
// implication antecedents and is preserved everywhere else.
bool occurs_negatively(Formula x, Formula host);
bool occurs_positively(Formula x, Formula host);

// Uniform substitution of replacement for every occurrence of atom.
Formula substitute(Formula f, std::string_view atom, Formula replacement);

}  // namespace kp

template <>
struct std::hash<kp::Formula> {
  std::size_t operator()(kp::Formula f) const noexcept {
    return std::hash<const void*>{}(f.node());
  }
};
