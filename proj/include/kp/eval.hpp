#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "kp/context.hpp"
#include "kp/formula.hpp"
#include "kp/term.hpp"

namespace kp {

enum class Rule { BetaImp, ProjFst, ProjSnd, DCaseL, DCaseR, SCompL, SCompR, SSelElab, SplitRed2 };
std::string to_string(Rule r);

inline constexpr std::size_t kDefaultFuel = 10000;

struct EvalOptions {
  // Upper bound on contractions, including those spent normalizing the
  // major premise of an scase.
  std::size_t fuel = kDefaultFuel;
  // Enable the one-step ssel (\z:C. inl a) => inl (\z:C. a) shortcut.
  bool split_red2 = false;
};

class EvalError : public std::runtime_error {
 public:
  enum class Kind { StuckTerm, SCaseNonCanonical };
  EvalError(Kind k, TermPath path, const std::string& msg)
      : std::runtime_error(msg), kind_(k), path_(std::move(path)) {}
  Kind kind() const { return kind_; }
  const TermPath& path() const { return path_; }

 private:
  Kind kind_;
  TermPath path_;
};

struct StepResult {
  Rule rule;
  TermPath position;
  Term after;
};

struct TraceStep {
  Rule rule;
  TermPath position;
  Term before;
  Term after;
};

struct ReductionTrace {
  enum class Outcome { NormalForm, FuelExhausted };
  std::vector<TraceStep> steps;
  Outcome outcome = Outcome::NormalForm;
  // The normal form, or the last term reached when fuel ran out.
  Term result;

  bool normal() const { return outcome == Outcome::NormalForm; }
};

// Contract the leftmost-outermost redex of t. ctx types the free variables
// of t; it is consulted only to elaborate ssel. Returns nullopt on normal
// forms. Throws EvalError on ill-typed input.
std::optional<StepResult> step(const Term& t, const Context& ctx = {}, const EvalOptions& opts = {});

ReductionTrace normalize(const Term& t, const Context& ctx = {}, const EvalOptions& opts = {});
inline ReductionTrace normalize(const Term& t, std::size_t fuel) {
  return normalize(t, {}, EvalOptions{fuel, false});
}

// Trivial inhabitant of a Harrop formula built from seed : c.
//   atom     seed
//   A /\ B   (eta(A, fst seed), eta(B, snd seed))
//   A -> B   \x:A. eta(B, seed x)
// Every elimination of seed in the result is at atomic type.
Term eta_expand_harrop(Formula c, const Term& seed);

// The split-red2 shortcut on its own: ssel (\z:C. inl[B] a) becomes
// inl[C->B] (\z:C. a), symmetrically for inr. nullopt when not of that shape.
std::optional<Term> split_red2_contract(const Term& t);

enum class CanonicalShape { CInl, CInr, CPair, CLam, CNeutralAtomic };
std::string to_string(CanonicalShape s);

CanonicalShape classify(const Term& t);

}  // namespace kp
