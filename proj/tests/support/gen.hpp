#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "kp/context.hpp"
#include "kp/formula.hpp"
#include "kp/prover.hpp"
#include "kp/term.hpp"

namespace kptest {

using namespace kp;

struct GenOptions {
  int budget = 4;
  bool scase = true;
  bool ssel = true;
};

// Type-directed generator of well-typed terms. Leaves are prover
// witnesses; inner nodes are introductions or deliberate detours
// (beta, projection of a pair, case of an injection, scase, case over ssel).
class TermGen {
 public:
  explicit TermGen(std::uint64_t seed, GenOptions opts = {});

  Formula formula(int depth, int atoms = 2);
  Formula harrop();
  Formula theorem();
  // A random (C -> A \/ B) -> (C -> A) \/ (C -> B) with Harrop C.
  Formula split_formula();

  // ctx |- result : goal, or nullopt when goal is out of reach.
  std::optional<Term> term(const Context& ctx, Formula goal);
  std::optional<Term> term(const Context& ctx, Formula goal, int budget);

  // A disjunction derivable from ctx, C (used for scase majors).
  Formula disjunction_under(const Context& ctx, Formula c);

  std::string fresh();
  int pick(int n);
  Prover& prover() { return prover_; }

 private:
  std::optional<Term> detour(const Context& ctx, Formula goal, int budget);
  std::optional<Term> intro(const Context& ctx, Formula goal, int budget);
  std::optional<Term> split(const Context& ctx, Formula goal, int budget);
  Term witness(const Context& ctx, Formula goal);
  Formula provable_in(const Context& ctx);
  bool provable(const Context& ctx, Formula f);

  GenOptions opts_;
  std::mt19937_64 rng_;
  Prover prover_;
  std::vector<Formula> theorems_;
  std::vector<Formula> harrops_;
  std::vector<Formula> small_;
  std::uint64_t counter_ = 0;
};

bool contains(const Term& t, TermKind k);

}  // namespace kptest
