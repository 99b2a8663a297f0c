#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kp/checker.hpp"
#include "kp/eval.hpp"
#include "kp/formula.hpp"
#include "kp/prover.hpp"
#include "kp/term.hpp"

namespace kp {

// Formula-level slash relation Gamma | A, by recursion on A:
//   atom, _|_   Gamma |- A
//   A /\ B      Gamma | A and Gamma | B
//   A \/ B      Gamma | A or Gamma | B
//   A -> B      Gamma |- A -> B, and Gamma | A implies Gamma | B
struct SlashNode {
  Formula formula;
  std::string clause;  // "atom", "falsum", "and", "or", "imp"
  bool holds = false;
  // Result of the provability side condition, for atom/falsum/imp.
  std::optional<bool> derivable;
  std::vector<SlashNode> children;
};

struct ProvabilityCall {
  Sequent sequent;
  bool provable = false;
};

struct SlashVerdict {
  bool holds = false;
  SlashNode trace;
  std::vector<ProvabilityCall> provability_calls;
};

class SlashEngine {
 public:
  SlashEngine() = default;
  explicit SlashEngine(Prover* prover) : prover_(prover) {}

  SlashVerdict slash_formula(const std::vector<Formula>& ctx, Formula f);

  // Same relation without building a trace; memoized per context.
  bool holds(const std::vector<Formula>& ctx, Formula f);

  Prover& prover() { return prover_ ? *prover_ : own_; }

 private:
  SlashNode build(const std::vector<Formula>& ctx, Formula f, std::vector<ProvabilityCall>& calls);
  bool derivable(const std::vector<Formula>& ctx, Formula f, std::vector<ProvabilityCall>* calls);

  Prover own_;
  Prover* prover_ = nullptr;
  std::map<std::pair<std::vector<std::uint32_t>, std::uint32_t>, bool> memo_;
};

SlashVerdict slash_formula(const std::vector<Formula>& ctx, Formula f);

struct AuditEntry {
  std::string position;
  Formula formula;
  CanonicalShape shape;
  Term normal_form;
  // For implications: how many canonical arguments were tried.
  std::size_t arguments = 0;
};

struct AuditReport {
  bool passed = false;
  std::vector<AuditEntry> audited;
  // Implication positions whose argument enumeration was cut off by the
  // depth bound; the universal clause there is only partially checked.
  std::vector<std::string> unexhausted;
  std::optional<std::string> failure;
  std::optional<CheckError> type_error;
};

// Bounded canonicity audit of a closed term t : f.
AuditReport audit_term(const Term& t, Formula f, int depth);

// Closed normal inhabitants of f up to the given depth. Sets *truncated when
// the depth bound or the per-position limit cut the enumeration short.
std::vector<Term> enumerate_inhabitants(Formula f, int depth, bool* truncated,
                                        std::size_t limit = 16);

}  // namespace kp
