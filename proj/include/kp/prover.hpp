#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "kp/context.hpp"
#include "kp/formula.hpp"
#include "kp/term.hpp"

namespace kp {

struct Sequent {
  std::vector<Formula> antecedents;
  Formula succedent;
};

std::string to_string(const Sequent& s);

// One node of a cut-free, contraction-free (G4ip) derivation. The
// antecedents at each node are kept sorted and duplicate-free, so indices
// are stable between search and extraction.
struct Derivation {
  enum class Rule {
    Axiom,       // goal is among the antecedents
    FalsumL,
    AndL,
    OrL,
    ImpFalsumL,  // _|_ -> C is dropped
    ImpAtomL,    // p -> C with p present becomes C
    ImpAndL,     // (A /\ B) -> C becomes A -> B -> C
    ImpOrL,      // (A \/ B) -> C becomes A -> C, B -> C
    ImpImpL,     // (A -> B) -> C: B -> C |- A -> B and C |- goal
    AndR,
    ImpR,
    OrR1,
    OrR2,
  };

  Rule rule;
  std::vector<Formula> antecedents;
  Formula goal;
  std::size_t principal = 0;
  std::size_t aux = 0;
  std::vector<std::shared_ptr<const Derivation>> premises;
};

using DerivationPtr = std::shared_ptr<const Derivation>;

struct ProofResult {
  bool provable = false;
  Term witness;  // set iff provable
};

// Decision procedure for intuitionistic propositional logic. Results
// are memoized per instance; an instance is not safe for concurrent use.
class Prover {
 public:
  bool provable(const std::vector<Formula>& antecedents, Formula goal);
  bool provable(Formula goal) { return provable({}, goal); }

  DerivationPtr derive(const std::vector<Formula>& antecedents, Formula goal);

  // Antecedents are named h (single) or h1..hn.
  ProofResult prove(const Sequent& s);
  // Antecedents use the context's names.
  ProofResult prove(const Context& ctx, Formula goal);

  std::size_t memo_size() const { return memo_.size(); }
  std::uint64_t searches() const { return searches_; }

 private:
  struct KeyHash {
    std::size_t operator()(const std::vector<std::uint32_t>& k) const noexcept;
  };

  DerivationPtr search(const std::vector<Formula>& hyps, Formula goal);

  std::unordered_map<std::vector<std::uint32_t>, DerivationPtr, KeyHash> memo_;
  std::uint64_t searches_ = 0;
};

ProofResult prove(const Sequent& s);

// Proof term for a derivation; ctx names the root antecedents in the order
// given by d.antecedents. Uses only the IPC constructors.
Term extract_term(const Derivation& d, const Context& ctx);

// Sort and deduplicate antecedents into the canonical order used by
// Derivation.
std::vector<Formula> canonical_antecedents(std::vector<Formula> fs);

}  // namespace kp
