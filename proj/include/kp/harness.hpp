#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kp/formula.hpp"

namespace kp {

// Atom names used by the enumerator: p, q, r, s, t, u, then p6, p7, ...
std::string atom_name(int i);

// Every formula over the first `atoms` atoms and _|_ of depth at most
// max_depth, each exactly once: all depth-1 formulas, then the depth-2
// ones, and so on. Within a level, /\ before \/ before ->, pairs in
// lexicographic order of the previous listing.
std::vector<Formula> enumerate_formulas(int atoms, int max_depth);

// Closed-form size of that enumeration.
std::uint64_t count_formulas(int atoms, int max_depth);

// Finite Kripke models (rooted trees) with every monotone valuation of
// the atoms, glued into one frame. A formula's truth set is a bitset over
// the worlds; a formula false at some world is not an IPC theorem.
class KripkeBank {
 public:
  KripkeBank(int atoms, int max_nodes);

  std::size_t worlds() const { return up_.size(); }
  std::size_t words() const { return words_; }

  using Bits = std::vector<std::uint64_t>;
  Bits truth(Formula f) const;
  bool valid(const Bits& b) const;

 private:
  Bits eval(Formula f) const;

  std::size_t words_ = 0;
  std::vector<std::uint64_t> up_;  // up-set of world w, within word w / 64
  std::vector<Bits> atoms_;
  int atom_count_;
};

enum class Property { SplitAdmissibility, DisjunctionProperty, HarropSelfSlash };
std::string to_string(Property p);
std::optional<Property> parse_property(const std::string& s);

enum class SweepMode {
  Classes,  // exhaustive, reduced to IPC-equivalence classes
  Brute,    // exhaustive, one prover query per formula tuple
  Sampled,  // seeded random formulas
};
std::string to_string(SweepMode m);

struct SweepConfig {
  int atoms = 2;
  int max_depth = 3;
  Property property = Property::SplitAdmissibility;
  std::uint64_t seed = 0;
  // Split sweep only: restrict C to Harrop formulas.
  bool harrop_filter = true;
  // Forces sampled mode when positive; otherwise exhaustive at desk scale
  // (atoms <= 2, depth <= 3) and 1000 samples beyond.
  std::uint64_t samples = 0;
  bool brute = false;
};

struct Counterexample {
  std::vector<Formula> formulas;
  std::string evidence;
};

struct SweepReport {
  Property property = Property::SplitAdmissibility;
  SweepMode mode = SweepMode::Classes;
  std::uint64_t instances_checked = 0;
  // Instances whose hypothesis is a theorem (C -> A \/ B, A \/ B) or, for
  // the self-slash sweep, Harrop formulas examined.
  std::uint64_t theorems = 0;
  std::uint64_t counterexample_total = 0;
  // At most kMaxListed entries; counterexample_total has the full count.
  std::vector<Counterexample> counterexamples;
  // Disjunction sweep: theorem instances where slash picks exactly the
  // disjuncts the prover proves.
  std::uint64_t slash_agreements = 0;
  std::uint64_t formulas = 0;
  std::uint64_t classes = 0;
  std::uint64_t prover_queries = 0;
  std::chrono::milliseconds elapsed{0};

  static constexpr std::size_t kMaxListed = 50;
};

SweepReport run_sweep(const SweepConfig& cfg);
SweepReport sweep_split_admissibility(SweepConfig cfg);
SweepReport sweep_disjunction_property(SweepConfig cfg);
SweepReport sweep_harrop_self_slash(SweepConfig cfg);

}  // namespace kp
