#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "kp/checker.hpp"
#include "kp/context.hpp"
#include "kp/formula.hpp"
#include "kp/term.hpp"

namespace kp {

// Thrown when a transform's input does not meet its contract.
class TransformError : public std::runtime_error {
 public:
  explicit TransformError(CheckError e) : std::runtime_error(e.message()), error_(std::move(e)) {}
  const CheckError& error() const { return error_; }

 private:
  CheckError error_;
};

enum class TransformRule { SplitToS, SToSplit, SplitRed, SplitRed2 };
std::string to_string(TransformRule r);

struct Typed {
  Context context;
  Term term;
  Formula formula;
};

struct TransformReport {
  Typed input;
  Typed output;
  TransformRule rule;
  bool recheck = false;
};

// f : C -> A \/ B  to  scase z:C => f z of inl-fn x => inl x | inr-fn y => inr y,
// of type (C -> A) \/ (C -> B).
TransformReport split_to_s(const Context& ctx, const Term& f, Formula typeof_f);

// From z:C |- c : A \/ B and branches at D, the S-free
// case ssel (\z:C. c) of inl x => d | inr y => e.
TransformReport s_to_split(const Context& ctx, const Binder& z, const Term& c,
                           const std::string& x, const Term& d, const std::string& y,
                           const Term& e);
// Same, reading the pieces off an scase term.
TransformReport s_to_split(const Context& ctx, const Term& scase);

// ssel (\z:C. inl[B] a)  to  inl[C->B] (\z:C. a), symmetrically for inr.
// nullopt when t is not of that shape.
std::optional<TransformReport> apply_split_red2(const Context& ctx, const Term& t);

}  // namespace kp
