#pragma once

#include <optional>
#include <string>
#include <variant>

#include "kp/context.hpp"
#include "kp/formula.hpp"
#include "kp/term.hpp"

namespace kp {

enum class CheckErrorKind {
  UnboundVariable,
  Mismatch,
  HarropViolation,
  NotAFunction,
  NotAPair,
  NotADisjunction,
  BranchTypeClash,
  AnnotationClash,
};

std::string to_string(CheckErrorKind k);

struct CheckError {
  CheckErrorKind kind;
  TermPath path;
  // Populated where meaningful; HarropViolation puts the offending
  // formula in `actual`.
  std::optional<Formula> expected;
  std::optional<Formula> actual;
  std::string detail;

  std::string message() const;
};

// Either the synthesized formula or the first error met, left to right.
class Synthesis {
 public:
  Synthesis(Formula f) : v_(f) {}
  Synthesis(CheckError e) : v_(std::move(e)) {}

  bool ok() const { return std::holds_alternative<Formula>(v_); }
  explicit operator bool() const { return ok(); }
  Formula formula() const { return std::get<Formula>(v_); }
  const CheckError& error() const { return std::get<CheckError>(v_); }

 private:
  std::variant<Formula, CheckError> v_;
};

Synthesis synth(const Context& ctx, const Term& t);

// ok iff synth(ctx, t) is f; Mismatch(f, synthesized) otherwise.
std::optional<CheckError> check_judgment(const Context& ctx, const Term& t, Formula f);

}  // namespace kp
