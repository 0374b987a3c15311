#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>

#include "uavrl/reward/factors.hpp"

namespace uavrl::reward {

// Grammar:
//   expr  := term (('+' | '-') term)*
//   term  := unary (('*' | '/') unary)*
//   unary := ['-'] atom
//   atom  := number | identifier | '(' expr ')'

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  enum class Kind { kNumber, kIdentifier, kNegate, kAdd, kSub, kMul, kDiv };

  Kind kind = Kind::kNumber;
  double number = 0.0;
  std::string identifier;
  ExprPtr lhs;  // operand of kNegate, left side of binaries
  ExprPtr rhs;
  std::size_t position = 0;  // byte offset in the source

  static ExprPtr make_number(double v, std::size_t pos = 0);
  static ExprPtr make_identifier(std::string name, std::size_t pos = 0);
  static ExprPtr make_negate(ExprPtr operand, std::size_t pos = 0);
  static ExprPtr make_binary(Kind kind, ExprPtr lhs, ExprPtr rhs, std::size_t pos = 0);
};

/// Structural equality; source positions are ignored.
bool structurally_equal(const Expr& a, const Expr& b);

class CompileError : public std::runtime_error {
 public:
  enum class Reason { kSyntax, kUnknownIdentifier };

  CompileError(Reason reason, std::size_t position, const std::string& message);

  Reason reason() const { return reason_; }
  std::size_t position() const { return position_; }

 private:
  Reason reason_;
  std::size_t position_;
};

/// Parses `source`. Identifiers rejected by `is_known` raise kUnknownIdentifier.
ExprPtr parse_expression(std::string_view source,
                         const std::function<bool(std::string_view)>& is_known = is_registered_factor);

/// Fully parenthesized text that parses back to a structurally equal tree.
std::string to_source(const Expr& expr);

/// Evaluates with IEEE semantics (division by zero yields inf or nan).
double evaluate(const Expr& expr, const FactorValues& values);

void collect_identifiers(const Expr& expr, std::set<std::string>& out);

/// A compiled reward expression. The expression is a cost; the reward is its negation.
class RewardProgram {
 public:
  static RewardProgram compile(std::string_view source);

  double cost(const FactorValues& values) const { return evaluate(*root_, values); }
  double reward(const FactorValues& values) const { return -cost(values); }

  const Expr& root() const { return *root_; }
  const std::string& source() const { return source_; }
  std::string canonical() const { return to_source(*root_); }
  const std::set<std::string>& identifiers() const { return identifiers_; }

 private:
  RewardProgram(std::string source, ExprPtr root);

  std::string source_;
  ExprPtr root_;
  std::set<std::string> identifiers_;
};

/// The hand-designed baseline: reward = -w * energy * penalty.
double manual_reward(const FactorValues& values, double energy_weight = 1.0);

/// Program returned by the recorded designer fixture.
inline constexpr std::string_view kFixtureRewardExpression = "(0.6*energy + 0.4*position)*penalty";

}  // namespace uavrl::reward
