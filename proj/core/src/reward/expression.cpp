#include "uavrl/reward/expression.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <system_error>

namespace uavrl::reward {

ExprPtr Expr::make_number(double v, std::size_t pos) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::kNumber;
  e->number = v;
  e->position = pos;
  return e;
}

ExprPtr Expr::make_identifier(std::string name, std::size_t pos) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::kIdentifier;
  e->identifier = std::move(name);
  e->position = pos;
  return e;
}

ExprPtr Expr::make_negate(ExprPtr operand, std::size_t pos) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::kNegate;
  e->lhs = std::move(operand);
  e->position = pos;
  return e;
}

ExprPtr Expr::make_binary(Kind kind, ExprPtr lhs, ExprPtr rhs, std::size_t pos) {
  auto e = std::make_shared<Expr>();
  e->kind = kind;
  e->lhs = std::move(lhs);
  e->rhs = std::move(rhs);
  e->position = pos;
  return e;
}

bool structurally_equal(const Expr& a, const Expr& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Expr::Kind::kNumber: return a.number == b.number;
    case Expr::Kind::kIdentifier: return a.identifier == b.identifier;
    case Expr::Kind::kNegate: return structurally_equal(*a.lhs, *b.lhs);
    default: return structurally_equal(*a.lhs, *b.lhs) && structurally_equal(*a.rhs, *b.rhs);
  }
}

CompileError::CompileError(Reason reason, std::size_t position, const std::string& message)
    : std::runtime_error(message + " at position " + std::to_string(position)),
      reason_(reason),
      position_(position) {}

namespace {

class Parser {
 public:
  Parser(std::string_view src, const std::function<bool(std::string_view)>& is_known)
      : src_(src), is_known_(is_known) {}

  ExprPtr parse() {
    skip_space();
    if (pos_ == src_.size()) fail("empty expression");
    ExprPtr e = expr();
    skip_space();
    if (pos_ != src_.size()) fail(std::string("unexpected '") + src_[pos_] + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw CompileError(CompileError::Reason::kSyntax, pos_, msg);
  }

  void skip_space() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  ExprPtr expr() {
    ExprPtr lhs = term();
    for (;;) {
      skip_space();
      const std::size_t at = pos_;
      if (accept('+')) {
        lhs = Expr::make_binary(Expr::Kind::kAdd, lhs, term(), at);
      } else if (accept('-')) {
        lhs = Expr::make_binary(Expr::Kind::kSub, lhs, term(), at);
      } else {
        return lhs;
      }
    }
  }

  ExprPtr term() {
    ExprPtr lhs = unary();
    for (;;) {
      skip_space();
      const std::size_t at = pos_;
      if (accept('*')) {
        lhs = Expr::make_binary(Expr::Kind::kMul, lhs, unary(), at);
      } else if (accept('/')) {
        lhs = Expr::make_binary(Expr::Kind::kDiv, lhs, unary(), at);
      } else {
        return lhs;
      }
    }
  }

  ExprPtr unary() {
    skip_space();
    const std::size_t at = pos_;
    if (accept('-')) return Expr::make_negate(atom(), at);
    return atom();
  }

  ExprPtr atom() {
    skip_space();
    if (pos_ == src_.size()) fail("unexpected end of expression");
    const char c = src_[pos_];
    if (c == '(') {
      ++pos_;
      ExprPtr inner = expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
    fail(std::string("unexpected '") + c + "'");
  }

  ExprPtr number() {
    const std::size_t start = pos_;
    auto digits = [&] {
      std::size_t n = 0;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_, ++n;
      return n;
    };
    std::size_t n = digits();
    if (pos_ < src_.size() && src_[pos_] == '.') {
      ++pos_;
      n += digits();
    }
    if (n == 0) fail("malformed number");
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      ++pos_;
      if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) ++pos_;
      if (digits() == 0) fail("malformed exponent");
    }
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(src_.data() + start, src_.data() + pos_, v);
    if (ec != std::errc() || ptr != src_.data() + pos_ || !std::isfinite(v)) {
      throw CompileError(CompileError::Reason::kSyntax, start, "number out of range");
    }
    return Expr::make_number(v, start);
  }

  ExprPtr identifier() {
    const std::size_t start = pos_;
    while (pos_ < src_.size() &&
           (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
      ++pos_;
    }
    std::string name(src_.substr(start, pos_ - start));
    if (!is_known_(name)) {
      throw CompileError(CompileError::Reason::kUnknownIdentifier, start, "unknown identifier '" + name + "'");
    }
    return Expr::make_identifier(std::move(name), start);
  }

  std::string_view src_;
  const std::function<bool(std::string_view)>& is_known_;
  std::size_t pos_ = 0;
};

std::string format_number(double v) {
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  (void)ec;
  return std::string(buf.data(), ptr);
}

char op_char(Expr::Kind k) {
  switch (k) {
    case Expr::Kind::kAdd: return '+';
    case Expr::Kind::kSub: return '-';
    case Expr::Kind::kMul: return '*';
    default: return '/';
  }
}

}  // namespace

ExprPtr parse_expression(std::string_view source, const std::function<bool(std::string_view)>& is_known) {
  return Parser(source, is_known).parse();
}

std::string to_source(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::kNumber: return format_number(e.number);
    case Expr::Kind::kIdentifier: return e.identifier;
    case Expr::Kind::kNegate: {
      const auto k = e.lhs->kind;
      if (k == Expr::Kind::kNumber || k == Expr::Kind::kIdentifier) return "-" + to_source(*e.lhs);
      if (k == Expr::Kind::kNegate) return "-(" + to_source(*e.lhs) + ")";
      return "-" + to_source(*e.lhs);  // binaries already carry parentheses
    }
    default:
      return "(" + to_source(*e.lhs) + " " + op_char(e.kind) + " " + to_source(*e.rhs) + ")";
  }
}

double evaluate(const Expr& e, const FactorValues& values) {
  switch (e.kind) {
    case Expr::Kind::kNumber: return e.number;
    case Expr::Kind::kIdentifier: {
      const auto v = factor_value(values, e.identifier);
      if (!v) throw std::logic_error("unregistered factor '" + e.identifier + "' in compiled expression");
      return *v;
    }
    case Expr::Kind::kNegate: return -evaluate(*e.lhs, values);
    case Expr::Kind::kAdd: return evaluate(*e.lhs, values) + evaluate(*e.rhs, values);
    case Expr::Kind::kSub: return evaluate(*e.lhs, values) - evaluate(*e.rhs, values);
    case Expr::Kind::kMul: return evaluate(*e.lhs, values) * evaluate(*e.rhs, values);
    case Expr::Kind::kDiv: return evaluate(*e.lhs, values) / evaluate(*e.rhs, values);
  }
  return 0.0;
}

void collect_identifiers(const Expr& e, std::set<std::string>& out) {
  if (e.kind == Expr::Kind::kIdentifier) out.insert(e.identifier);
  if (e.lhs) collect_identifiers(*e.lhs, out);
  if (e.rhs) collect_identifiers(*e.rhs, out);
}

RewardProgram::RewardProgram(std::string source, ExprPtr root) : source_(std::move(source)), root_(std::move(root)) {
  collect_identifiers(*root_, identifiers_);
}

RewardProgram RewardProgram::compile(std::string_view source) {
  return RewardProgram(std::string(source), parse_expression(source));
}

double manual_reward(const FactorValues& values, double energy_weight) {
  return -energy_weight * values.energy * values.penalty;
}

}  // namespace uavrl::reward
