#pragma once

#include <cctype>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "uavrl/common/random.hpp"
#include "uavrl/reward/factors.hpp"

namespace uavrl::testing {

/// Emits random sentences of the reward grammar, with random spacing.
class ExpressionGenerator {
 public:
  explicit ExpressionGenerator(std::uint64_t seed) : rng_(seed) {}

  std::string next(int depth = 4) { return expr(depth); }

 private:
  bool coin(double p) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng_) < p; }
  int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }
  std::string space() { return coin(0.3) ? " " : ""; }

  std::string expr(int d) {
    std::string s = term(d);
    for (int n = pick(3); n > 0; --n) s += space() + (coin(0.5) ? "+" : "-") + space() + term(d);
    return s;
  }
  std::string term(int d) {
    std::string s = unary(d);
    for (int n = pick(3); n > 0; --n) s += space() + (coin(0.6) ? "*" : "/") + space() + unary(d);
    return s;
  }
  std::string unary(int d) { return (coin(0.2) ? "-" + space() : "") + atom(d); }
  std::string atom(int d) {
    if (d > 0 && coin(0.35)) return "(" + space() + expr(d - 1) + space() + ")";
    if (coin(0.5)) return std::string(reward::kFactorRegistry[pick(5)].name);
    static const char* kNumbers[] = {"0", "1", "2", "0.5", "0.25", ".75", "3.", "10", "1e-2", "2.5E+1", "0.125",
                                     "7", "1e3"};
    return kNumbers[pick(13)];
  }

  Rng rng_;
};

/// Shunting-yard conversion to postfix followed by stack evaluation.
class PostfixEvaluator {
 public:
  static double evaluate(const std::string& text, const reward::FactorValues& values) {
    return run(to_postfix(tokenize(text)), values);
  }

 private:
  struct Token {
    enum Kind { kNum, kName, kOp, kLParen, kRParen } kind;
    double num = 0.0;
    std::string text;
  };

  static std::vector<Token> tokenize(const std::string& s) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < s.size()) {
      const char c = s[i];
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++i;
      } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
        std::size_t used = 0;
        const double v = std::stod(s.substr(i), &used);
        out.push_back({Token::kNum, v, ""});
        i += used;
      } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::size_t j = i;
        while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
        out.push_back({Token::kName, 0.0, s.substr(i, j - i)});
        i = j;
      } else if (c == '(') {
        out.push_back({Token::kLParen, 0.0, "("});
        ++i;
      } else if (c == ')') {
        out.push_back({Token::kRParen, 0.0, ")"});
        ++i;
      } else {
        out.push_back({Token::kOp, 0.0, std::string(1, c)});
        ++i;
      }
    }
    return out;
  }

  static int precedence(const std::string& op) {
    if (op == "u") return 3;
    if (op == "*" || op == "/") return 2;
    return 1;
  }

  static std::vector<Token> to_postfix(const std::vector<Token>& tokens) {
    std::vector<Token> output, ops;
    bool expect_operand = true;
    for (const auto& t : tokens) {
      switch (t.kind) {
        case Token::kNum:
        case Token::kName:
          output.push_back(t);
          expect_operand = false;
          break;
        case Token::kLParen:
          ops.push_back(t);
          expect_operand = true;
          break;
        case Token::kRParen:
          while (!ops.empty() && ops.back().kind != Token::kLParen) {
            output.push_back(ops.back());
            ops.pop_back();
          }
          if (ops.empty()) throw std::runtime_error("unbalanced parentheses");
          ops.pop_back();
          expect_operand = false;
          break;
        case Token::kOp: {
          Token op = t;
          if (expect_operand && t.text == "-") {
            op.text = "u";
            ops.push_back(op);  // prefix operator: nothing to pop
            break;
          }
          while (!ops.empty() && ops.back().kind == Token::kOp &&
                 precedence(ops.back().text) >= precedence(op.text)) {
            output.push_back(ops.back());
            ops.pop_back();
          }
          ops.push_back(op);
          expect_operand = true;
          break;
        }
      }
    }
    while (!ops.empty()) {
      output.push_back(ops.back());
      ops.pop_back();
    }
    return output;
  }

  static double lookup(const std::string& name, const reward::FactorValues& v) {
    if (name == "energy") return v.energy;
    if (name == "position") return v.position;
    if (name == "aoi") return v.aoi;
    if (name == "throughput") return v.throughput;
    if (name == "penalty") return v.penalty;
    throw std::runtime_error("unknown name " + name);
  }

  static double run(const std::vector<Token>& postfix, const reward::FactorValues& values) {
    std::vector<double> stack;
    for (const auto& t : postfix) {
      if (t.kind == Token::kNum) {
        stack.push_back(t.num);
      } else if (t.kind == Token::kName) {
        stack.push_back(lookup(t.text, values));
      } else if (t.text == "u") {
        stack.back() = -stack.back();
      } else {
        const double b = stack.back();
        stack.pop_back();
        double& a = stack.back();
        if (t.text == "+") a = a + b;
        else if (t.text == "-") a = a - b;
        else if (t.text == "*") a = a * b;
        else a = a / b;
      }
    }
    if (stack.size() != 1) throw std::runtime_error("malformed postfix program");
    return stack.back();
  }
};

inline bool same_value(double a, double b, double rel = 1e-12) {
  if (std::isnan(a) || std::isnan(b)) return std::isnan(a) && std::isnan(b);
  if (std::isinf(a) || std::isinf(b)) return a == b;
  return std::abs(a - b) <= rel * std::max(1.0, std::max(std::abs(a), std::abs(b)));
}

}  // namespace uavrl::testing
