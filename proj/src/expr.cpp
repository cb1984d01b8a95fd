#include "vis/expr.hpp"
#include "vis/errors.hpp"

#include <cctype>
#include <vector>

namespace vis {

namespace {

class Parser {
public:
  Parser(const std::string& text, const ParamMap& params) : s_(text), params_(params) {}

  Rational run() {
    Rational v = logical_or();
    skip();
    if (pos_ != s_.size()) fail("trailing input");
    return v;
  }

private:
  const std::string& s_;
  const ParamMap& params_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& why) const {
    throw DatasetError("expression '" + s_ + "': " + why + " at offset " + std::to_string(pos_));
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(const std::string& tok) {
    skip();
    if (s_.compare(pos_, tok.size(), tok) == 0) {
      pos_ += tok.size();
      return true;
    }
    return false;
  }

  static Rational truth(bool b) { return Rational(b ? 1 : 0); }

  Rational logical_or() {
    Rational v = logical_and();
    while (eat("||")) {
      Rational r = logical_and();
      v = truth(sgn(v) != 0 || sgn(r) != 0);
    }
    return v;
  }

  Rational logical_and() {
    Rational v = comparison();
    while (eat("&&")) {
      Rational r = comparison();
      v = truth(sgn(v) != 0 && sgn(r) != 0);
    }
    return v;
  }

  Rational comparison() {
    Rational v = additive();
    while (true) {
      if (eat("==")) v = truth(v == additive());
      else if (eat("!=")) v = truth(v != additive());
      else if (eat("<=")) v = truth(v <= additive());
      else if (eat(">=")) v = truth(v >= additive());
      else if (eat("<")) v = truth(v < additive());
      else if (eat(">")) v = truth(v > additive());
      else return v;
    }
  }

  Rational additive() {
    Rational v = term();
    while (true) {
      if (eat("+")) v += term();
      else if (eat("-")) v -= term();
      else return v;
    }
  }

  Rational term() {
    Rational v = unary();
    while (true) {
      if (eat("*")) {
        v *= unary();
      } else if (s_.compare(pos_, 2, "//") != 0 && eat("/")) {
        Rational d = unary();
        if (sgn(d) == 0) fail("division by zero");
        v /= d;
      } else {
        return v;
      }
    }
  }

  Rational unary() {
    if (eat("-")) return -unary();
    if (eat("!")) return truth(sgn(unary()) == 0);
    return primary();
  }

  Rational primary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Rational v = logical_or();
      if (!eat(")")) fail("expected ')'");
      return v;
    }
    if (c == '[') {  // integer part, as in [n/2]
      ++pos_;
      Rational v = logical_or();
      if (!eat("]")) fail("expected ']'");
      return floor_of(v);
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return Rational(s_.substr(start, pos_ - start));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
        ++pos_;
      const std::string name = s_.substr(start, pos_ - start);
      if (name == "min" || name == "max" || name == "floor") return call(name);
      auto it = params_.find(name);
      if (it == params_.end()) fail("unknown parameter '" + name + "'");
      return Rational(it->second);
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  Rational call(const std::string& name) {
    if (!eat("(")) fail("expected '(' after " + name);
    std::vector<Rational> args{logical_or()};
    while (eat(",")) args.push_back(logical_or());
    if (!eat(")")) fail("expected ')'");
    if (name == "floor") {
      if (args.size() != 1) fail("floor takes one argument");
      return floor_of(args[0]);
    }
    if (args.size() < 2) fail(name + " takes at least two arguments");
    Rational v = args[0];
    for (std::size_t k = 1; k < args.size(); ++k)
      v = name == "min" ? (args[k] < v ? args[k] : v) : (args[k] > v ? args[k] : v);
    return v;
  }

  static Rational floor_of(const Rational& v) {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), v.get_num_mpz_t(), v.get_den_mpz_t());
    return Rational(q);
  }
};

} // namespace

Rational evaluate(const std::string& expression, const ParamMap& params) {
  return Parser(expression, params).run();
}

long evaluate_integer(const std::string& expression, const ParamMap& params) {
  const Rational v = evaluate(expression, params);
  if (v.get_den() != 1) throw DatasetError("expression '" + expression + "' is not an integer");
  return v.get_num().get_si();
}

bool evaluate_condition(const std::string& expression, const ParamMap& params) {
  return sgn(evaluate(expression, params)) != 0;
}

std::string format_params(const ParamMap& params) {
  std::string out;
  for (const auto& [k, v] : params) {
    if (!out.empty()) out += ",";
    out += k + "=" + std::to_string(v);
  }
  return out;
}

} // namespace vis
