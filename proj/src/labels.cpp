#include "vis/labels.hpp"

#include <algorithm>
#include <cctype>
#include <vector>

namespace vis {

namespace {

struct Piece {
  long dim = 0;
  long compact = 0;       // compact part of the semisimple part
  long center = 0;
  long split_center = 0;  // noncompact part of the center
  long rank = 0;          // real rank of the semisimple part

  Piece& operator+=(const Piece& o) {
    dim += o.dim;
    compact += o.compact;
    center += o.center;
    split_center += o.split_center;
    rank += o.rank;
    return *this;
  }
};

Piece semisimple(long dim, long compact, long rank) { return Piece{dim, compact, 0, 0, rank}; }
Piece abelian(long dim, long split) { return Piece{dim, 0, dim, split, 0}; }

std::vector<std::string> split_top(const std::string& s, char sep) {
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (char c : s) {
    if (c == '(' || c == '[') ++depth;
    if (c == ')' || c == ']') --depth;
    if (c == sep && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::string strip(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

struct Term {
  std::string name;
  std::vector<std::string> args;
  bool has_args = false;
};

Term parse_term(const std::string& raw) {
  const std::string s = strip(raw);
  Term t;
  std::size_t i = 0;
  while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '*')) ++i;
  t.name = s.substr(0, i);
  if (t.name.empty()) throw DatasetError("malformed label term '" + s + "'");
  if (i == s.size()) return t;
  if (s[i] != '(' || s.back() != ')') throw DatasetError("malformed label term '" + s + "'");
  t.has_args = true;
  for (auto& a : split_top(s.substr(i + 1, s.size() - i - 2), ',')) t.args.push_back(strip(a));
  return t;
}

bool is_field(const std::string& a, const char* f) { return a == f; }

Piece su_piece(long a, long b) {
  const long n = a + b;
  if (n <= 1) return {};
  return semisimple(n * n - 1, a * a + b * b - 1, std::min(a, b));
}

Piece so_piece(long a, long b) {
  const long n = a + b;
  if (n <= 1) return {};
  if (n == 2) return abelian(1, a == 1 ? 1 : 0);
  return semisimple(n * (n - 1) / 2, a * (a - 1) / 2 + b * (b - 1) / 2, std::min(a, b));
}

Piece sp_piece(long a, long b) {
  const long n = a + b;
  return semisimple(n * (2 * n + 1), a * (2 * a + 1) + b * (2 * b + 1), std::min(a, b));
}

Piece sum_piece(const std::string& label, const ParamMap& p);

Piece term_piece(const Term& t, const ParamMap& p) {
  auto arg = [&](std::size_t k) { return evaluate_integer(t.args.at(k), p); };
  const std::string& n = t.name;
  const std::size_t na = t.args.size();
  if (!t.has_args) {
    if (n == "R") return abelian(1, 1);
    if (n == "iR") return abelian(1, 0);
    throw DatasetError("unknown label term '" + n + "'");
  }
  if (n == "s") {
    // s(u(..)+u(..)+...): traceless part of a sum of unitary algebras
    Piece out;
    long blocks = 0;
    for (const auto& part : split_top(t.args.at(0), '+')) {
      Term u = parse_term(part);
      if (u.name != "u") throw DatasetError("s(...) expects u(...) summands");
      const long a = evaluate_integer(u.args.at(0), p);
      const long b = u.args.size() > 1 ? evaluate_integer(u.args.at(1), p) : 0;
      if (a + b > 0) ++blocks;
      out += su_piece(a, b);
    }
    if (blocks > 1) out += abelian(blocks - 1, 0);
    return out;
  }
  if (n == "su") return su_piece(arg(0), na > 1 ? arg(1) : 0);
  if (n == "u") {
    const long a = arg(0), b = na > 1 ? arg(1) : 0;
    Piece out = su_piece(a, b);
    if (a + b > 0) out += abelian(1, 0);
    return out;
  }
  if (n == "so") {
    if (na == 2 && is_field(t.args[1], "C")) {
      const long m = arg(0);
      if (m <= 1) return {};
      if (m == 2) return abelian(2, 1);
      return semisimple(m * (m - 1), m * (m - 1) / 2, m / 2);
    }
    return so_piece(arg(0), na > 1 ? arg(1) : 0);
  }
  if (n == "so*") {
    const long k = arg(0);
    if (k % 2 != 0) throw DatasetError("so*(k) needs even k");
    const long m = k / 2;
    if (m == 0) return {};
    if (m == 1) return abelian(1, 0);
    return semisimple(m * (2 * m - 1), m * m, m / 2);
  }
  if (n == "sp") {
    if (na == 2 && is_field(t.args[1], "R")) {
      const long m = arg(0);
      return semisimple(m * (2 * m + 1), m * m, m);
    }
    if (na == 2 && is_field(t.args[1], "C")) {
      const long m = arg(0);
      return semisimple(2 * m * (2 * m + 1), m * (2 * m + 1), m);
    }
    return sp_piece(arg(0), na > 1 ? arg(1) : 0);
  }
  if (n == "sl" || n == "gl") {
    const long m = arg(0);
    const bool complex = na == 2 && is_field(t.args[1], "C");
    if (na != 2 || (!complex && !is_field(t.args[1], "R")))
      throw DatasetError("sl/gl need a field argument R or C");
    Piece out;
    if (m >= 2)
      out = complex ? semisimple(2 * (m * m - 1), m * m - 1, m - 1)
                    : semisimple(m * m - 1, m * (m - 1) / 2, m - 1);
    if (n == "gl" && m >= 1) out += complex ? abelian(2, 1) : abelian(1, 1);
    return out;
  }
  if (n == "su*") {
    const long k = arg(0);
    if (k % 2 != 0) throw DatasetError("su*(k) needs even k");
    const long m = k / 2;
    if (m == 0) return {};
    return semisimple(k * k - 1, m * (2 * m + 1), m - 1);
  }
  if (is_exceptional_label(n)) throw UnsupportedRow("exceptional algebra '" + n + "' has no fingerprint");
  throw DatasetError("unknown label term '" + n + "'");
}

Piece sum_piece(const std::string& label, const ParamMap& p) {
  Piece out;
  for (const auto& part : split_top(label, '+')) out += term_piece(parse_term(part), p);
  return out;
}

} // namespace

bool is_exceptional_label(const std::string& label) {
  const std::string s = strip(label);
  return !s.empty() && (s[0] == 'e' || s[0] == 'f' || s[0] == 'g') &&
         (s.size() > 1 && std::isdigit(static_cast<unsigned char>(s[1])));
}

Fingerprint label_fingerprint(const std::string& label, const ParamMap& params) {
  for (const auto& part : split_top(label, '+'))
    if (is_exceptional_label(part))
      throw UnsupportedRow("exceptional algebra in '" + label + "'");
  const Piece p = sum_piece(label, params);
  Fingerprint fp;
  fp.dim = static_cast<int>(p.dim);
  fp.center_dim = static_cast<int>(p.center);
  fp.real_rank = static_cast<int>(p.rank + p.split_center);
  fp.killing.negative = static_cast<int>(p.compact);
  fp.killing.zero = static_cast<int>(p.center);
  fp.killing.positive = static_cast<int>(p.dim - p.compact - p.center);
  return fp;
}

std::string instantiate_label(const std::string& label, const ParamMap& params) {
  std::string out;
  for (const auto& part : split_top(label, '+')) {
    if (!out.empty()) out += "+";
    Term t = parse_term(part);
    if (!t.has_args) {
      out += t.name;
      continue;
    }
    out += t.name + "(";
    if (t.name == "s") {
      out += instantiate_label(t.args.at(0), params);
    } else {
      for (std::size_t k = 0; k < t.args.size(); ++k) {
        if (k) out += ",";
        const std::string& a = t.args[k];
        if (a == "R" || a == "C" || is_exceptional_label(t.name)) out += a;
        else out += std::to_string(evaluate_integer(a, params));
      }
    }
    out += ")";
  }
  return out;
}

} // namespace vis
