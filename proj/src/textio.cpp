/* textio.cpp */
#include "feynred/textio.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>

namespace feynred {

std::string poly_to_text(const Poly& p) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  for (const auto& t : p.terms()) {
    const Int& c = t.coef;
    os << (sgn(c) < 0 ? "-" : "+");
    Int a = abs(c);
    os << a.get_str();
    for (int v = 1; v <= kMaxVars; ++v) {
      int e = t.mon.exp(v);
      if (e == 0) continue;
      os << "*a" << v;
      if (e > 1) os << "^" << e;
    }
    os << " ";
  }
  std::string s = os.str();
  if (!s.empty() && s.back() == ' ') s.pop_back();
  return s;
}

namespace {

struct Cursor {
  const std::string& s;
  std::size_t i = 0;
  void skip_ws() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool done() {
    skip_ws();
    return i >= s.size();
  }
  char peek() { return s[i]; }
};

}  // namespace

Poly poly_from_text(const std::string& s) {
  Cursor c{s};
  std::vector<Term> terms;
  c.skip_ws();
  if (!c.done() && c.peek() == '0') {
    std::size_t j = c.i + 1;
    while (j < s.size() && std::isspace(static_cast<unsigned char>(s[j]))) ++j;
    if (j >= s.size()) return Poly();
  }
  while (!c.done()) {
    int sign = 1;
    if (c.peek() == '+') {
      ++c.i;
    } else if (c.peek() == '-') {
      sign = -1;
      ++c.i;
    } else if (!terms.empty()) {
      throw std::runtime_error("expected sign in polynomial text");
    }
    c.skip_ws();
    std::string digits;
    while (!c.done() && std::isdigit(static_cast<unsigned char>(c.peek())))
      digits += s[c.i++];
    Int coef = digits.empty() ? Int(1) : Int(digits);
    if (sign < 0) coef = -coef;
    Monomial mon;
    c.skip_ws();
    while (!c.done() && (c.peek() == '*' || c.peek() == 'a')) {
      if (c.peek() == '*') {
        ++c.i;
        c.skip_ws();
      }
      if (c.done() || c.peek() != 'a')
        throw std::runtime_error("expected variable after '*'");
      ++c.i;
      std::string vd;
      while (!c.done() && std::isdigit(static_cast<unsigned char>(c.peek())))
        vd += s[c.i++];
      if (vd.empty()) throw std::runtime_error("missing variable id");
      int var = std::stoi(vd);
      int exp = 1;
      c.skip_ws();
      if (!c.done() && c.peek() == '^') {
        ++c.i;
        c.skip_ws();
        std::string ed;
        while (!c.done() && std::isdigit(static_cast<unsigned char>(c.peek())))
          ed += s[c.i++];
        if (ed.empty()) throw std::runtime_error("missing exponent");
        exp = std::stoi(ed);
      }
      mon.set_exp(var, mon.exp(var) + exp);
      c.skip_ws();
    }
    terms.push_back({mon, std::move(coef)});
  }
  return Poly::from_terms(std::move(terms));
}

std::vector<std::pair<int, int>> parse_edge_list(const std::string& text,
                                                 bool two_digit_tokens) {
  std::vector<std::pair<int, int>> edges;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    for (auto& ch : line)
      if (ch == ',') ch = ' ';
    std::istringstream ls(line);
    if (two_digit_tokens) {
      std::string tok;
      while (ls >> tok) {
        if (tok.size() != 2 || !std::isdigit((unsigned char)tok[0]) ||
            !std::isdigit((unsigned char)tok[1]))
          throw std::runtime_error("bad two-digit edge token: " + tok);
        edges.emplace_back(tok[0] - '0', tok[1] - '0');
      }
    } else {
      int u, v;
      if (ls >> u >> v) edges.emplace_back(u, v);
    }
  }
  return edges;
}

}  // namespace feynred
