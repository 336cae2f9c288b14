#include "hermlie/parse.hpp"

#include "json.hpp"

#include <cctype>
#include <sstream>

namespace hermlie {

namespace {

struct Cursor {
  const std::string& s;
  size_t pos = 0;
  int line = 1, col = 1;

  bool done() const { return pos >= s.size(); }
  char peek() const { return done() ? '\0' : s[pos]; }
  char get() {
    char c = s[pos++];
    if (c == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    return c;
  }
  void skip_ws() {
    while (!done() && std::isspace(static_cast<unsigned char>(peek()))) get();
  }
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, line, col); }
  void expect(char c) {
    skip_ws();
    if (peek() != c) fail(std::string("expected '") + c + "'");
    get();
  }
};

double parse_number(Cursor& cur) {
  cur.skip_ws();
  size_t start = cur.pos;
  if (cur.peek() == '+' || cur.peek() == '-') cur.get();
  bool any = false;
  while (!cur.done() && (std::isdigit(static_cast<unsigned char>(cur.peek())) ||
                         cur.peek() == '.' || cur.peek() == 'e' || cur.peek() == 'E'))
    cur.get(), any = true;
  if (!any) cur.fail("expected a number");
  // allow fractions like 1/2
  double v = std::stod(cur.s.substr(start, cur.pos - start));
  if (cur.peek() == '/') {
    cur.get();
    size_t dstart = cur.pos;
    while (!cur.done() && std::isdigit(static_cast<unsigned char>(cur.peek()))) cur.get();
    if (dstart == cur.pos) cur.fail("expected denominator");
    v /= std::stod(cur.s.substr(dstart, cur.pos - dstart));
  }
  return v;
}

// one summand: [sign][coeff][f^{ij}] ; returns (coeff, i, j), 1-based, or
// (coeff, 0, 0) for the constant 0
struct Term {
  double c;
  int i, j;
};

Term parse_term(Cursor& cur) {
  cur.skip_ws();
  double sign = 1.0;
  while (cur.peek() == '+' || cur.peek() == '-') {
    if (cur.get() == '-') sign = -sign;
    cur.skip_ws();
  }
  double coeff = sign;
  if (std::isdigit(static_cast<unsigned char>(cur.peek())) || cur.peek() == '.') {
    coeff = sign * parse_number(cur);
    cur.skip_ws();
    if (cur.peek() == '*') cur.get();
    cur.skip_ws();
  }
  if (cur.peek() != 'f' && cur.peek() != 'e') {
    // bare constant; only 0 is meaningful in structure equations
    if (coeff != 0.0) cur.fail("only the constant 0 is allowed without a form symbol");
    return {0.0, 0, 0};
  }
  cur.get();  // consume symbol
  cur.expect('^');
  cur.expect('{');
  // collect brace content; "f^{23}" reads as single-digit indices, while a
  // comma anywhere ("f^{2,10}") switches to comma-separated whole numbers
  std::string content;
  while (!cur.done() && cur.peek() != '}') content.push_back(cur.get());
  if (cur.done()) cur.fail("unterminated index braces");
  cur.get();  // '}'
  std::vector<int> idx;
  if (content.find(',') != std::string::npos) {
    std::stringstream ss(content);
    std::string piece;
    while (std::getline(ss, piece, ',')) {
      try {
        idx.push_back(std::stoi(piece));
      } catch (...) {
        cur.fail("bad index '" + piece + "'");
      }
    }
  } else {
    for (char d : content) {
      if (!std::isdigit(static_cast<unsigned char>(d))) cur.fail("expected index digit");
      idx.push_back(d - '0');
    }
  }
  if (idx.size() != 2) cur.fail("structure-equation terms must be 2-forms f^{ij}");
  return {coeff, idx[0], idx[1]};
}

}  // namespace

LieAlgebra parse_algebra_tuple(const std::string& text) {
  Cursor cur{text};
  cur.expect('(');
  std::vector<std::vector<Term>> entries;
  while (true) {
    std::vector<Term> sum;
    cur.skip_ws();
    while (true) {
      Term t = parse_term(cur);
      if (t.i != 0) sum.push_back(t);
      cur.skip_ws();
      if (cur.peek() == '+' || cur.peek() == '-') continue;
      break;
    }
    entries.push_back(sum);
    cur.skip_ws();
    if (cur.peek() == ',') {
      cur.get();
      continue;
    }
    cur.expect(')');
    break;
  }
  int n = static_cast<int>(entries.size());
  LieAlgebra L(n);
  for (int k = 0; k < n; ++k)
    for (const Term& t : entries[k]) {
      if (t.i < 1 || t.i > n || t.j < 1 || t.j > n)
        throw ParseError("index out of range in df^" + std::to_string(k + 1), 1, 1);
      // df^k = c f^{ij}  <=>  [f_i, f_j] -= c f_k  (d alpha = -alpha([.,.]))
      L.add_bracket(t.i - 1, t.j - 1, k, -t.c);
    }
  return L;
}

LieAlgebra parse_algebra_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("JSON: ") + e.what(), 1, static_cast<int>(e.byte));
  }
  if (!j.contains("dim") || !j["dim"].is_number_integer())
    throw ParseError("JSON: missing integer field \"dim\"", 1, 1);
  int n = j["dim"].get<int>();
  LieAlgebra L(n);
  for (const auto& b : j.value("brackets", nlohmann::json::array())) {
    int i = b.at("i").get<int>(), jj = b.at("j").get<int>(), k = b.at("k").get<int>();
    double c = b.at("c").get<double>();
    if (i < 1 || i > n || jj < 1 || jj > n || k < 1 || k > n)
      throw ParseError("JSON: bracket index out of range", 1, 1);
    L.add_bracket(i - 1, jj - 1, k - 1, c);
  }
  return L;
}

LieAlgebra parse_algebra(const std::string& text) {
  size_t p = text.find_first_not_of(" \t\r\n");
  if (p == std::string::npos) throw ParseError("empty input", 1, 1);
  if (text[p] == '{') return parse_algebra_json(text);
  if (text[p] == '(') return parse_algebra_tuple(text);
  throw ParseError("input must start with '{' (JSON) or '(' (tuple)", 1, 1);
}

std::string print_algebra_json(const LieAlgebra& L) {
  nlohmann::json j;
  j["dim"] = L.n;
  j["brackets"] = nlohmann::json::array();
  for (int i = 0; i < L.n; ++i)
    for (int jj = i + 1; jj < L.n; ++jj)
      for (int k = 0; k < L.n; ++k)
        if (L.C[k](i, jj) != 0.0)
          j["brackets"].push_back({{"i", i + 1}, {"j", jj + 1}, {"k", k + 1},
                                   {"c", L.C[k](i, jj)}});
  return j.dump(2);
}

std::string print_algebra_tuple(const LieAlgebra& L) {
  std::ostringstream out;
  out << "(";
  for (int k = 0; k < L.n; ++k) {
    if (k) out << ", ";
    bool first = true;
    for (int i = 0; i < L.n; ++i)
      for (int j = i + 1; j < L.n; ++j) {
        double c = -L.C[k](i, j);  // df^k coefficient on f^{i+1,j+1}
        if (c == 0.0) continue;
        if (c > 0 && !first) out << "+";
        if (c == -1.0)
          out << "-";
        else if (c != 1.0)
          out << c;
        if (i + 1 <= 9 && j + 1 <= 9)
          out << "f^{" << (i + 1) << (j + 1) << "}";
        else
          out << "f^{" << (i + 1) << "," << (j + 1) << "}";
        first = false;
      }
    if (first) out << "0";
  }
  out << ")";
  return out.str();
}

}  // namespace hermlie
