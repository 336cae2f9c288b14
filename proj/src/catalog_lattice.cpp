#include "hermlie/catalog_lattice.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <stdexcept>

namespace hermlie {

namespace {

double slot_value(const std::map<std::string, double>& params, const std::string& name) {
  auto it = params.find(name);
  if (it == params.end()) throw std::invalid_argument("missing parameter: " + name);
  return it->second;
}

Rational slot_value(const std::map<std::string, Rational>& params, const std::string& name) {
  auto it = params.find(name);
  if (it == params.end()) throw std::invalid_argument("missing parameter: " + name);
  return it->second;
}

StructTerm T(int k, int i, int j, long long num, long long den = 1, std::string param = "") {
  return StructTerm{k, i, j, Rational(num, den), std::move(param)};
}

ParamSlot slot(std::string name, std::string range, std::vector<double> s,
               std::vector<Rational> rs) {
  return ParamSlot{std::move(name), std::move(range), std::move(s), std::move(rs)};
}

ExampleStructure::JPair JP(int i, int j, double s = 1.0, std::string scale = "") {
  return ExampleStructure::JPair{i, j, s, std::move(scale)};
}

}  // namespace

Eigen::MatrixXd ExampleStructure::J(int dim, const std::map<std::string, double>& params) const {
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(dim, dim);
  for (const auto& p : pairs) {
    double s = p.s;
    if (!p.scale_param.empty()) s *= slot_value(params, p.scale_param);
    M(p.j - 1, p.i - 1) = s;
    M(p.i - 1, p.j - 1) = -1.0 / s;
  }
  return M;
}

LieAlgebra CatalogEntry::structure(const std::map<std::string, double>& params) const {
  LieAlgebra L(dim);
  for (const auto& t : terms) {
    double c = boost::rational_cast<double>(t.coeff);
    if (!t.param.empty()) c *= slot_value(params, t.param);
    // df^k = c f^i ^ f^j  <=>  the f_k-component of [f_i, f_j] is -c
    L.add_bracket(t.i - 1, t.j - 1, t.k - 1, -c);
  }
  return L;
}

std::vector<std::vector<std::vector<Rational>>> CatalogEntry::rational_constants(
    const std::map<std::string, Rational>& params) const {
  std::vector<std::vector<std::vector<Rational>>> C(
      dim, std::vector<std::vector<Rational>>(dim, std::vector<Rational>(dim, Rational(0))));
  for (const auto& t : terms) {
    Rational c = t.coeff;
    if (!t.param.empty()) c *= slot_value(params, t.param);
    C[t.k - 1][t.i - 1][t.j - 1] -= c;
    C[t.k - 1][t.j - 1][t.i - 1] += c;
  }
  return C;
}

bool CatalogEntry::jacobi_exact(const std::map<std::string, Rational>& params) const {
  auto C = rational_constants(params);
  for (int i = 0; i < dim; ++i)
    for (int j = i + 1; j < dim; ++j)
      for (int k = j + 1; k < dim; ++k)
        for (int l = 0; l < dim; ++l) {
          Rational s(0);
          for (int m = 0; m < dim; ++m)
            s += C[m][i][j] * C[l][m][k] + C[m][j][k] * C[l][m][i] + C[m][k][i] * C[l][m][j];
          if (s != Rational(0)) return false;
        }
  return true;
}

bool CatalogEntry::strongly_unimodular_exact(
    const std::map<std::string, Rational>& params) const {
  // every catalog entry is n x R f_dim with nilradical n = <f_1..f_{dim-1}>
  // and commutator n^1 either <f_1> or zero; the layer traces are rational
  auto C = rational_constants(params);
  bool has_n1 = false;
  for (const auto& t : terms)
    if (t.k == 1 && t.j < dim) has_n1 = true;
  for (int x = 0; x < dim; ++x) {
    Rational tn(0);
    for (int k = 0; k < dim - 1; ++k) tn += C[k][x][k];
    Rational t1 = C[0][x][0];
    if (has_n1 && t1 != Rational(0)) return false;
    if (tn - (has_n1 ? t1 : Rational(0)) != Rational(0)) return false;
    if (has_n1 && tn != Rational(0)) return false;
  }
  return true;
}

std::map<std::string, double> CatalogEntry::sample_params(int index) const {
  std::map<std::string, double> p;
  for (const auto& s : slots)
    p[s.name] = s.samples[std::min<std::size_t>(index, s.samples.size() - 1)];
  return p;
}

std::map<std::string, Rational> CatalogEntry::sample_rationals(int index) const {
  std::map<std::string, Rational> p;
  for (const auto& s : slots)
    p[s.name] = s.rational_samples[std::min<std::size_t>(index, s.rational_samples.size() - 1)];
  return p;
}

namespace {

const std::vector<double> kPos = {0.5, 1.0, 2.0};
const std::vector<Rational> kPosQ = {Rational(1, 2), Rational(1), Rational(2)};
const std::vector<double> kUnit = {1.0, 0.5, 0.25};  // 0 < a <= 1
const std::vector<Rational> kUnitQ = {Rational(1), Rational(1, 2), Rational(1, 4)};

std::vector<CatalogEntry> build_catalog() {
  std::vector<CatalogEntry> cat;
  auto add = [&](CatalogEntry e) { cat.push_back(std::move(e)); };

  // standard perpendicular complex structure J f1 = f6, J f2 = f3, J f4 = f5
  auto perpJ = [](std::string label, bool skt, bool bal) {
    ExampleStructure ex;
    ex.label = std::move(label);
    ex.pairs = {JP(1, 6), JP(2, 3), JP(4, 5)};
    ex.claims_skt = skt;
    ex.claims_balanced = bal;
    return ex;
  };

  // ---- nilradical h3 + R2 ----
  {
    CatalogEntry e;
    e.name = "h3+s3.1_-1";
    e.display = "(f23, 0, 0, f46, -f56, 0)";
    e.terms = {T(1, 2, 3, 1), T(4, 4, 6, 1), T(5, 5, 6, -1)};
    e.nilradical = "h3+R2";
    add(e);
  }
  {
    CatalogEntry e;
    e.name = "h3+s3.3_0";
    e.display = "(f23, 0, 0, f56, -f46, 0)";
    e.terms = {T(1, 2, 3, 1), T(4, 5, 6, 1), T(5, 4, 6, -1)};
    e.nilradical = "h3+R2";
    e.cpx_perp = e.skt_perp = Flag::yes;
    e.examples = {perpJ("case-1 SKT", true, false)};
    add(e);
  }
  {
    CatalogEntry e;
    e.name = "s4.6+R2";
    e.display = "(f23, f26, -f36, 0, 0, 0)";
    e.terms = {T(1, 2, 3, 1), T(2, 2, 6, 1), T(3, 3, 6, -1)};
    e.nilradical = "h3+R2";
    e.cpx_sub = e.skt_sub = Flag::yes;
    ExampleStructure ex;
    ex.label = "case-2 SKT";
    ex.pairs = {JP(1, 2), JP(3, 6), JP(4, 5)};
    ex.claims_skt = true;
    e.examples = {ex};
    add(e);
  }
  {
    CatalogEntry e;
    e.name = "s4.7+R2";
    e.display = "(f23, f36, -f26, 0, 0, 0)";
    e.terms = {T(1, 2, 3, 1), T(2, 3, 6, 1), T(3, 2, 6, -1)};
    e.nilradical = "h3+R2";
    e.cpx_perp = e.cpx_sub = e.skt_perp = e.skt_sub = Flag::yes;
    ExampleStructure sub;
    sub.label = "case-2 SKT";
    sub.pairs = {JP(1, 4), JP(2, 3), JP(5, 6)};
    sub.claims_skt = true;
    e.examples = {perpJ("case-1 SKT", true, false), sub};
    add(e);
  }
  {
    CatalogEntry e;
    e.name = "s5.15+R";
    e.display = "(f23 + f46, f26, -f36, 0, 0, 0)";
    e.terms = {T(1, 2, 3, 1), T(1, 4, 6, 1), T(2, 2, 6, 1), T(3, 3, 6, -1)};
    e.nilradical = "h3+R2";
    add(e);
  }
  {
    CatalogEntry e;
    e.name = "s5.16+R";
    e.display = "(f23 + f46, f36, -f26, 0, 0, 0)";
    e.terms = {T(1, 2, 3, 1), T(1, 4, 6, 1), T(2, 3, 6, 1), T(3, 2, 6, -1)};
    e.nilradical = "h3+R2";
    e.cpx_sub = e.bal_sub = Flag::yes;
    ExampleStructure ex;
    ex.label = "case-2 balanced";
    ex.pairs = {JP(1, 5, -1.0), JP(2, 3), JP(4, 6, -1.0)};
    ex.claims_balanced = true;
    e.examples = {ex};
    add(e);
  }
  {
    CatalogEntry e;
    e.name = "s6.24";
    e.display = "(f23, f26, -f36, f56, 0, 0)";
    e.terms = {T(1, 2, 3, 1), T(2, 2, 6, 1), T(3, 3, 6, -1), T(4, 5, 6, 1)};
    e.nilradical = "h3+R2";
    add(e);
  }
  {
    CatalogEntry e;
    e.name = "s6.25";
    e.display = "(f23, f36, -f26, 0, f46, 0)";
    e.terms = {T(1, 2, 3, 1), T(2, 3, 6, 1), T(3, 2, 6, -1), T(5, 4, 6, 1)};
    e.nilradical = "h3+R2";
    e.cpx_sub = e.skt_sub = Flag::yes;
    ExampleStructure ex;
    ex.label = "case-2 SKT";
    ex.pairs = {JP(1, 5, -1.0), JP(2, 3), JP(4, 6)};
    ex.claims_skt = true;
    e.examples = {ex};
    add(e);
  }
  {
    CatalogEntry e;
    e.name = "s6.30";
    e.display = "(f23 + f56, f26, -f36, 0, f46, 0)";
    e.terms = {T(1, 2, 3, 1), T(1, 5, 6, 1), T(2, 2, 6, 1), T(3, 3, 6, -1), T(5, 4, 6, 1)};
    e.nilradical = "h3+R2";
    add(e);
  }
  {
    CatalogEntry e;
    e.name = "s6.31";
    e.display = "(f23 + f56, f36, -f26, 0, f46, 0)";
    e.terms = {T(1, 2, 3, 1), T(1, 5, 6, 1), T(2, 3, 6, 1), T(3, 2, 6, -1), T(5, 4, 6, 1)};
    e.nilradical = "h3+R2";
    add(e);
  }
  {
    CatalogEntry e;
    e.name = "s6.32_-1";
    e.display = "(f23, f36, 0, f46, -f56, 0)";
    e.terms = {T(1, 2, 3, 1), T(2, 3, 6, 1), T(4, 4, 6, 1), T(5, 5, 6, -1)};
    e.nilradical = "h3+R2";
    add(e);
  }
  {
    CatalogEntry e;
    e.name = "s6.34_0";
    e.display = "(f23, f36, 0, f56, -f46, 0)";
    e.terms = {T(1, 2, 3, 1), T(2, 3, 6, 1), T(4, 5, 6, 1), T(5, 4, 6, -1)};
    e.nilradical = "h3+R2";
    add(e);
  }
  {
    CatalogEntry e;
    e.name = "s6.43";
    e.display = "(f23, f26, -f36, f26 + f46, f36 - f56, 0)";
    e.terms = {T(1, 2, 3, 1), T(2, 2, 6, 1), T(3, 3, 6, -1),
               T(4, 2, 6, 1), T(4, 4, 6, 1), T(5, 3, 6, 1), T(5, 5, 6, -1)};
    e.nilradical = "h3+R2";
    add(e);
  }
  {
    CatalogEntry e;
    e.name = "s6.44";
    e.display = "(f23, f36, -f26, f26 + f56, f36 - f46, 0)";
    e.terms = {T(1, 2, 3, 1), T(2, 3, 6, 1), T(3, 2, 6, -1),
               T(4, 2, 6, 1), T(4, 5, 6, 1), T(5, 3, 6, 1), T(5, 4, 6, -1)};
    e.nilradical = "h3+R2";
    e.cpx_perp = Flag::yes;
    e.examples = {perpJ("case-1 complex", false, false)};
    add(e);
  }
  {
    CatalogEntry e;
    e.name = "s6.45_a_-1";
    e.display = "(f23, a f26, -a f36, f46, -f56, 0)";
    e.terms = {T(1, 2, 3, 1), T(2, 2, 6, 1, 1, "a"), T(3, 3, 6, -1, 1, "a"),
               T(4, 4, 6, 1), T(5, 5, 6, -1)};
    e.slots = {slot("a", "a > 0", kPos, kPosQ)};
    e.nilradical = "h3+R2";
    add(e);
  }
  {
    CatalogEntry e;
    e.name = "s6.46_a_-a";
    e.display = "(f23, f36, -f26, a f46, -a f56, 0)";
    e.terms = {T(1, 2, 3, 1), T(2, 3, 6, 1), T(3, 2, 6, -1),
               T(4, 4, 6, 1, 1, "a"), T(5, 5, 6, -1, 1, "a")};
    e.slots = {slot("a", "a != 0", {1.0, -1.5, 0.5},
                    {Rational(1), Rational(-3, 2), Rational(1, 2)})};
    e.nilradical = "h3+R2";
    add(e);
  }
  {
    CatalogEntry e;
    e.name = "s6.47_-1";
    e.display = "(f23, -f26, f36, f36 + f46, -f56, 0)";
    e.terms = {T(1, 2, 3, 1), T(2, 2, 6, -1), T(3, 3, 6, 1),
               T(4, 3, 6, 1), T(4, 4, 6, 1), T(5, 5, 6, -1)};
    e.nilradical = "h3+R2";
    add(e);
  }
  {
    CatalogEntry e;
    e.name = "s6.51_a_0";
    e.display = "(f23, a f26, -a f36, f56, -f46, 0)";
    e.terms = {T(1, 2, 3, 1), T(2, 2, 6, 1, 1, "a"), T(3, 3, 6, -1, 1, "a"),
               T(4, 5, 6, 1), T(5, 4, 6, -1)};
    e.slots = {slot("a", "a > 0", kPos, kPosQ)};
    e.nilradical = "h3+R2";
    e.cpx_sub = e.skt_sub = Flag::yes;
    ExampleStructure ex;
    ex.label = "case-2 SKT";
    ex.pairs = {JP(1, 2, 1.0, "a"), JP(3, 6), JP(4, 5)};
    ex.claims_skt = true;
    e.examples = {ex};
    add(e);
  }
  {
    CatalogEntry e;
    e.name = "s6.52_0_b";
    e.display = "(f23, f36, -f26, b f56, -b f46, 0)";
    e.terms = {T(1, 2, 3, 1), T(2, 3, 6, 1), T(3, 2, 6, -1),
               T(4, 5, 6, 1, 1, "b"), T(5, 4, 6, -1, 1, "b")};
    e.slots = {slot("b", "b > 0", kPos, kPosQ)};
    e.nilradical = "h3+R2";
    e.cpx_perp = e.skt_perp = Flag::yes;
    e.examples = {perpJ("case-1 SKT", true, false)};
    add(e);
  }

  // ---- nilradical h5 ----
  {
    CatalogEntry e;
    e.name = "s6.158";
    e.display = "(f24 + f35, 0, f36, 0, -f56, 0)";
    e.terms = {T(1, 2, 4, 1), T(1, 3, 5, 1), T(3, 3, 6, 1), T(5, 5, 6, -1)};
    e.nilradical = "h5";
    e.cpx_sub = e.skt_sub = Flag::yes;
    ExampleStructure ex;
    ex.label = "case-2 SKT";
    ex.pairs = {JP(1, 3), JP(2, 4), JP(5, 6)};
    ex.claims_skt = true;
    e.examples = {ex};
    add(e);
  }
  {
    CatalogEntry e;
    e.name = "s6.159";
    e.display = "(f24 + f35, 0, f56, 0, -f36, 0)";
    e.terms = {T(1, 2, 4, 1), T(1, 3, 5, 1), T(3, 5, 6, 1), T(5, 3, 6, -1)};
    e.nilradical = "h5";
    e.cpx_perp = e.bal_perp = Flag::yes;
    ExampleStructure ex;
    ex.label = "case-1 balanced";
    ex.pairs = {JP(1, 6, -1.0), JP(2, 4, -1.0), JP(3, 5)};
    ex.claims_balanced = true;
    e.examples = {ex};
    add(e);
  }
  {
    CatalogEntry e;
    e.name = "s6.160";
    e.display = "(f24 + f35, f46, f36, 0, -f56, 0)";
    e.terms = {T(1, 2, 4, 1), T(1, 3, 5, 1), T(2, 4, 6, 1), T(3, 3, 6, 1), T(5, 5, 6, -1)};
    e.nilradical = "h5";
    add(e);
  }
  {
    CatalogEntry e;
    e.name = "s6.161_eps";
    e.display = "(f24 + f35, eps f46, f56, 0, f36, 0)";
    e.terms = {T(1, 2, 4, 1), T(1, 3, 5, 1), T(2, 4, 6, 1, 1, "eps"),
               T(3, 5, 6, 1), T(5, 3, 6, 1)};
    e.slots = {slot("eps", "eps = +/-1", {-1.0, 1.0, -1.0},
                    {Rational(-1), Rational(1), Rational(-1)})};
    e.nilradical = "h5";
    add(e);
  }
  {
    CatalogEntry e;
    e.name = "s6.162_a";
    e.display = "(f24 + f35, f26, a f36, -f46, -a f56, 0)";
    e.terms = {T(1, 2, 4, 1), T(1, 3, 5, 1), T(2, 2, 6, 1), T(3, 3, 6, 1, 1, "a"),
               T(4, 4, 6, -1), T(5, 5, 6, -1, 1, "a")};
    e.slots = {slot("a", "0 < a <= 1", kUnit, kUnitQ)};
    e.nilradical = "h5";
    e.cpx_perp = e.bal_perp = Flag::only_a1;
    ExampleStructure ex = perpJ("case-1 balanced (a = 1)", false, true);
    ex.only_if_param = "a";
    ex.only_if_value = 1.0;
    e.examples = {ex};
    add(e);
  }
  {
    CatalogEntry e;
    e.name = "s6.163";
    e.display = "(f24 + f35, f26, f26 + f36, -f46 - f56, -f56, 0)";
    e.terms = {T(1, 2, 4, 1), T(1, 3, 5, 1), T(2, 2, 6, 1), T(3, 2, 6, 1), T(3, 3, 6, 1),
               T(4, 4, 6, -1), T(4, 5, 6, -1), T(5, 5, 6, -1)};
    e.nilradical = "h5";
    add(e);
  }
  {
    CatalogEntry e;
    e.name = "s6.164_a";
    e.display = "(f24 + f35, a f26, f56, -a f46, -f36, 0)";
    e.terms = {T(1, 2, 4, 1), T(1, 3, 5, 1), T(2, 2, 6, 1, 1, "a"), T(3, 5, 6, 1),
               T(4, 4, 6, -1, 1, "a"), T(5, 3, 6, -1)};
    e.slots = {slot("a", "a > 0", kPos, kPosQ)};
    e.nilradical = "h5";
    e.cpx_sub = e.skt_sub = Flag::yes;
    ExampleStructure ex;
    ex.label = "case-2 SKT";
    ex.pairs = {JP(1, 2, 1.0, "a"), JP(3, 5), JP(4, 6)};
    ex.claims_skt = true;
    e.examples = {ex};
    add(e);
  }
  {
    CatalogEntry e;
    e.name = "s6.165_a";
    e.display = "(f24 + f35, a f26 + f36, -f26 + a f36, -a f46 + f56, -f46 - a f56, 0)";
    e.terms = {T(1, 2, 4, 1), T(1, 3, 5, 1),
               T(2, 2, 6, 1, 1, "a"), T(2, 3, 6, 1), T(3, 2, 6, -1), T(3, 3, 6, 1, 1, "a"),
               T(4, 4, 6, -1, 1, "a"), T(4, 5, 6, 1), T(5, 4, 6, -1), T(5, 5, 6, -1, 1, "a")};
    e.slots = {slot("a", "a > 0", kPos, kPosQ)};
    e.nilradical = "h5";
    e.cpx_perp = e.bal_perp = Flag::yes;
    e.examples = {perpJ("case-1 balanced", false, true)};
    add(e);
  }
  {
    CatalogEntry e;
    e.name = "s6.166_a";
    e.display = "(f24 + f35, f46, a f56, -f26, -a f36, 0)";
    e.terms = {T(1, 2, 4, 1), T(1, 3, 5, 1), T(2, 4, 6, 1), T(3, 5, 6, 1, 1, "a"),
               T(4, 2, 6, -1), T(5, 3, 6, -1, 1, "a")};
    e.slots = {slot("a", "0 < |a| <= 1", {1.0, -1.0, 0.5},
                    {Rational(1), Rational(-1), Rational(1, 2)})};
    e.nilradical = "h5";
    e.cpx_perp = e.bal_perp = Flag::yes;
    ExampleStructure ex;
    ex.label = "case-1 balanced";
    ex.pairs = {JP(1, 6, -1.0), JP(2, 4, -1.0), JP(3, 5)};
    ex.claims_balanced = true;
    e.examples = {ex};
    e.notes =
        "table marks balanced case-1 existence over the whole range 0 < |a| <= 1, "
        "while the holomorphic-form remark singles out a = 1; flags follow the table";
    add(e);
  }
  {
    CatalogEntry e;
    e.name = "s6.167";
    e.display = "(f24 + f35, f36, -f26, f26 + f56, f36 - f46, 0)";
    e.terms = {T(1, 2, 4, 1), T(1, 3, 5, 1), T(2, 3, 6, 1), T(3, 2, 6, -1),
               T(4, 2, 6, 1), T(4, 5, 6, 1), T(5, 3, 6, 1), T(5, 4, 6, -1)};
    e.nilradical = "h5";
    e.cpx_perp = e.bal_perp = Flag::yes;
    e.examples = {perpJ("case-1 balanced", false, true)};
    add(e);
  }

  // ---- parametric families ----
  {
    CatalogEntry e;
    e.name = "skt-perp-family";
    e.display = "(f23, b1 f36, -b1 f26, b2 f56, -b2 f46, 0)";
    e.terms = {T(1, 2, 3, 1), T(2, 3, 6, 1, 1, "b1"), T(3, 2, 6, -1, 1, "b1"),
               T(4, 5, 6, 1, 1, "b2"), T(5, 4, 6, -1, 1, "b2")};
    e.slots = {slot("b1", "real", {1.0, 2.0, 0.5}, {Rational(1), Rational(2), Rational(1, 2)}),
               slot("b2", "real", {2.0, 1.0, 0.5}, {Rational(2), Rational(1), Rational(1, 2)})};
    e.nilradical = "h3+R2";
    e.cpx_perp = e.skt_perp = Flag::yes;
    e.examples = {perpJ("case-1 SKT", true, false)};
    e.notes = "SKT family with J perpendicular to the nilradical, dimension 6 slice";
    add(e);
  }
  {
    CatalogEntry e;
    e.name = "skt-sub-family";
    e.dim = 8;
    e.display = "(f23, -f28, f38, b1 f58, -b1 f48, b2 f78, -b2 f68, 0)";
    e.terms = {T(1, 2, 3, 1), T(2, 2, 8, -1), T(3, 3, 8, 1),
               T(4, 5, 8, 1, 1, "b1"), T(5, 4, 8, -1, 1, "b1"),
               T(6, 7, 8, 1, 1, "b2"), T(7, 6, 8, -1, 1, "b2")};
    e.slots = {slot("b1", "real", {1.0, 2.0, 0.5}, {Rational(1), Rational(2), Rational(1, 2)}),
               slot("b2", "real", {2.0, 1.0, 0.5}, {Rational(2), Rational(1), Rational(1, 2)})};
    e.nilradical = "h3+R4";
    e.cpx_sub = e.skt_sub = Flag::yes;
    ExampleStructure ex;
    ex.label = "case-2 SKT";
    ex.pairs = {JP(1, 2, -1.0), JP(3, 8), JP(4, 5), JP(6, 7)};
    ex.claims_skt = true;
    e.examples = {ex};
    e.notes = "SKT family with J preserving the nilradical, dimension 8 slice";
    add(e);
  }
  {
    CatalogEntry e;
    e.name = "gk-family";
    e.dim = 8;
    e.display =
        "(f18, -1/2 f28 + p f38, -p f28 - 1/2 f38, q f58, -q f48, q f78, -q f68, 0)";
    e.terms = {T(1, 1, 8, 1),
               T(2, 2, 8, -1, 2), T(2, 3, 8, 1, 1, "p"),
               T(3, 2, 8, -1, 1, "p"), T(3, 3, 8, -1, 2),
               T(4, 5, 8, 1, 1, "q"), T(5, 4, 8, -1, 1, "q"),
               T(6, 7, 8, 1, 1, "q"), T(7, 6, 8, -1, 1, "q")};
    e.slots = {slot("p", "real", kPos, kPosQ), slot("q", "q != 0", kPos, kPosQ)};
    e.nilradical = "R7";
    e.cpx_perp = e.skt_perp = Flag::yes;
    ExampleStructure ex;
    ex.label = "generalized Kaehler (J+)";
    ex.pairs = {JP(1, 8), JP(2, 3), JP(4, 5), JP(6, 7, -1.0)};
    ex.claims_skt = true;
    e.examples = {ex};
    e.notes = "almost abelian generalized Kaehler family, dimension 8 slice";
    add(e);
  }

  return cat;
}

}  // namespace

std::vector<CatalogEntry> catalog() {
  static const std::vector<CatalogEntry> cat = build_catalog();
  return cat;
}

const CatalogEntry& catalog_entry(const std::string& name) {
  static const std::vector<CatalogEntry> cat = build_catalog();
  for (const auto& e : cat)
    if (e.name == name) return e;
  throw std::invalid_argument("unknown catalog entry: " + name);
}

bool VerifyReport::pass() const {
  if (!jacobi || !strongly_unimodular || !nilradical_ok) return false;
  for (const auto& c : checks)
    if (!c.ok) return false;
  return true;
}

namespace {

// rank of the n^1-valued commutator form on the nilradical (0 for abelian,
// 2 for h3 + R^{2k}, 4 for h5)
int commutator_form_rank(const LieAlgebra& L) {
  int d = L.n - 1;
  Eigen::MatrixXd B = L.C[0].topLeftCorner(d, d);
  return Eigen::FullPivLU<Eigen::MatrixXd>(B).setThreshold(1e-8).rank();
}

}  // namespace

VerifyReport verify_entry(const CatalogEntry& e, const std::map<std::string, double>& params) {
  VerifyReport r;
  r.entry = e.name;
  LieAlgebra L = e.structure(params);
  r.jacobi = jacobi_residual(L) < 1e-10;

  int d = e.dim - 1;
  Eigen::MatrixXd nil = Eigen::MatrixXd::Identity(e.dim, e.dim).leftCols(d);
  r.strongly_unimodular = is_strongly_unimodular(L, nil).strongly_unimodular;

  Filtration f = descending_central_series(L, nil);
  auto dims = f.dims();
  int rank = commutator_form_rank(L);
  if (e.nilradical == "h3+R2")
    r.nilradical_ok = dims.size() >= 2 && dims[0] == 5 && dims[1] == 1 && rank == 2;
  else if (e.nilradical == "h5")
    r.nilradical_ok = dims.size() >= 2 && dims[0] == 5 && dims[1] == 1 && rank == 4;
  else if (e.nilradical == "h3+R4")
    r.nilradical_ok = dims.size() >= 2 && dims[0] == 7 && dims[1] == 1 && rank == 2;
  else if (e.nilradical == "R5" || e.nilradical == "R7")
    r.nilradical_ok = dims.size() >= 2 && dims[1] == 0;
  else
    r.nilradical_ok = false;

  const double claim_tol = 1e-12, refute_tol = 1e-6;
  for (const auto& ex : e.examples) {
    if (!ex.only_if_param.empty() &&
        std::abs(slot_value(params, ex.only_if_param) - ex.only_if_value) > 1e-12)
      continue;
    HermitianStructure H{L, ex.J(e.dim, params),
                         Metric{Eigen::MatrixXd::Identity(e.dim, e.dim)}};
    auto push = [&](const std::string& what, bool expected, double res) {
      FlagCheck c;
      c.what = ex.label + ": " + what;
      c.expected = expected;
      c.residual = res;
      c.ok = expected ? (res < claim_tol) : (res > refute_tol);
      r.checks.push_back(c);
    };
    push("nijenhuis", true, nijenhuis_residual(H));
    push("skt", ex.claims_skt, skt_residual(H));
    push("balanced", ex.claims_balanced, balanced_residual(H));
  }
  return r;
}

std::vector<VerifyReport> verify_entry_samples(const CatalogEntry& e) {
  std::vector<VerifyReport> out;
  for (int s = 0; s < 3; ++s) out.push_back(verify_entry(e, e.sample_params(s)));
  return out;
}

LieAlgebra skt_perp_family(int n, const Eigen::VectorXd& b) {
  if (n < 2 || b.size() != n - 1) throw std::invalid_argument("skt_perp_family: need n-1 slopes");
  LieAlgebra L(2 * n);
  int last = 2 * n - 1;
  L.add_bracket(1, 2, 0, -1.0);  // df^1 = f^{23}
  for (int l = 1; l <= n - 1; ++l) {
    // df^{2l} = b_l f^{2l+1, 2n}, df^{2l+1} = -b_l f^{2l, 2n}
    L.add_bracket(2 * l, last, 2 * l - 1, -b(l - 1));
    L.add_bracket(2 * l - 1, last, 2 * l, b(l - 1));
  }
  return L;
}

LieAlgebra skt_sub_family(int n, const Eigen::VectorXd& b) {
  if (n < 3 || b.size() != n - 2) throw std::invalid_argument("skt_sub_family: need n-2 slopes");
  LieAlgebra L(2 * n);
  int last = 2 * n - 1;
  L.add_bracket(1, 2, 0, -1.0);   // df^1 = f^{23}
  L.add_bracket(1, last, 1, 1.0); // df^2 = -f^{2,2n}
  L.add_bracket(2, last, 2, -1.0);// df^3 = f^{3,2n}
  for (int l = 1; l <= n - 2; ++l) {
    // df^{2l+2} = b_l f^{2l+3, 2n}, df^{2l+3} = -b_l f^{2l+2, 2n}
    L.add_bracket(2 * l + 2, last, 2 * l + 1, -b(l - 1));
    L.add_bracket(2 * l + 1, last, 2 * l + 2, b(l - 1));
  }
  return L;
}

LieAlgebra gk_family(int n, double p, double q) {
  if (n < 3) throw std::invalid_argument("gk_family: need n >= 3");
  LieAlgebra L(2 * n);
  int last = 2 * n - 1;
  L.add_bracket(0, last, 0, -1.0);         // df^1 = f^{1,2n}
  L.add_bracket(1, last, 1, 0.5);          // df^2 = -1/2 f^{2,2n} + p f^{3,2n}
  L.add_bracket(2, last, 1, -p);
  L.add_bracket(1, last, 2, p);            // df^3 = -p f^{2,2n} - 1/2 f^{3,2n}
  L.add_bracket(2, last, 2, 0.5);
  for (int l = 1; l <= n - 2; ++l) {
    L.add_bracket(2 * l + 2, last, 2 * l + 1, -q);
    L.add_bracket(2 * l + 1, last, 2 * l + 2, q);
  }
  return L;
}

Eigen::MatrixXd nilradical_derivation(const LieAlgebra& L) {
  int d = L.n - 1;
  return L.ad(L.n - 1).topLeftCorner(d, d);
}

Eigen::MatrixXd skt_sub_lattice_basis(int n) {
  int d = 2 * n - 1;
  Eigen::MatrixXd B = Eigen::MatrixXd::Identity(d, d);
  const double s3 = std::sqrt(3.0);
  B(0, 0) = -s3 / 6.0;
  B(1, 1) = -s3 / 6.0;
  B(2, 1) = s3 / 6.0;
  B(1, 2) = 0.5 - s3 / 3.0;
  B(2, 2) = 0.5 + s3 / 3.0;
  B(0, 1) = B(0, 2) = B(1, 0) = B(2, 0) = 0.0;
  return B;
}

LatticeCertificate lattice_check(const Eigen::MatrixXd& D, const Eigen::MatrixXd& basis,
                                 double t0, double tol) {
  LatticeCertificate cert;
  cert.basis = basis;
  cert.t0 = t0;
  Eigen::FullPivLU<Eigen::MatrixXd> lu(basis);
  if (!lu.isInvertible()) throw std::invalid_argument("lattice_check: basis not invertible");
  Eigen::MatrixXd M = lu.solve(matrix_exp(t0 * D) * basis);
  Eigen::MatrixXd R = M.array().round();
  cert.exp_t0D = R.cast<int>();
  cert.deviation = (M - R).cwiseAbs().maxCoeff();
  long long det = std::llround(R.determinant());
  cert.integral = cert.deviation < tol && (det == 1 || det == -1);
  return cert;
}

Eigen::MatrixXd companion_basis(const Eigen::MatrixXd& M) {
  int d = static_cast<int>(M.rows());
  // a handful of deterministic seed vectors; generic v makes the Krylov
  // matrix invertible whenever the minimal polynomial has full degree
  for (int trial = 0; trial < d + 3; ++trial) {
    Eigen::VectorXd v = Eigen::VectorXd::Ones(d);
    for (int i = 0; i < d; ++i) v(i) += trial * (i + 1) * 0.37;
    Eigen::MatrixXd K(d, d);
    Eigen::VectorXd w = v;
    for (int j = 0; j < d; ++j) {
      K.col(j) = w;
      w = M * w;
    }
    if (Eigen::FullPivLU<Eigen::MatrixXd>(K).isInvertible()) return K;
  }
  throw std::runtime_error("companion_basis: no cyclic vector found");
}

std::optional<GkLatticeParams> solve_gk_lattice_params(long long m, long long n) {
  // companion matrix of x^3 - m x^2 + n x - 1
  Eigen::Matrix3d A = Eigen::Matrix3d::Zero();
  A(0, 2) = 1.0;
  A(1, 0) = 1.0;
  A(1, 2) = -static_cast<double>(n);
  A(2, 1) = 1.0;
  A(2, 2) = static_cast<double>(m);
  Eigen::EigenSolver<Eigen::Matrix3d> es(A);
  std::optional<double> lambda;
  std::optional<std::complex<double>> mu;
  for (int i = 0; i < 3; ++i) {
    std::complex<double> z = es.eigenvalues()(i);
    if (std::abs(z.imag()) < 1e-10)
      lambda = z.real();
    else if (z.imag() > 0)
      mu = z;
  }
  if (!lambda || !mu || *lambda <= 1.0 + 1e-9) return std::nullopt;
  GkLatticeParams out;
  out.t0 = std::log(*lambda);
  out.p = std::arg(*mu) / out.t0;
  out.q = 2.0 * M_PI / out.t0;
  // consistency: the three eigenvalues of exp(t0 diag(1, C_p - 1/2 Id)) must
  // reproduce the integer characteristic polynomial
  double sigma1 = *lambda + 2.0 * std::real(*mu);
  double sigma2 = std::norm(*mu) + 2.0 * *lambda * std::real(*mu);
  if (std::abs(sigma1 - static_cast<double>(m)) > 1e-9 ||
      std::abs(sigma2 - static_cast<double>(n)) > 1e-9)
    return std::nullopt;
  return out;
}

}  // namespace hermlie
