#pragma once

// Machine-readable catalog of the six-dimensional strongly unimodular almost
// nilpotent Lie algebras with one-dimensional nilradical commutator, together
// with the parametric families in arbitrary even dimension, a verification
// harness (exact-rational Jacobi / strong unimodularity, attached Hermitian
// example structures), and lattice-existence tooling via integrality of
// exp(t0 D) in a rational nilradical basis.

#include "hermlie/hermitian.hpp"

#include <boost/rational.hpp>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace hermlie {

using Rational = boost::rational<long long>;

// one structure-equation term: df^k += coeff * [param] * f^i ^ f^j
// (1-based indices, i < j; the bracket picks up the opposite sign)
struct StructTerm {
  int k = 0, i = 0, j = 0;
  Rational coeff;
  std::string param;  // empty for constant coefficients
};

// admissible values of one parameter slot; three verification samples
struct ParamSlot {
  std::string name;
  std::string range;             // printed admissible range
  std::vector<double> samples;   // three admissible values
  std::vector<Rational> rational_samples;
};

// an example Hermitian structure attached from the classification lists:
// J given by pairs J f_i = s f_j (so J f_j = -(1/s) f_i), identity metric
struct ExampleStructure {
  struct JPair {
    int i = 0, j = 0;          // 1-based
    double s = 1.0;
    std::string scale_param;   // multiply s by this parameter when set
  };
  std::string label;           // e.g. "case-1 complex", "case-2 SKT"
  std::vector<JPair> pairs;
  bool claims_skt = false;
  bool claims_balanced = false;
  // when set, the structure is only attached at this parameter value
  std::string only_if_param;
  double only_if_value = 0.0;

  Eigen::MatrixXd J(int dim, const std::map<std::string, double>& params) const;
};

enum class Flag { no, yes, only_a1 };  // only_a1: the printed "a=1" cells

struct CatalogEntry {
  std::string name;     // ASCII-normalized, e.g. "s6.52_0_b"
  std::string display;  // printed structure equations
  int dim = 6;
  std::vector<StructTerm> terms;
  std::vector<ParamSlot> slots;
  std::string nilradical;  // "h3+R2", "h5", "h3+R4", "R7", ...
  Flag cpx_perp = Flag::no, cpx_sub = Flag::no;
  Flag skt_perp = Flag::no, skt_sub = Flag::no;
  Flag bal_perp = Flag::no, bal_sub = Flag::no;
  std::vector<ExampleStructure> examples;
  std::string notes;

  LieAlgebra structure(const std::map<std::string, double>& params = {}) const;
  // exact-rational structure constants c^k_{ij} at exact parameter values
  std::vector<std::vector<std::vector<Rational>>> rational_constants(
      const std::map<std::string, Rational>& params) const;
  bool jacobi_exact(const std::map<std::string, Rational>& params) const;
  bool strongly_unimodular_exact(
      const std::map<std::string, Rational>& params) const;
  // parameter maps built from sample index 0, 1 or 2 of every slot
  std::map<std::string, double> sample_params(int index) const;
  std::map<std::string, Rational> sample_rationals(int index) const;
};

// the two appendix tables (29 entries) plus the parametric families
std::vector<CatalogEntry> catalog();
const CatalogEntry& catalog_entry(const std::string& name);  // throws if unknown

struct FlagCheck {
  std::string what;      // "nijenhuis", "skt", "balanced", ...
  bool expected = false;
  double residual = 0.0;
  bool ok = false;
};

struct VerifyReport {
  std::string entry;
  bool jacobi = false;
  bool strongly_unimodular = false;
  bool nilradical_ok = false;
  std::vector<FlagCheck> checks;  // per attached example structure
  bool pass() const;
};

VerifyReport verify_entry(const CatalogEntry& e,
                          const std::map<std::string, double>& params);
// verify at all three parameter samples
std::vector<VerifyReport> verify_entry_samples(const CatalogEntry& e);

// ---- parametric families in dimension 2n ----

// df^1 = f^{23}, df^{2l} = b_l f^{2l+1} ^ f^{2n}, df^{2l+1} = -b_l f^{2l} ^ f^{2n}
LieAlgebra skt_perp_family(int n, const Eigen::VectorXd& b);
// df^1 = f^{23}, df^2 = -f^2 ^ f^{2n}, df^3 = f^3 ^ f^{2n}, rotation blocks b_l
LieAlgebra skt_sub_family(int n, const Eigen::VectorXd& b);
// almost abelian df^1 = f^1 ^ f^{2n}, one damped rotation block p, rotations q
LieAlgebra gk_family(int n, double p, double q);

// D = ad_{f_{2n}} restricted to the nilradical <f_1, ..., f_{2n-1}>
Eigen::MatrixXd nilradical_derivation(const LieAlgebra& L);

// basis change on the nilradical of skt_sub_family(n, .) making exp(t0 D)
// integral at t0 = ln(2+sqrt 3): the 3x3 head mixes f_1, f_2, f_3 and the
// tail is the identity
Eigen::MatrixXd skt_sub_lattice_basis(int n);

struct LatticeCertificate {
  Eigen::MatrixXd basis;     // columns express the new basis in the old one
  double t0 = 0.0;
  Eigen::MatrixXi exp_t0D;   // rounded integer matrix
  double deviation = 0.0;    // max distance of an entry to its integer
  bool integral = false;     // deviation < tol and |det| = 1
};

// computes basis^{-1} exp(t0 D) basis and tests integrality; throws on a
// non-invertible basis
LatticeCertificate lattice_check(const Eigen::MatrixXd& D,
                                 const Eigen::MatrixXd& basis, double t0,
                                 double tol = 1e-9);

// Krylov basis {v, Mv, M^2 v, ...} for M = exp(t0 D): in this basis exp(t0 D)
// becomes the companion matrix of its characteristic polynomial, which is the
// integer similarity model used for lattice existence
Eigen::MatrixXd companion_basis(const Eigen::MatrixXd& M);

struct GkLatticeParams {
  double p = 0.0, t0 = 0.0, q = 0.0;
};

// roots of x^3 - m x^2 + n x - 1: requires one real root lambda > 1 and a
// non-real pair; then t0 = ln lambda, p = arg(mu)/t0, q = 2 pi / t0, and
// exp(t0 diag(1, C_p - 1/2 Id)) has the prescribed characteristic polynomial
std::optional<GkLatticeParams> solve_gk_lattice_params(long long m, long long n);

}  // namespace hermlie
