#pragma once

// Complexification of (g, J), generalized Kahler verification and
// holomorphic Poisson structures: the Cauchy-Riemann operator on
// (2,0)-bivectors, the Schouten bracket and kernel extraction.
//
// All complex arithmetic is realized over std::complex<double> pairs of
// reals; nothing here assumes a complex-scalar linear algebra substrate
// beyond Eigen's complex types.

#include "hermlie/hermitian.hpp"

namespace hermlie {

// g (x) C in the basis {Z_1,...,Z_n, Zbar_1,...,Zbar_n} with Z_l = u_l - iJu_l
// for real basis vectors u_l picked greedily from e_1, e_2, ... so that
// {u_l, Ju_l} is a real basis. For Je_1 = e_6, Je_2 = e_3, Je_4 = e_5 this
// reproduces Z_1 = e_1 - ie_6, Z_2 = e_2 - ie_3, Z_3 = e_4 - ie_5.
struct ComplexifiedAlgebra {
  LieAlgebra L;
  Eigen::MatrixXd J;
  int n = 0;                         // complex dimension
  std::vector<int> base;             // indices of the chosen u_l
  Eigen::MatrixXcd T, Tinv;          // columns of T: Z_1..Z_n, Zbar_1..Zbar_n
  std::vector<Eigen::MatrixXcd> Cc;  // [W_a, W_b] = sum_k Cc[k](a,b) W_k

  ComplexifiedAlgebra(const LieAlgebra& L_, const Eigen::MatrixXd& J_, double tol = 1e-9);

  // complex-bilinear bracket in W coordinates
  Eigen::VectorXcd bracket(const Eigen::VectorXcd& u, const Eigen::VectorXcd& v) const;

  // max over basis pairs of |conj([W_a, W_b]) - [conj W_a, conj W_b]|
  double conjugation_residual() const;

  // max norm of the (0,1)-part of [Z_k, Z_l]; zero iff J is integrable
  double holomorphy_residual() const;
};

// Element of Lambda^2 g^{1,0}: complex coefficients over Z_k ^ Z_l, k < l.
struct Bivector20 {
  int n = 0;     // complex dimension
  KFormC c;      // AltTensor over {Z_1,...,Z_n}, degree 2

  Bivector20() = default;
  explicit Bivector20(int n_) : n(n_), c(n_, 2) {}

  static Bivector20 basis(int n, int k, int l);  // Z_k ^ Z_l, 0-based

  double norm() const { return c.norm(); }
};

struct GKStructure {
  LieAlgebra L;
  Eigen::MatrixXd Jp, Jm;  // J_+ and J_-
  Metric g;

  HermitianStructure plus() const { return HermitianStructure{L, Jp, g}; }
  HermitianStructure minus() const { return HermitianStructure{L, Jm, g}; }
};

// ||d^c_+ omega_+ + d^c_- omega_-|| + ||d(d^c_+ omega_+)||; zero iff the
// triple is generalized Kahler. Throws std::invalid_argument naming the
// offending side if either J is non-integrable or not g-orthogonal.
double gk_residual(const GKStructure& S, double tol = 1e-8);

struct SplitReport {
  bool split = false;
  Eigen::MatrixXd commutator;       // [J_+, J_-] as an endomorphism
  // coefficient matrix B of the bivector [J_+, J_-] g^{-1} = sum_{i<j} B_ij e_i ^ e_j
  Eigen::MatrixXd bivector;
  double commutator_norm = 0.0;
};
SplitReport is_split(const GKStructure& S, double tol = 1e-9);

// (2,0)-part (w.r.t. J_+) of the bivector [J_+, J_-] g^{-1}; zero for split
// structures. For a generalized Kahler triple this is holomorphic Poisson.
Bivector20 poisson_candidate(const GKStructure& S);

// dbar_X(Y ^ Z) = [X,Y]^{1,0} ^ Z + Y ^ [X,Z]^{1,0} for a (0,1)-vector
// X = sum_l xbar(l) Zbar_l, extended linearly; requires integrable J.
Bivector20 dbar_bivector(const ComplexifiedAlgebra& C, const Eigen::VectorXcd& xbar,
                         const Bivector20& sigma);

// Schouten bracket on decomposables,
//   [X_0 ^ X_1, Y_0 ^ Y_1] = sum_{j,k} (-1)^{j+k} [X_j, Y_k] ^ X_{j+1} ^ Y_{k+1}
// (indices mod 2), extended bilinearly; lands in Lambda^3 g^{1,0}.
KFormC schouten(const ComplexifiedAlgebra& C, const Bivector20& sigma, const Bivector20& tau);

// Nullspace of the stacked maps sigma -> dbar_{Zbar_l} sigma over all l
// (SVD threshold 1e-9 relative), filtered by vanishing of the Schouten
// bracket on all basis combinations.
std::vector<Bivector20> holomorphic_poisson_space(const ComplexifiedAlgebra& C,
                                                  double tol = 1e-9);

// residual of membership of sigma in the complex span of a basis
double span_membership_residual(const std::vector<Bivector20>& basis, const Bivector20& sigma);

}  // namespace hermlie
