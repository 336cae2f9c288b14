#pragma once

// Adapted models for almost nilpotent Lie algebras whose nilradical has a
// one-dimensional commutator. Case (1) carries J e_1 = e_{2n} with data
// (a, beta, A, eta) on k_1 = <e_2..e_{2n-1}>; case (2) carries
// J e_{2l-1} = e_{2l} with data Xi on k_3 = <e_3..e_{2n-2}>. Builders embed
// the data into the full 2n-dimensional algebra; the closed-form predicates
// are cross-validated against the generic residuals of the hermitian module.

#include "hermlie/hermitian.hpp"

namespace hermlie {

// ---- case (1): J n^1 orthogonal to n ----

struct Case1Data {
  int n = 0;             // half-dimension, algebra has dimension 2n
  double a = 0.0;        // [e_{2n}, e_1] = a e_1
  Eigen::VectorXd beta;  // 1-form on k_1 (size 2n-2)
  Eigen::MatrixXd A;     // endomorphism of k_1
  Eigen::MatrixXd eta;   // skew matrix of the 2-form on k_1

  int k1_dim() const { return 2 * n - 2; }
  // J restricted to k_1 in the adapted basis: J e_{2l} = e_{2l+1}
  Eigen::MatrixXd Jk1() const;
  // | A^* eta - a eta |, zero iff the data define a Lie algebra
  double validity_residual() const;
  bool strongly_unimodular(double tol = 1e-10) const;
};

// random valid strongly unimodular case-1 data (A skew commuting with J,
// eta of type (1,1)), for property tests
Case1Data random_su_case1(int n, unsigned seed, bool traceless_eta = false);

// builds the 2n-dimensional structure; throws if the validity residual
// exceeds tol or eta = 0 (pass allow_zero_eta for flow limits)
HermitianStructure build_case1(const Case1Data& d, double tol = 1e-9,
                               bool allow_zero_eta = false);

bool integrable_case1(const Case1Data& d, double tol = 1e-10);
bool skt_case1(const Case1Data& d, double tol = 1e-10);       // requires integrable
bool kahler_case1(const Case1Data& d, double tol = 1e-10);    // requires integrable
bool balanced_case1(const Case1Data& d, double tol = 1e-10);  // requires integrable

// trace of a 2-form against the J-pairing on k_1 (sum over adapted pairs)
double form_trace_k1(const Eigen::MatrixXd& eta);

// ---- case (2): J n^1 inside n ----

struct Case2Data {
  int n = 0;  // half-dimension; k_3 has dimension 2n-4
  double a = 0.0, a1 = 0.0, a2 = 0.0;
  double p1 = 0.0, p2 = 0.0, v1 = 0.0, v2 = 0.0, lambda = 0.0;
  Eigen::VectorXd v, w;                     // vectors in k_3
  Eigen::VectorXd alpha, beta, gamma, nu, delta;  // 1-forms on k_3
  Eigen::MatrixXd A;                        // endomorphism of k_3
  Eigen::MatrixXd xi;                       // skew matrix of the 2-form on k_3

  static Case2Data zero(int n);
  int k3_dim() const { return 2 * n - 4; }
  Eigen::MatrixXd Jk3() const;  // J e_{2l-1} = e_{2l} restricted to k_3
  // residuals of the four derivation constraints, in order
  Eigen::Vector4d validity_residuals() const;
  double validity_residual() const { return validity_residuals().norm(); }
  bool strongly_unimodular(double tol = 1e-10) const;
};

HermitianStructure build_case2(const Case2Data& d, double tol = 1e-9,
                               bool allow_zero_eta = false);

bool integrable_case2(const Case2Data& d, double tol = 1e-10);
bool kahler_case2(const Case2Data& d, double tol = 1e-10);
bool balanced_case2(const Case2Data& d, double tol = 1e-10);

// six-dimensional strongly unimodular SKT test with its two branches:
// branch 2 has a_2 = -a, c != 0 with v_1, v, nu pinned by alpha; branch 1 has
// a_2 = -a != 0, c = 0, alpha = nu = 0. branch = 0 when not SKT.
struct SktCase2Report {
  bool skt = false;
  int branch = 0;
};
SktCase2Report skt_case2_dim6(const Case2Data& d, double tol = 1e-10);

// any even dimension, assuming k_3 is an abelian ideal
// (alpha = gamma = 0, xi = 0): strongly unimodular + SKT iff
// a_1 = 0, a_2 = -a != 0, A unitary
bool skt_case2_abelian_k3(const Case2Data& d, double tol = 1e-10);

// reduced six-dimensional data (a, a2, v1, v2, q, c, v, alpha, nu) with
// A = -q J|_{k_3}, xi = c e^{34}, embedded into a full Case2Data
Case2Data case2_reduced_dim6(double a, double a2, double v1, double v2,
                             double q, double c, const Eigen::Vector2d& v,
                             const Eigen::Vector2d& alpha,
                             const Eigen::Vector2d& nu);

// ---- the interpolating family at intermediate angles ----

// SKT structures with angle theta between J n^1 and the normal of n, over the
// algebra df^1 = f^{23}, df^{2l} = b_l f^{2l+1,2n}, df^{2l+1} = -b_l f^{2l,2n}:
// g_theta = sum (f^l)^2 + 2 sin(theta)(f^1 . f^{2n-1} - f^{2n-2} . f^{2n});
// throws for theta outside [0, pi/2)
HermitianStructure gtheta_family(const std::vector<double>& b, double theta);

}  // namespace hermlie
