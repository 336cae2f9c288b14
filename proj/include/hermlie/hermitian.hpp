#pragma once

// Almost-Hermitian structures on a Lie algebra: Nijenhuis tensor, bidegree
// decomposition and d^c, Lee form, the Gauduchon line of connections with
// Ricci forms computed two independent ways, residual-based property
// predicates, and a randomized structure-search probe.

#include "hermlie/lie_core.hpp"

namespace hermlie {

struct AlmostComplexStructure {
  Eigen::MatrixXd J;
  double square_residual() const {
    return (J * J + Eigen::MatrixXd::Identity(J.rows(), J.cols())).norm();
  }
};

struct HermitianStructure {
  LieAlgebra L;
  Eigen::MatrixXd J;
  Metric g;

  int dim() const { return L.n; }
  // omega(X,Y) = g(JX, Y)
  KForm omega() const;
  Eigen::MatrixXd omega_matrix() const { return J.transpose() * g.g; }
  double compatibility_residual() const;  // |J^2+Id| + |J^T g J - g|
  void validate(double tol = 1e-9) const;
};

// ---- Nijenhuis tensor ----

struct NijenhuisResult {
  // N(f_a, f_b) in the g-orthonormal frame, stored per pair a < b
  std::vector<Eigen::VectorXd> values;
  double residual = 0.0;  // max norm over frame pairs
};
NijenhuisResult nijenhuis(const HermitianStructure& H);
double nijenhuis_residual(const HermitianStructure& H);

// ---- complexification / bidegree machinery ----

// Unitary (1,0)-frame attached to (L, J, g): an adapted g-orthonormal real
// basis {x_l, J x_l} and Z_l = (x_l - i J x_l)/sqrt(2), together with the
// structure constants in the (Z, Zbar) basis. Does not require integrability.
struct ComplexFrame {
  int n2 = 0;                        // real dimension 2n
  Eigen::MatrixXd F;                 // orthonormal real frame (columns), original coords
  Eigen::MatrixXcd T, Tinv;          // Z/Zbar basis in orthonormal-frame coords
  std::vector<Eigen::MatrixXcd> Cc;  // complex structure constants in the Z/Zbar basis

  explicit ComplexFrame(const HermitianStructure& H);

  // coefficient maps between original real coordinates and the zeta coframe
  Eigen::MatrixXcd to_zeta(int k) const;
  Eigen::MatrixXcd from_zeta(int k) const;

  // bidegree (p,q) of each Lambda^k multi-index in the zeta coframe
  std::vector<std::pair<int, int>> bidegrees(int k) const;
  Eigen::MatrixXcd bidegree_proj(int k, int p, int q) const;

  // Chevalley-Eilenberg d and its bidegree components, in zeta coordinates,
  // where the coefficient basis is unitary (adjoints = conjugate transposes)
  Eigen::MatrixXcd d_matrix(int k) const;
  Eigen::MatrixXcd partial_matrix(int k) const;  // (p,q) -> (p+1,q) parts of d
  Eigen::MatrixXcd dbar_matrix(int k) const;     // (p,q) -> (p,q+1) parts of d
};

// d^c = i(dbar - partial) through the bidegree split; requires integrable J.
// Cross-checked against d^c omega(X,Y,Z) = -d omega(JX,JY,JZ) in tests.
KForm dc(const HermitianStructure& H, const KForm& sigma, double tol = 1e-8);

// pullback sigma(M., ..., M.) of a k-form along an endomorphism M
KForm pullback_form(const KForm& sigma, const Eigen::MatrixXd& M);

// ---- property residuals ----

double kahler_residual(const HermitianStructure& H);    // |d omega|
double skt_residual(const HermitianStructure& H);       // |d d^c omega|
double balanced_residual(const HermitianStructure& H);  // |d omega^{n-1}|
// real-route SKT residual |d(domega(J.,J.,J.))|, defined for any almost
// complex J (the two routes agree when J is integrable)
double skt_residual_real_route(const HermitianStructure& H);

// ---- Lee form and Gauduchon line ----

// unique theta with d omega^{n-1} = theta ^ omega^{n-1}
KForm lee_form(const HermitianStructure& H);

// theta^tau(X) = 1/2 ( tr(ad_X o J) - tau tr ad_{JX} + (tau-1) <omega, d X^flat> )
KForm theta_tau(const HermitianStructure& H, double tau);
// rho^tau = d theta^tau; tau = -1 Bismut, tau = +1 Chern
KForm ricci_tau(const HermitianStructure& H, double tau);
// (1,1)-projection: rho^{1,1} = 1/2 (rho + rho(J.,J.))
KForm projection_11(const KForm& rho, const Eigen::MatrixXd& J);

// Independent curvature-trace route for the Bismut-Ricci form:
// Levi-Civita by the Koszul formula, Bismut correction by the torsion
// 3-form T = domega(J.,J.,J.), curvature trace per the standard formula.
KForm bismut_ricci_oracle(const HermitianStructure& H);

// angle between the lines J n^1 and the g-orthogonal complement of n
double angle_theta_hat(const HermitianStructure& H, const Eigen::VectorXd& n1,
                       const Eigen::MatrixXd& nilradical);

// ---- structure search probe (non-certifying) ----

enum class SearchTarget { Complex, SKT, Balanced };

struct SearchOptions {
  int restarts = 50;
  int iters = 200;
  unsigned seed = 1;
  double fd_step = 1e-5;      // central-difference step
  double accept_tol = 1e-6;   // combined residual for a find
  std::vector<Eigen::MatrixXd> warm_starts;  // optional extra seeds (tried first)
};

struct SearchResult {
  bool found = false;
  double best_residual = 0.0;
  int best_restart = -1;
  HermitianStructure best;            // structure realizing best_residual
  std::vector<double> restart_residuals;
};

// Parameterizes (J,g) = (h J0 h^{-1}, pullback of the identity metric by
// h^{-1}) over invertible h and minimizes
//   nijenhuis residual^2 + target residual^2
// by random-restart descent with numerical gradients. A failure to find is
// NOT a non-existence certificate.
SearchResult structure_search(const LieAlgebra& L, SearchTarget target,
                              const SearchOptions& opts = {});

}  // namespace hermlie
