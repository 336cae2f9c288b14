#pragma once

// Lie algebras given by structure constants: bracket, Jacobi residual,
// Chevalley-Eilenberg differential, adjoint maps, (strong) unimodularity,
// descending central series, semidirect products n x_D R, matrix
// exponential, type-I spectrum test and a randomized symplectic probe.
//
// Sign convention: d alpha(X,Y) = -alpha([X,Y]) on 1-forms, so that
// d omega(X,Y,Z) = g([X,Y],JZ) + g([Z,X],JY) + g([Y,Z],JX).

#include "hermlie/multilinear.hpp"

#include <optional>

namespace hermlie {

struct LieAlgebra {
  int n = 0;
  // C[k](i,j) = c^k_{ij}, meaning [e_i, e_j] = sum_k c^k_{ij} e_k
  std::vector<Eigen::MatrixXd> C;

  LieAlgebra() = default;
  explicit LieAlgebra(int n_) : n(n_), C(n_, Eigen::MatrixXd::Zero(n_, n_)) {}

  static LieAlgebra abelian(int n) { return LieAlgebra(n); }

  // set [e_i, e_j] = w (and [e_j, e_i] = -w)
  void set_bracket(int i, int j, const Eigen::VectorXd& w);
  void add_bracket(int i, int j, int k, double coeff);  // adds coeff e_k to [e_i,e_j]

  Eigen::VectorXd bracket(const Eigen::VectorXd& u, const Eigen::VectorXd& v) const;
  Eigen::MatrixXd ad(const Eigen::VectorXd& v) const;
  Eigen::MatrixXd ad(int i) const;  // ad of basis vector

  double structure_norm() const;  // Frobenius norm of all constants
  // pushforward under a basis change: new basis vectors are the columns of T
  LieAlgebra change_basis(const Eigen::MatrixXd& T) const;
};

// max over basis triples of |[[x,y],z] + [[y,z],x] + [[z,x],y]|
double jacobi_residual(const LieAlgebra& L);

// max over basis pairs of |D[x,y] - [Dx,y] - [x,Dy]|
double derivation_residual(const LieAlgebra& L, const Eigen::MatrixXd& D);

struct Derivation {
  Eigen::MatrixXd D;
};

// Chevalley-Eilenberg differential on invariant forms.
KForm ce_differential(const LieAlgebra& L, const KForm& sigma);
// Matrix of d: Lambda^k -> Lambda^{k+1} in the coefficient bases.
Eigen::MatrixXd ce_matrix(const LieAlgebra& L, int k);
// Complex-coefficient variant for externally supplied complex structure
// constants (used by the bidegree machinery).
Eigen::MatrixXcd ce_matrix_complex(const std::vector<Eigen::MatrixXcd>& C, int k);

// Nested subspaces, each given by a matrix whose columns span it.
struct Filtration {
  std::vector<Eigen::MatrixXd> layers;  // layers[0] = whole ideal, ..., last = {0}
  std::vector<int> dims() const;
  bool terminates_at_zero() const { return !layers.empty() && layers.back().cols() == 0; }
};

// n^0 = ideal, n^{l+1} = [ideal, n^l]; rank decisions via SVD at tol.
Filtration descending_central_series(const LieAlgebra& L, const Eigen::MatrixXd& ideal,
                                     double tol = 1e-10);

struct UnimodularReport {
  bool strongly_unimodular = false;
  double max_layer_trace = 0.0;  // residual
};

// Traces of ad_X on each layer n^l / n^{l+1} of the descending central series
// of the supplied nilpotent ideal, for every basis vector X of L.
UnimodularReport is_strongly_unimodular(const LieAlgebra& L, const Eigen::MatrixXd& nilradical,
                                        double tol = 1e-10);

// g = n x_D R with [e_{dim+1}, x] = Dx; throws if D is not a derivation.
LieAlgebra semidirect_extend(const LieAlgebra& nil, const Eigen::MatrixXd& D,
                             double tol = 1e-8);

// true iff all eigenvalues of ad_X satisfy |Re| < tol
bool ad_spectrum_type_I(const LieAlgebra& L, const Eigen::VectorXd& X, double tol = 1e-9);
// convenience for algebras presented as n x_D R: checks X = last basis vector
bool ad_spectrum_type_I(const LieAlgebra& L, double tol = 1e-9);

// scaling-and-squaring Pade approximant
Eigen::MatrixXd matrix_exp(const Eigen::MatrixXd& M);

// Randomized search for a closed 2-form with Omega^{n/2} != 0 in the
// nullspace of d. Absence of a find is not a non-existence certificate.
std::optional<KForm> symplectic_probe(const LieAlgebra& L, int samples = 1000,
                                      unsigned seed = 12345, double tol = 1e-8);

}  // namespace hermlie
