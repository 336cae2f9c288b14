#pragma once

// Exterior algebra over an n-dimensional real inner-product space.
//
// Alternating k-tensors are stored densely over strictly increasing
// multi-indices in lexicographic order, so antisymmetry is structural.
// The inner product on forms is normalized so that, in an orthonormal
// coframe {e^1,...,e^n}, the basis {e^I}_{I sorted} is orthonormal.
// Every metric-dependent operation first passes to an orthonormal
// coframe obtained from the Cholesky factorization of g.

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <vector>

namespace hermlie {

using cplx = std::complex<double>;

long binomial(int n, int k);

// Cached enumeration of sorted multi-indices of length k drawn from {0,...,n-1}.
struct FormBasis {
  int n = 0;
  int k = 0;
  std::vector<std::vector<int>> idx;  // lexicographic order

  // Position of a sorted multi-index in idx (combinatorial ranking).
  int rank(const std::vector<int>& I) const;

  static const FormBasis& get(int n, int k);
};

// Sorts I in place; returns the sign of the sorting permutation,
// or 0 if an index repeats.
int sort_sign(std::vector<int>& I);

// Alternating k-tensor with scalar coefficients over FormBasis(n,k).
// Used both for k-forms (covariant) and k-vectors (contravariant);
// the metric operations below interpret their arguments as forms.
template <typename S>
struct AltTensor {
  int n = 0;
  int k = 0;
  Eigen::Matrix<S, Eigen::Dynamic, 1> c;

  AltTensor() = default;
  AltTensor(int n_, int k_)
      : n(n_), k(k_), c(Eigen::Matrix<S, Eigen::Dynamic, 1>::Zero(binomial(n_, k_))) {}

  const FormBasis& basis() const { return FormBasis::get(n, k); }

  // Coefficient of e^I (I need not be sorted; the sign is handled).
  S coeff(std::vector<int> I) const {
    int s = sort_sign(I);
    if (s == 0) return S(0);
    return S(double(s)) * c(basis().rank(I));
  }
  void add_term(std::vector<int> I, S v) {
    int s = sort_sign(I);
    if (s == 0) return;
    c(basis().rank(I)) += S(double(s)) * v;
  }

  double norm() const { return c.norm(); }

  AltTensor& operator+=(const AltTensor& o) { c += o.c; return *this; }
  AltTensor& operator-=(const AltTensor& o) { c -= o.c; return *this; }
  AltTensor operator+(const AltTensor& o) const { AltTensor r = *this; r += o; return r; }
  AltTensor operator-(const AltTensor& o) const { AltTensor r = *this; r -= o; return r; }
  AltTensor operator*(S t) const { AltTensor r = *this; r.c *= t; return r; }
  AltTensor operator-() const { AltTensor r = *this; r.c = -r.c; return r; }
};

using KForm = AltTensor<double>;
using KFormC = AltTensor<cplx>;
using KVector = AltTensor<double>;   // same storage; contravariant by convention
using KVectorC = AltTensor<cplx>;

// Riemannian metric, symmetric positive definite.
struct Metric {
  Eigen::MatrixXd g;

  static Metric identity(int n) { return Metric{Eigen::MatrixXd::Identity(n, n)}; }
  int dim() const { return static_cast<int>(g.rows()); }
  void validate(double tol = 1e-10) const;  // symmetry + positive definiteness
  // Cholesky factor L with g = L L^T.
  Eigen::MatrixXd chol() const;
};

// ---- construction helpers ----

// The basis 1-form e^i (0-based index).
KForm one_form(int n, int i);
// Basis k-form e^{i1...ik}; indices 0-based, sign handled if unsorted.
KForm basis_form(int n, std::vector<int> I);

// 2-form <-> antisymmetric matrix, sigma(e_i,e_j) = M(i,j).
template <typename S>
AltTensor<S> two_form_from_matrix(const Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>& M);
template <typename S>
Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic> matrix_from_two_form(const AltTensor<S>& s);

// ---- core operations ----

template <typename S>
AltTensor<S> wedge(const AltTensor<S>& a, const AltTensor<S>& b);

template <typename S>
AltTensor<S> wedge_power(const AltTensor<S>& a, int p);  // a ^ a ^ ... (p factors)

// Evaluation sigma(v_1,...,v_k) with v_l the columns of V.
template <typename S>
S eval(const AltTensor<S>& s, const Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>& V);

// Induced action on k-coefficients of a coframe change e^i = sum_a C(i,a) f^a:
// returns W with (new coeffs)_A = sum_I W(A,I) (old coeffs)_I, i.e. the k-th
// compound matrix W(A,I) = det C[I,A] (rows I, columns A).
template <typename S>
Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic> coeff_transform(
    const Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>& C, int k);

// Coefficients of sigma in the orthonormal coframe of g (and back).
KForm to_orthonormal(const KForm& s, const Metric& g);
KForm from_orthonormal(const KForm& s_on, const Metric& g);

double form_inner(const KForm& a, const KForm& b, const Metric& g);

// Hodge star for the orientation e^1 ^ ... ^ e^n of the orthonormal coframe.
KForm hodge_star(const KForm& s, const Metric& g, int orientation = +1);

// <sigma, omega_{J,g}> where omega = g(J.,.) is the fundamental 2-form.
double form_trace(const KForm& sigma, const Eigen::MatrixXd& J, const Metric& g);

// Metric adjoint of wedging: <contract(psi, sigma), beta> = <sigma, psi ^ beta>.
KForm contract(const KForm& psi, const KForm& sigma, const Metric& g);

// Musical isomorphisms for 1-forms/vectors.
Eigen::VectorXd sharp(const KForm& a, const Metric& g);   // 1-form -> vector
KForm flat(const Eigen::VectorXd& v, const Metric& g);    // vector -> 1-form

}  // namespace hermlie
