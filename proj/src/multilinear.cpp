#include "hermlie/multilinear.hpp"

#include <algorithm>
#include <map>
#include <mutex>

namespace hermlie {

long binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  long r = 1;
  for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}

int FormBasis::rank(const std::vector<int>& I) const {
  // combinatorial number system: rank of a sorted k-subset in lex order
  long r = 0;
  int prev = -1;
  for (int l = 0; l < k; ++l) {
    for (int j = prev + 1; j < I[l]; ++j) r += binomial(n - 1 - j, k - 1 - l);
    prev = I[l];
  }
  return static_cast<int>(r);
}

const FormBasis& FormBasis::get(int n, int k) {
  static std::map<std::pair<int, int>, FormBasis> cache;
  static std::mutex mtx;
  std::lock_guard<std::mutex> lock(mtx);
  auto key = std::make_pair(n, k);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  FormBasis fb;
  fb.n = n;
  fb.k = k;
  std::vector<int> I(k);
  for (int i = 0; i < k; ++i) I[i] = i;
  if (k <= n) {
    while (true) {
      fb.idx.push_back(I);
      if (k == 0) break;
      int l = k - 1;
      while (l >= 0 && I[l] == n - k + l) --l;
      if (l < 0) break;
      ++I[l];
      for (int m = l + 1; m < k; ++m) I[m] = I[m - 1] + 1;
    }
  }
  return cache.emplace(key, std::move(fb)).first->second;
}

int sort_sign(std::vector<int>& I) {
  int sign = 1;
  // insertion sort, counting transpositions
  for (size_t i = 1; i < I.size(); ++i) {
    int v = I[i];
    size_t j = i;
    while (j > 0 && I[j - 1] > v) {
      I[j] = I[j - 1];
      --j;
      sign = -sign;
    }
    I[j] = v;
  }
  for (size_t i = 1; i < I.size(); ++i)
    if (I[i] == I[i - 1]) return 0;
  return sign;
}

void Metric::validate(double tol) const {
  if ((g - g.transpose()).norm() > 0.0)
    throw std::invalid_argument("Metric: matrix not exactly symmetric");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g);
  if (es.eigenvalues().minCoeff() <= tol)
    throw std::invalid_argument("Metric: not positive definite");
}

Eigen::MatrixXd Metric::chol() const {
  Eigen::LLT<Eigen::MatrixXd> llt(g);
  if (llt.info() != Eigen::Success)
    throw std::invalid_argument("Metric: Cholesky failed (degenerate metric)");
  return llt.matrixL();
}

KForm one_form(int n, int i) {
  KForm a(n, 1);
  a.c(i) = 1.0;
  return a;
}

KForm basis_form(int n, std::vector<int> I) {
  KForm a(n, static_cast<int>(I.size()));
  a.add_term(std::move(I), 1.0);
  return a;
}

template <typename S>
AltTensor<S> two_form_from_matrix(const Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>& M) {
  int n = static_cast<int>(M.rows());
  AltTensor<S> s(n, 2);
  const FormBasis& fb = s.basis();
  for (size_t r = 0; r < fb.idx.size(); ++r) s.c(r) = M(fb.idx[r][0], fb.idx[r][1]);
  return s;
}

template <typename S>
Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic> matrix_from_two_form(const AltTensor<S>& s) {
  Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic> M =
      Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>::Zero(s.n, s.n);
  const FormBasis& fb = s.basis();
  for (size_t r = 0; r < fb.idx.size(); ++r) {
    M(fb.idx[r][0], fb.idx[r][1]) = s.c(r);
    M(fb.idx[r][1], fb.idx[r][0]) = -s.c(r);
  }
  return M;
}

template <typename S>
AltTensor<S> wedge(const AltTensor<S>& a, const AltTensor<S>& b) {
  if (a.n != b.n) throw std::invalid_argument("wedge: dimension mismatch");
  AltTensor<S> r(a.n, a.k + b.k);  // zero-sized coefficient vector when degree > dim
  if (a.k + b.k > a.n) return r;
  const FormBasis& fa = a.basis();
  const FormBasis& fb = b.basis();
  std::vector<int> K(a.k + b.k);
  for (size_t ia = 0; ia < fa.idx.size(); ++ia) {
    if (a.c(ia) == S(0)) continue;
    for (size_t ib = 0; ib < fb.idx.size(); ++ib) {
      if (b.c(ib) == S(0)) continue;
      std::copy(fa.idx[ia].begin(), fa.idx[ia].end(), K.begin());
      std::copy(fb.idx[ib].begin(), fb.idx[ib].end(), K.begin() + a.k);
      std::vector<int> Ks = K;
      int s = sort_sign(Ks);
      if (s == 0) continue;
      r.c(r.basis().rank(Ks)) += S(double(s)) * a.c(ia) * b.c(ib);
    }
  }
  return r;
}

template <typename S>
AltTensor<S> wedge_power(const AltTensor<S>& a, int p) {
  if (p == 0) {
    AltTensor<S> one(a.n, 0);
    one.c(0) = S(1);
    return one;
  }
  AltTensor<S> r = a;
  for (int i = 1; i < p; ++i) r = wedge(r, a);
  return r;
}

template <typename S>
S eval(const AltTensor<S>& s, const Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>& V) {
  if (static_cast<int>(V.cols()) != s.k) throw std::invalid_argument("eval: arity mismatch");
  const FormBasis& fb = s.basis();
  S acc(0);
  Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic> sub(s.k, s.k);
  for (size_t r = 0; r < fb.idx.size(); ++r) {
    if (s.c(r) == S(0)) continue;
    for (int i = 0; i < s.k; ++i)
      for (int j = 0; j < s.k; ++j) sub(i, j) = V(fb.idx[r][i], j);
    acc += s.c(r) * sub.determinant();
  }
  return acc;
}

template <typename S>
Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic> coeff_transform(
    const Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>& C, int k) {
  int n = static_cast<int>(C.rows());
  const FormBasis& fb = FormBasis::get(n, k);
  long m = binomial(n, k);
  Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic> W(m, m);
  Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic> sub(k, k);
  for (long A = 0; A < m; ++A) {
    for (long I = 0; I < m; ++I) {
      for (int r = 0; r < k; ++r)
        for (int c = 0; c < k; ++c) sub(r, c) = C(fb.idx[I][r], fb.idx[A][c]);
      W(A, I) = k == 0 ? S(1) : sub.determinant();
    }
  }
  return W;
}

KForm to_orthonormal(const KForm& s, const Metric& g) {
  // orthonormal frame f_a = sum_i (L^{-T})_{ia} e_i, hence e^i = sum_a (L^{-T})_{ia} f^a
  Eigen::MatrixXd L = g.chol();
  Eigen::MatrixXd C = L.transpose().inverse();
  KForm r = s;
  r.c = coeff_transform<double>(C, s.k) * s.c;
  return r;
}

KForm from_orthonormal(const KForm& s_on, const Metric& g) {
  // inverse change: f^a = sum_i (L^T)_{ai} e^i, so the old coframe (f) in
  // terms of the new one (e) is C = L^T
  Eigen::MatrixXd L = g.chol();
  KForm r = s_on;
  r.c = coeff_transform<double>(Eigen::MatrixXd(L.transpose()), s_on.k) * s_on.c;
  return r;
}

double form_inner(const KForm& a, const KForm& b, const Metric& g) {
  if (a.k != b.k || a.n != b.n) throw std::invalid_argument("form_inner: degree/dim mismatch");
  return to_orthonormal(a, g).c.dot(to_orthonormal(b, g).c);
}

KForm hodge_star(const KForm& s, const Metric& g, int orientation) {
  KForm son = to_orthonormal(s, g);
  int n = s.n, k = s.k;
  const FormBasis& fb = FormBasis::get(n, k);
  KForm star(n, n - k);
  for (size_t r = 0; r < fb.idx.size(); ++r) {
    if (son.c(r) == 0.0) continue;
    // complement multi-index and permutation sign of (I, Ic)
    std::vector<int> full;
    full.reserve(n);
    std::vector<char> used(n, 0);
    for (int i : fb.idx[r]) used[i] = 1;
    std::vector<int> comp;
    for (int i = 0; i < n; ++i)
      if (!used[i]) comp.push_back(i);
    std::vector<int> perm = fb.idx[r];
    perm.insert(perm.end(), comp.begin(), comp.end());
    int sgn = sort_sign(perm);  // sign of permutation (I,Ic) -> (1..n)
    star.add_term(comp, double(sgn * orientation) * son.c(r));
  }
  return from_orthonormal(star, g);
}

double form_trace(const KForm& sigma, const Eigen::MatrixXd& J, const Metric& g) {
  if (sigma.k != 2) throw std::invalid_argument("form_trace: degree-2 form required");
  Eigen::MatrixXd Om = J.transpose() * g.g;  // omega(e_i,e_j) = g(J e_i, e_j)
  KForm omega = two_form_from_matrix<double>(Om);
  return form_inner(sigma, omega, g);
}

KForm contract(const KForm& psi, const KForm& sigma, const Metric& g) {
  if (sigma.k < psi.k) throw std::invalid_argument("contract: degree mismatch");
  int kr = sigma.k - psi.k;
  KForm psi_on = to_orthonormal(psi, g);
  KForm sig_on = to_orthonormal(sigma, g);
  // wedge-by-psi matrix W: Lambda^kr -> Lambda^{sigma.k}; adjoint is W^T in
  // the orthonormal coefficient basis
  long mr = binomial(sigma.n, kr);
  long ms = binomial(sigma.n, sigma.k);
  Eigen::MatrixXd W = Eigen::MatrixXd::Zero(ms, mr);
  const FormBasis& fr = FormBasis::get(sigma.n, kr);
  for (long col = 0; col < mr; ++col) {
    KForm beta(sigma.n, kr);
    beta.c(col) = 1.0;
    W.col(col) = wedge(psi_on, beta).c;
  }
  KForm res(sigma.n, kr);
  res.c = W.transpose() * sig_on.c;
  return from_orthonormal(res, g);
}

Eigen::VectorXd sharp(const KForm& a, const Metric& g) {
  if (a.k != 1) throw std::invalid_argument("sharp: 1-form required");
  return g.g.ldlt().solve(a.c);
}

KForm flat(const Eigen::VectorXd& v, const Metric& g) {
  KForm a(static_cast<int>(v.size()), 1);
  a.c = g.g * v;
  return a;
}

// explicit instantiations
template AltTensor<double> two_form_from_matrix<double>(const Eigen::MatrixXd&);
template AltTensor<cplx> two_form_from_matrix<cplx>(const Eigen::MatrixXcd&);
template Eigen::MatrixXd matrix_from_two_form<double>(const AltTensor<double>&);
template Eigen::MatrixXcd matrix_from_two_form<cplx>(const AltTensor<cplx>&);
template AltTensor<double> wedge<double>(const AltTensor<double>&, const AltTensor<double>&);
template AltTensor<cplx> wedge<cplx>(const AltTensor<cplx>&, const AltTensor<cplx>&);
template AltTensor<double> wedge_power<double>(const AltTensor<double>&, int);
template AltTensor<cplx> wedge_power<cplx>(const AltTensor<cplx>&, int);
template double eval<double>(const AltTensor<double>&, const Eigen::MatrixXd&);
template cplx eval<cplx>(const AltTensor<cplx>&, const Eigen::MatrixXcd&);
template Eigen::MatrixXd coeff_transform<double>(const Eigen::MatrixXd&, int);
template Eigen::MatrixXcd coeff_transform<cplx>(const Eigen::MatrixXcd&, int);

}  // namespace hermlie
