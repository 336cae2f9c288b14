#include "hermlie/lie_core.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <random>

namespace hermlie {

void LieAlgebra::set_bracket(int i, int j, const Eigen::VectorXd& w) {
  for (int k = 0; k < n; ++k) {
    C[k](i, j) = w(k);
    C[k](j, i) = -w(k);
  }
}

void LieAlgebra::add_bracket(int i, int j, int k, double coeff) {
  C[k](i, j) += coeff;
  C[k](j, i) -= coeff;
}

Eigen::VectorXd LieAlgebra::bracket(const Eigen::VectorXd& u, const Eigen::VectorXd& v) const {
  Eigen::VectorXd w(n);
  for (int k = 0; k < n; ++k) w(k) = u.dot(C[k] * v);
  return w;
}

Eigen::MatrixXd LieAlgebra::ad(const Eigen::VectorXd& v) const {
  Eigen::MatrixXd M(n, n);
  for (int k = 0; k < n; ++k) M.row(k) = v.transpose() * C[k];
  return M;
}

Eigen::MatrixXd LieAlgebra::ad(int i) const {
  Eigen::MatrixXd M(n, n);
  for (int k = 0; k < n; ++k) M.row(k) = C[k].row(i);
  return M;
}

double LieAlgebra::structure_norm() const {
  double s = 0;
  for (const auto& M : C) s += M.squaredNorm();
  return std::sqrt(0.5 * s);  // each constant appears twice by antisymmetry
}

LieAlgebra LieAlgebra::change_basis(const Eigen::MatrixXd& T) const {
  // new constants: [f_i, f_j] = T^{-1} [T f_i, T f_j]
  LieAlgebra R(n);
  Eigen::MatrixXd Tinv = T.inverse();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Eigen::VectorXd w = Tinv * bracket(T.col(i), T.col(j));
      R.set_bracket(i, j, w);
    }
  return R;
}

double jacobi_residual(const LieAlgebra& L) {
  double worst = 0;
  for (int i = 0; i < L.n; ++i)
    for (int j = i + 1; j < L.n; ++j)
      for (int k = j + 1; k < L.n; ++k) {
        Eigen::VectorXd ei = Eigen::VectorXd::Unit(L.n, i);
        Eigen::VectorXd ej = Eigen::VectorXd::Unit(L.n, j);
        Eigen::VectorXd ek = Eigen::VectorXd::Unit(L.n, k);
        Eigen::VectorXd r = L.bracket(L.bracket(ei, ej), ek) +
                            L.bracket(L.bracket(ej, ek), ei) +
                            L.bracket(L.bracket(ek, ei), ej);
        worst = std::max(worst, r.norm());
      }
  return worst;
}

double derivation_residual(const LieAlgebra& L, const Eigen::MatrixXd& D) {
  double worst = 0;
  for (int i = 0; i < L.n; ++i)
    for (int j = i + 1; j < L.n; ++j) {
      Eigen::VectorXd ei = Eigen::VectorXd::Unit(L.n, i);
      Eigen::VectorXd ej = Eigen::VectorXd::Unit(L.n, j);
      Eigen::VectorXd r = D * L.bracket(ei, ej) - L.bracket(D * ei, ej) - L.bracket(ei, D * ej);
      worst = std::max(worst, r.norm());
    }
  return worst;
}

KForm ce_differential(const LieAlgebra& L, const KForm& sigma) {
  // (d sigma)(X_0..X_k) = sum_{r<s} (-1)^{r+s} sigma([X_r,X_s], X_0..^r..^s..X_k)
  int k = sigma.k;
  KForm d(L.n, k + 1);
  if (k + 1 > L.n) return d;
  const FormBasis& fb = d.basis();
  for (size_t row = 0; row < fb.idx.size(); ++row) {
    const std::vector<int>& J = fb.idx[row];
    double acc = 0;
    for (int r = 0; r <= k; ++r)
      for (int s = r + 1; s <= k; ++s) {
        double sgn = ((r + s) % 2 == 0) ? 1.0 : -1.0;
        std::vector<int> rest;
        rest.reserve(k - 1);
        for (int t = 0; t <= k; ++t)
          if (t != r && t != s) rest.push_back(J[t]);
        for (int m = 0; m < L.n; ++m) {
          double cm = L.C[m](J[r], J[s]);
          if (cm == 0.0) continue;
          std::vector<int> I;
          I.reserve(k);
          I.push_back(m);
          I.insert(I.end(), rest.begin(), rest.end());
          acc += sgn * cm * sigma.coeff(std::move(I));
        }
      }
    d.c(row) = acc;  // (-1)^{r+s} already gives d alpha(X,Y) = -alpha([X,Y])
  }
  return d;
}

Eigen::MatrixXd ce_matrix(const LieAlgebra& L, int k) {
  long mk = binomial(L.n, k);
  long mk1 = binomial(L.n, k + 1);
  Eigen::MatrixXd M(mk1, mk);
  for (long col = 0; col < mk; ++col) {
    KForm b(L.n, k);
    b.c(col) = 1.0;
    M.col(col) = ce_differential(L, b).c;
  }
  return M;
}

Eigen::MatrixXcd ce_matrix_complex(const std::vector<Eigen::MatrixXcd>& C, int k) {
  int n = static_cast<int>(C.size());
  long mk = binomial(n, k);
  long mk1 = binomial(n, k + 1);
  const FormBasis& fbk = FormBasis::get(n, k);
  const FormBasis& fb = FormBasis::get(n, k + 1);
  Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(mk1, mk);
  for (long col = 0; col < mk; ++col) {
    KFormC b(n, k);
    b.c(col) = 1.0;
    (void)fbk;
    for (size_t row = 0; row < fb.idx.size(); ++row) {
      const std::vector<int>& J = fb.idx[row];
      cplx acc(0);
      for (int r = 0; r <= k; ++r)
        for (int s = r + 1; s <= k; ++s) {
          double sgn = ((r + s) % 2 == 0) ? 1.0 : -1.0;
          std::vector<int> rest;
          for (int t = 0; t <= k; ++t)
            if (t != r && t != s) rest.push_back(J[t]);
          for (int m = 0; m < n; ++m) {
            cplx cm = C[m](J[r], J[s]);
            if (cm == cplx(0)) continue;
            std::vector<int> I;
            I.push_back(m);
            I.insert(I.end(), rest.begin(), rest.end());
            acc += sgn * cm * b.coeff(std::move(I));
          }
        }
      M(row, col) = acc;
    }
  }
  return M;
}

std::vector<int> Filtration::dims() const {
  std::vector<int> d;
  for (const auto& m : layers) d.push_back(static_cast<int>(m.cols()));
  return d;
}

namespace {
// orthonormal basis of the column span, rank decided at tol relative to s_max
Eigen::MatrixXd column_span(const Eigen::MatrixXd& M, double tol) {
  if (M.cols() == 0) return Eigen::MatrixXd(M.rows(), 0);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(M, Eigen::ComputeThinU);
  double smax = svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
  int rank = 0;
  for (int i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()(i) > tol * std::max(1.0, smax)) ++rank;
  return svd.matrixU().leftCols(rank);
}
}  // namespace

Filtration descending_central_series(const LieAlgebra& L, const Eigen::MatrixXd& ideal,
                                     double tol) {
  Filtration F;
  F.layers.push_back(column_span(ideal, tol));
  while (true) {
    const Eigen::MatrixXd& cur = F.layers.back();
    if (cur.cols() == 0) break;
    Eigen::MatrixXd prods(L.n, ideal.cols() * cur.cols());
    long col = 0;
    for (long i = 0; i < ideal.cols(); ++i)
      for (long j = 0; j < cur.cols(); ++j)
        prods.col(col++) = L.bracket(ideal.col(i), cur.col(j));
    Eigen::MatrixXd next = column_span(prods, tol);
    if (next.cols() >= cur.cols()) break;  // stabilized without reaching 0 (non-nilpotent)
    F.layers.push_back(next);
  }
  return F;
}

UnimodularReport is_strongly_unimodular(const LieAlgebra& L, const Eigen::MatrixXd& nilradical,
                                        double tol) {
  // the supplied subspace must be an ideal of L
  Eigen::MatrixXd N = column_span(nilradical, tol);
  Eigen::MatrixXd proj = N * N.transpose();
  for (int i = 0; i < L.n; ++i)
    for (long j = 0; j < N.cols(); ++j) {
      Eigen::VectorXd w = L.bracket(Eigen::VectorXd::Unit(L.n, i), N.col(j));
      if ((w - proj * w).norm() > 1e-7)
        throw std::invalid_argument("is_strongly_unimodular: subspace is not an ideal");
    }
  Filtration F = descending_central_series(L, N, tol);
  if (!F.terminates_at_zero())
    throw std::invalid_argument("is_strongly_unimodular: ideal is not nilpotent");
  UnimodularReport rep;
  for (int x = 0; x < L.n; ++x) {
    Eigen::MatrixXd adx = L.ad(x);
    for (size_t l = 0; l + 1 < F.layers.size(); ++l) {
      // trace on n^l / n^{l+1}: both layers are ad_x-invariant
      double tr = (F.layers[l].transpose() * adx * F.layers[l]).trace();
      double tr_next = F.layers[l + 1].cols()
                           ? (F.layers[l + 1].transpose() * adx * F.layers[l + 1]).trace()
                           : 0.0;
      rep.max_layer_trace = std::max(rep.max_layer_trace, std::abs(tr - tr_next));
    }
  }
  // the trace on the quotient g/n must vanish too, but for codim-1 n with
  // [g,g] subset n it does automatically; we still fold in tr(ad) on g/n
  for (int x = 0; x < L.n; ++x) {
    Eigen::MatrixXd adx = L.ad(x);
    double tr_quot = adx.trace() - (N.transpose() * adx * N).trace();
    rep.max_layer_trace = std::max(rep.max_layer_trace, std::abs(tr_quot));
  }
  rep.strongly_unimodular = rep.max_layer_trace < tol;
  return rep;
}

LieAlgebra semidirect_extend(const LieAlgebra& nil, const Eigen::MatrixXd& D, double tol) {
  double res = derivation_residual(nil, D);
  if (res > tol)
    throw std::invalid_argument("semidirect_extend: D is not a derivation (residual " +
                                std::to_string(res) + ")");
  LieAlgebra g(nil.n + 1);
  for (int k = 0; k < nil.n; ++k) g.C[k].topLeftCorner(nil.n, nil.n) = nil.C[k];
  for (int i = 0; i < nil.n; ++i) {
    for (int k = 0; k < nil.n; ++k) {
      g.C[k](nil.n, i) = D(k, i);
      g.C[k](i, nil.n) = -D(k, i);
    }
  }
  return g;
}

bool ad_spectrum_type_I(const LieAlgebra& L, const Eigen::VectorXd& X, double tol) {
  Eigen::EigenSolver<Eigen::MatrixXd> es(L.ad(X));
  return es.eigenvalues().real().cwiseAbs().maxCoeff() < tol;
}

bool ad_spectrum_type_I(const LieAlgebra& L, double tol) {
  return ad_spectrum_type_I(L, Eigen::VectorXd::Unit(L.n, L.n - 1), tol);
}

Eigen::MatrixXd matrix_exp(const Eigen::MatrixXd& M) { return M.exp(); }

std::optional<KForm> symplectic_probe(const LieAlgebra& L, int samples, unsigned seed,
                                      double tol) {
  if (L.n % 2 != 0) throw std::invalid_argument("symplectic_probe: even dimension required");
  Eigen::MatrixXd d2 = ce_matrix(L, 2);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(d2, Eigen::ComputeFullV);
  double smax = svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
  int rank = 0;
  for (int i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()(i) > 1e-10 * std::max(1.0, smax)) ++rank;
  long dimker = d2.cols() - rank;
  if (dimker == 0) return std::nullopt;
  Eigen::MatrixXd K = svd.matrixV().rightCols(dimker);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int s = 0; s < samples; ++s) {
    Eigen::VectorXd coeffs(dimker);
    for (long i = 0; i < dimker; ++i) coeffs(i) = gauss(rng);
    KForm Om(L.n, 2);
    Om.c = K * coeffs;
    Eigen::MatrixXd M = matrix_from_two_form<double>(Om);
    if (std::abs(M.determinant()) > tol) return Om;
  }
  return std::nullopt;
}

}  // namespace hermlie
