#include "hermlie/gk_poisson.hpp"

#include <stdexcept>

namespace hermlie {

namespace {

// complex-bilinear extension of the real bracket, in real coordinates
Eigen::VectorXcd bracket_c(const LieAlgebra& L, const Eigen::VectorXcd& u,
                           const Eigen::VectorXcd& v) {
  Eigen::VectorXcd w = Eigen::VectorXcd::Zero(L.n);
  for (int k = 0; k < L.n; ++k) w(k) = u.transpose() * L.C[k].cast<cplx>() * v;
  return w;
}

// conjugation in W coordinates: swap the Z and Zbar halves and conjugate
Eigen::VectorXcd conj_w(const Eigen::VectorXcd& u) {
  const int n = static_cast<int>(u.size()) / 2;
  Eigen::VectorXcd r(2 * n);
  r.head(n) = u.tail(n).conjugate();
  r.tail(n) = u.head(n).conjugate();
  return r;
}

}  // namespace

ComplexifiedAlgebra::ComplexifiedAlgebra(const LieAlgebra& L_, const Eigen::MatrixXd& J_,
                                         double tol)
    : L(L_), J(J_) {
  const int n2 = L.n;
  if (n2 % 2 != 0) throw std::invalid_argument("complexification needs even dimension");
  if ((J * J + Eigen::MatrixXd::Identity(n2, n2)).norm() > tol)
    throw std::invalid_argument("J is not an almost complex structure");
  n = n2 / 2;

  // greedy adapted basis: take e_i whenever it enlarges span{u_l, Ju_l}
  Eigen::MatrixXd B(n2, 0);
  for (int i = 0; i < n2 && static_cast<int>(base.size()) < n; ++i) {
    Eigen::MatrixXd Bc(n2, B.cols() + 2);
    Bc.leftCols(B.cols()) = B;
    Bc.col(B.cols()) = Eigen::VectorXd::Unit(n2, i);
    Bc.col(B.cols() + 1) = J.col(i);
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(Bc);
    qr.setThreshold(1e-10);
    if (qr.rank() == Bc.cols()) {
      B = Bc;
      base.push_back(i);
    }
  }
  if (static_cast<int>(base.size()) != n)
    throw std::invalid_argument("could not build a J-adapted basis");

  T = Eigen::MatrixXcd::Zero(n2, n2);
  for (int l = 0; l < n; ++l) {
    Eigen::VectorXcd z = Eigen::VectorXd::Unit(n2, base[l]).cast<cplx>() -
                         cplx(0, 1) * J.col(base[l]).cast<cplx>();
    T.col(l) = z;
    T.col(n + l) = z.conjugate();
  }
  Tinv = T.inverse();

  Cc.assign(n2, Eigen::MatrixXcd::Zero(n2, n2));
  for (int a = 0; a < n2; ++a)
    for (int b = a + 1; b < n2; ++b) {
      Eigen::VectorXcd w = Tinv * bracket_c(L, T.col(a), T.col(b));
      for (int k = 0; k < n2; ++k) {
        Cc[k](a, b) = w(k);
        Cc[k](b, a) = -w(k);
      }
    }
}

Eigen::VectorXcd ComplexifiedAlgebra::bracket(const Eigen::VectorXcd& u,
                                              const Eigen::VectorXcd& v) const {
  Eigen::VectorXcd w = Eigen::VectorXcd::Zero(2 * n);
  for (int k = 0; k < 2 * n; ++k) w(k) = u.transpose() * Cc[k] * v;
  return w;
}

double ComplexifiedAlgebra::conjugation_residual() const {
  double r = 0.0;
  for (int a = 0; a < 2 * n; ++a)
    for (int b = a + 1; b < 2 * n; ++b) {
      Eigen::VectorXcd lhs =
          conj_w(bracket(Eigen::VectorXcd::Unit(2 * n, a), Eigen::VectorXcd::Unit(2 * n, b)));
      Eigen::VectorXcd rhs =
          bracket(conj_w(Eigen::VectorXcd::Unit(2 * n, a)), conj_w(Eigen::VectorXcd::Unit(2 * n, b)));
      r = std::max(r, (lhs - rhs).norm());
    }
  return r;
}

double ComplexifiedAlgebra::holomorphy_residual() const {
  double r = 0.0;
  for (int k = 0; k < n; ++k)
    for (int l = k + 1; l < n; ++l) {
      Eigen::VectorXcd w =
          bracket(Eigen::VectorXcd::Unit(2 * n, k), Eigen::VectorXcd::Unit(2 * n, l));
      r = std::max(r, w.tail(n).norm());
    }
  return r;
}

Bivector20 Bivector20::basis(int n, int k, int l) {
  Bivector20 b(n);
  b.c.add_term({k, l}, cplx(1, 0));
  return b;
}

double gk_residual(const GKStructure& S, double tol) {
  const int n2 = S.L.n;
  auto check_side = [&](const Eigen::MatrixXd& J, const char* side) {
    if ((J.transpose() * S.g.g * J - S.g.g).norm() > tol)
      throw std::invalid_argument(std::string("gk_residual: ") + side + " is not g-orthogonal");
    double nij = nijenhuis_residual(HermitianStructure{S.L, J, S.g});
    if (nij > tol)
      throw std::invalid_argument(std::string("gk_residual: ") + side +
                                  " is non-integrable, Nijenhuis residual " + std::to_string(nij));
  };
  check_side(S.Jp, "J_+");
  check_side(S.Jm, "J_-");
  (void)n2;

  HermitianStructure Hp = S.plus(), Hm = S.minus();
  KForm dcp = dc(Hp, Hp.omega(), tol);
  KForm dcm = dc(Hm, Hm.omega(), tol);
  return (dcp + dcm).norm() + ce_differential(S.L, dcp).norm();
}

SplitReport is_split(const GKStructure& S, double tol) {
  SplitReport r;
  r.commutator = S.Jp * S.Jm - S.Jm * S.Jp;
  // a bivector's map matrix (alpha -> beta(alpha, .)) is minus its
  // coefficient matrix, hence the sign when reading off coefficients
  r.bivector = -r.commutator * S.g.g.inverse();
  r.commutator_norm = r.commutator.norm();
  r.split = r.commutator_norm < tol;
  return r;
}

Bivector20 poisson_candidate(const GKStructure& S) {
  const int n2 = S.L.n;
  // coefficient matrix of the bivector [J_+, J_-] g^{-1}
  Eigen::MatrixXd K = S.Jp * S.Jm - S.Jm * S.Jp;
  Eigen::MatrixXd P = -K * S.g.g.inverse();

  // (2,0)-projection with respect to J_+ on both indices
  Eigen::MatrixXcd p =
      0.5 * (Eigen::MatrixXcd::Identity(n2, n2) - cplx(0, 1) * S.Jp.cast<cplx>());
  Eigen::MatrixXcd sigma = p * P.cast<cplx>() * p.transpose();

  ComplexifiedAlgebra C(S.L, S.Jp);
  Eigen::MatrixXcd M = C.Tinv * sigma * C.Tinv.transpose();
  Bivector20 b(C.n);
  for (int k = 0; k < C.n; ++k)
    for (int l = k + 1; l < C.n; ++l) b.c.add_term({k, l}, M(k, l));
  return b;
}

Bivector20 dbar_bivector(const ComplexifiedAlgebra& C, const Eigen::VectorXcd& xbar,
                         const Bivector20& sigma) {
  const int n = C.n;
  Eigen::VectorXcd X = Eigen::VectorXcd::Zero(2 * n);
  X.tail(n) = xbar;
  Bivector20 out(n);
  const FormBasis& fb = sigma.c.basis();
  for (size_t r = 0; r < fb.idx.size(); ++r) {
    cplx coeff = sigma.c.c(static_cast<int>(r));
    if (coeff == cplx(0, 0)) continue;
    int k = fb.idx[r][0], l = fb.idx[r][1];
    Eigen::VectorXcd a = C.bracket(X, Eigen::VectorXcd::Unit(2 * n, k)).head(n);
    Eigen::VectorXcd b = C.bracket(X, Eigen::VectorXcd::Unit(2 * n, l)).head(n);
    for (int m = 0; m < n; ++m) {
      if (a(m) != cplx(0, 0)) out.c.add_term({m, l}, coeff * a(m));
      if (b(m) != cplx(0, 0)) out.c.add_term({k, m}, coeff * b(m));
    }
  }
  return out;
}

KFormC schouten(const ComplexifiedAlgebra& C, const Bivector20& sigma, const Bivector20& tau) {
  const int n = C.n;
  KFormC out(n, 3);
  const FormBasis& fb = sigma.c.basis();
  auto br10 = [&](int a, int b) -> Eigen::VectorXcd {
    return C.bracket(Eigen::VectorXcd::Unit(2 * n, a), Eigen::VectorXcd::Unit(2 * n, b)).head(n);
  };
  for (size_t r = 0; r < fb.idx.size(); ++r) {
    cplx cs = sigma.c.c(static_cast<int>(r));
    if (cs == cplx(0, 0)) continue;
    int x0 = fb.idx[r][0], x1 = fb.idx[r][1];
    for (size_t s = 0; s < fb.idx.size(); ++s) {
      cplx ct = tau.c.c(static_cast<int>(s));
      if (ct == cplx(0, 0)) continue;
      int y0 = fb.idx[s][0], y1 = fb.idx[s][1];
      const int xs[2] = {x0, x1}, ys[2] = {y0, y1};
      for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k) {
          Eigen::VectorXcd v = br10(xs[j], ys[k]);
          double sgn = ((j + k) % 2 == 0) ? 1.0 : -1.0;
          for (int m = 0; m < n; ++m)
            if (v(m) != cplx(0, 0))
              out.add_term({m, xs[(j + 1) % 2], ys[(k + 1) % 2]}, cs * ct * sgn * v(m));
        }
    }
  }
  return out;
}

std::vector<Bivector20> holomorphic_poisson_space(const ComplexifiedAlgebra& C, double tol) {
  const int n = C.n;
  const int N = static_cast<int>(binomial(n, 2));

  // stack the matrices of sigma -> dbar_{Zbar_l} sigma over all l
  Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(n * N, N);
  for (int col = 0; col < N; ++col) {
    const auto& I = FormBasis::get(n, 2).idx[col];
    Bivector20 e = Bivector20::basis(n, I[0], I[1]);
    for (int l = 0; l < n; ++l) {
      Bivector20 d = dbar_bivector(C, Eigen::VectorXcd::Unit(n, l), e);
      A.block(l * N, col, N, 1) = d.c.c;
    }
  }

  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(A, Eigen::ComputeFullV);
  double smax = svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
  int rank = 0;
  for (int i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()(i) > tol * std::max(1.0, smax)) ++rank;

  std::vector<Bivector20> kept;
  for (int i = rank; i < N; ++i) {
    Bivector20 s(n);
    s.c.c = svd.matrixV().col(i);
    bool ok = schouten(C, s, s).norm() < 10 * tol;
    for (const auto& t : kept) ok = ok && schouten(C, s, t).norm() < 10 * tol;
    if (ok) kept.push_back(s);
  }
  return kept;
}

double span_membership_residual(const std::vector<Bivector20>& basis, const Bivector20& sigma) {
  if (basis.empty()) return sigma.norm();
  Eigen::MatrixXcd B(sigma.c.c.size(), basis.size());
  for (size_t j = 0; j < basis.size(); ++j) B.col(j) = basis[j].c.c;
  Eigen::VectorXcd x = B.colPivHouseholderQr().solve(sigma.c.c);
  return (B * x - sigma.c.c).norm();
}

}  // namespace hermlie
