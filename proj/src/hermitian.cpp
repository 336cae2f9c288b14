#include "hermlie/hermitian.hpp"

#include <random>

namespace hermlie {

KForm HermitianStructure::omega() const { return two_form_from_matrix<double>(omega_matrix()); }

double HermitianStructure::compatibility_residual() const {
  int m = L.n;
  double r = (J * J + Eigen::MatrixXd::Identity(m, m)).norm();
  r += (J.transpose() * g.g * J - g.g).norm();
  return r;
}

void HermitianStructure::validate(double tol) const {
  g.validate();
  if (compatibility_residual() > tol)
    throw std::invalid_argument("HermitianStructure: J^2 = -Id or J-invariance of g violated");
}

NijenhuisResult nijenhuis(const HermitianStructure& H) {
  NijenhuisResult res;
  int m = H.dim();
  Eigen::MatrixXd Lc = H.g.chol();
  Eigen::MatrixXd F = Lc.transpose().inverse();  // orthonormal frame
  for (int a = 0; a < m; ++a)
    for (int b = a + 1; b < m; ++b) {
      Eigen::VectorXd X = F.col(a), Y = F.col(b);
      Eigen::VectorXd N = H.L.bracket(H.J * X, H.J * Y) - H.J * H.L.bracket(H.J * X, Y) -
                          H.J * H.L.bracket(X, H.J * Y) - H.L.bracket(X, Y);
      res.values.push_back(N);
      res.residual = std::max(res.residual, std::sqrt(N.dot(H.g.g * N)));
    }
  return res;
}

double nijenhuis_residual(const HermitianStructure& H) { return nijenhuis(H).residual; }

ComplexFrame::ComplexFrame(const HermitianStructure& H) {
  n2 = H.dim();
  int n = n2 / 2;
  Eigen::MatrixXd Lc = H.g.chol();
  F = Lc.transpose().inverse();
  Eigen::MatrixXd Jon = Lc.transpose() * H.J * F;  // J in the orthonormal frame

  // adapted orthonormal basis {x_l, Jon x_l}
  Eigen::MatrixXd X(n2, n2);
  int built = 0;
  std::vector<Eigen::VectorXd> xs;
  for (int cand = 0; cand < n2 && built < n2; ++cand) {
    Eigen::VectorXd v = Eigen::VectorXd::Unit(n2, cand);
    if (built > 0) v -= X.leftCols(built) * (X.leftCols(built).transpose() * v);
    if (v.norm() < 1e-8) continue;
    v.normalize();
    Eigen::VectorXd w = Jon * v;
    if (built > 0) w -= X.leftCols(built) * (X.leftCols(built).transpose() * w);
    w.normalize();
    X.col(built) = v;
    X.col(built + 1) = w;
    xs.push_back(v);
    built += 2;
  }
  T.resize(n2, n2);
  const cplx I(0.0, 1.0);
  const double s2 = 1.0 / std::sqrt(2.0);
  for (int l = 0; l < n; ++l) {
    Eigen::VectorXcd Z = s2 * (xs[l].cast<cplx>() - I * (Jon * xs[l]).cast<cplx>());
    T.col(l) = Z;
    T.col(n + l) = Z.conjugate();
  }
  Tinv = T.inverse();

  // complex structure constants in the Z/Zbar basis (orthonormal-frame algebra)
  LieAlgebra Lon = H.L.change_basis(F);
  std::vector<Eigen::MatrixXcd> Con(n2);
  for (int k = 0; k < n2; ++k) Con[k] = Lon.C[k].cast<cplx>();
  Cc.assign(n2, Eigen::MatrixXcd::Zero(n2, n2));
  for (int a = 0; a < n2; ++a)
    for (int b = a + 1; b < n2; ++b) {
      Eigen::VectorXcd w(n2);
      for (int k = 0; k < n2; ++k) w(k) = T.col(a).transpose() * Con[k] * T.col(b);
      Eigen::VectorXcd wz = Tinv * w;
      for (int k = 0; k < n2; ++k) {
        Cc[k](a, b) = wz(k);
        Cc[k](b, a) = -wz(k);
      }
    }
}

Eigen::MatrixXcd ComplexFrame::to_zeta(int k) const {
  Eigen::MatrixXcd M1 = coeff_transform<double>(F, k).cast<cplx>();
  Eigen::MatrixXcd M2 = coeff_transform<cplx>(T, k);
  return M2 * M1;
}

Eigen::MatrixXcd ComplexFrame::from_zeta(int k) const {
  Eigen::MatrixXcd W1 = coeff_transform<cplx>(Tinv, k);             // zeta -> orthonormal
  Eigen::MatrixXcd W2 = coeff_transform<double>(Eigen::MatrixXd(F.inverse()), k).cast<cplx>();
  return W2 * W1;                                                   // orthonormal -> original
}

std::vector<std::pair<int, int>> ComplexFrame::bidegrees(int k) const {
  const FormBasis& fb = FormBasis::get(n2, k);
  int n = n2 / 2;
  std::vector<std::pair<int, int>> out;
  out.reserve(fb.idx.size());
  for (const auto& I : fb.idx) {
    int p = 0;
    for (int i : I)
      if (i < n) ++p;
    out.emplace_back(p, k - p);
  }
  return out;
}

Eigen::MatrixXcd ComplexFrame::bidegree_proj(int k, int p, int q) const {
  auto bd = bidegrees(k);
  Eigen::MatrixXcd P = Eigen::MatrixXcd::Zero(bd.size(), bd.size());
  for (size_t i = 0; i < bd.size(); ++i)
    if (bd[i].first == p && bd[i].second == q) P(i, i) = 1.0;
  return P;
}

Eigen::MatrixXcd ComplexFrame::d_matrix(int k) const { return ce_matrix_complex(Cc, k); }

Eigen::MatrixXcd ComplexFrame::partial_matrix(int k) const {
  Eigen::MatrixXcd D = d_matrix(k);
  auto bsrc = bidegrees(k);
  auto bdst = bidegrees(k + 1);
  for (long r = 0; r < D.rows(); ++r)
    for (long c = 0; c < D.cols(); ++c)
      if (!(bdst[r].first == bsrc[c].first + 1 && bdst[r].second == bsrc[c].second))
        D(r, c) = 0.0;
  return D;
}

Eigen::MatrixXcd ComplexFrame::dbar_matrix(int k) const {
  Eigen::MatrixXcd D = d_matrix(k);
  auto bsrc = bidegrees(k);
  auto bdst = bidegrees(k + 1);
  for (long r = 0; r < D.rows(); ++r)
    for (long c = 0; c < D.cols(); ++c)
      if (!(bdst[r].first == bsrc[c].first && bdst[r].second == bsrc[c].second + 1))
        D(r, c) = 0.0;
  return D;
}

KForm dc(const HermitianStructure& H, const KForm& sigma, double tol) {
  double nres = nijenhuis_residual(H);
  if (nres > tol)
    throw std::domain_error("dc: bidegree split requires an integrable J (Nijenhuis residual " +
                            std::to_string(nres) + ")");
  ComplexFrame fr(H);
  Eigen::VectorXcd v = fr.to_zeta(sigma.k) * sigma.c.cast<cplx>();
  const cplx I(0.0, 1.0);
  Eigen::VectorXcd w = I * ((fr.dbar_matrix(sigma.k) - fr.partial_matrix(sigma.k)) * v);
  Eigen::VectorXcd back = fr.from_zeta(sigma.k + 1) * w;
  double imag_norm = back.imag().norm();
  if (imag_norm > 1e-7 * std::max(1.0, back.norm()))
    throw std::runtime_error("dc: result unexpectedly non-real");
  KForm out(sigma.n, sigma.k + 1);
  out.c = back.real();
  return out;
}

KForm pullback_form(const KForm& sigma, const Eigen::MatrixXd& M) {
  KForm out = sigma;
  out.c = coeff_transform<double>(M, sigma.k) * sigma.c;
  return out;
}

double kahler_residual(const HermitianStructure& H) {
  KForm dom = ce_differential(H.L, H.omega());
  return std::sqrt(std::max(0.0, form_inner(dom, dom, H.g)));
}

double skt_residual(const HermitianStructure& H) {
  KForm ddc = ce_differential(H.L, dc(H, H.omega()));
  return std::sqrt(std::max(0.0, form_inner(ddc, ddc, H.g)));
}

double skt_residual_real_route(const HermitianStructure& H) {
  KForm dom = ce_differential(H.L, H.omega());
  KForm t = pullback_form(dom, H.J);  // domega(J.,J.,J.)
  KForm dt = ce_differential(H.L, t);
  return std::sqrt(std::max(0.0, form_inner(dt, dt, H.g)));
}

double balanced_residual(const HermitianStructure& H) {
  int n = H.dim() / 2;
  KForm om = H.omega();
  KForm dpow = ce_differential(H.L, wedge_power(om, n - 1));
  return std::sqrt(std::max(0.0, form_inner(dpow, dpow, H.g)));
}

KForm lee_form(const HermitianStructure& H) {
  int m = H.dim();
  int n = m / 2;
  KForm top = wedge_power(H.omega(), n - 1);
  Eigen::MatrixXd W(binomial(m, m - 1), m);
  for (int i = 0; i < m; ++i) W.col(i) = wedge(one_form(m, i), top).c;
  Eigen::VectorXd rhs = ce_differential(H.L, top).c;
  KForm theta(m, 1);
  theta.c = W.colPivHouseholderQr().solve(rhs);
  return theta;
}

KForm theta_tau(const HermitianStructure& H, double tau) {
  int m = H.dim();
  KForm omega = H.omega();
  KForm theta(m, 1);
  for (int i = 0; i < m; ++i) {
    Eigen::VectorXd ei = Eigen::VectorXd::Unit(m, i);
    double t1 = (H.L.ad(ei) * H.J).trace();
    double t2 = H.L.ad(Eigen::VectorXd(H.J * ei)).trace();
    KForm flat_i = flat(ei, H.g);
    double t3 = form_inner(omega, ce_differential(H.L, flat_i), H.g);
    theta.c(i) = 0.5 * (t1 - tau * t2 + (tau - 1.0) * t3);
  }
  return theta;
}

KForm ricci_tau(const HermitianStructure& H, double tau) {
  return ce_differential(H.L, theta_tau(H, tau));
}

KForm projection_11(const KForm& rho, const Eigen::MatrixXd& J) {
  Eigen::MatrixXd R = matrix_from_two_form<double>(rho);
  Eigen::MatrixXd P = 0.5 * (R + J.transpose() * R * J);
  return two_form_from_matrix<double>(P);
}

KForm bismut_ricci_oracle(const HermitianStructure& H) {
  int m = H.dim();
  Eigen::MatrixXd Lc = H.g.chol();
  Eigen::MatrixXd F = Lc.transpose().inverse();
  Eigen::MatrixXd Jon = Lc.transpose() * H.J * F;
  LieAlgebra Lon = H.L.change_basis(F);

  // torsion 3-form T = domega(J.,J.,J.) in the orthonormal frame
  KForm om_on = two_form_from_matrix<double>(Eigen::MatrixXd(Jon.transpose()));
  KForm dom = ce_differential(Lon, om_on);
  KForm T3 = pullback_form(dom, Jon);

  // Koszul formula (orthonormal frame, constant metric) + Bismut correction
  std::vector<Eigen::MatrixXd> Nabla(m, Eigen::MatrixXd::Zero(m, m));
  std::vector<std::vector<Eigen::VectorXd>> br(m, std::vector<Eigen::VectorXd>(m));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      br[i][j] = Lon.bracket(Eigen::VectorXd::Unit(m, i), Eigen::VectorXd::Unit(m, j));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k) {
        double lc = 0.5 * (br[i][j](k) - br[j][k](i) + br[k][i](j));
        double tors = 0.5 * T3.coeff({i, j, k});
        Nabla[i](k, j) = lc + tors;  // nabla^B_{f_i} f_j = sum_k (...) f_k
      }
  auto nabla_of = [&](const Eigen::VectorXd& v) {
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(m, m);
    for (int i = 0; i < m; ++i) M += v(i) * Nabla[i];
    return M;
  };

  KForm rho_on(m, 2);
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      Eigen::MatrixXd R =
          Nabla[i] * Nabla[j] - Nabla[j] * Nabla[i] - nabla_of(br[i][j]);
      rho_on.add_term({i, j}, -0.5 * (Jon.transpose() * R).trace());
    }
  return from_orthonormal(rho_on, H.g);
}

double angle_theta_hat(const HermitianStructure& H, const Eigen::VectorXd& n1,
                       const Eigen::MatrixXd& nilradical) {
  int m = H.dim();
  if (nilradical.cols() != m - 1)
    throw std::invalid_argument("angle_theta_hat: nilradical must have codimension one");
  Eigen::VectorXd u = H.J * n1;
  // g-orthogonal complement of the nilradical
  Eigen::MatrixXd A = nilradical.transpose() * H.g.g;  // (m-1) x m
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeFullV);
  Eigen::VectorXd w = svd.matrixV().col(m - 1);
  double c = std::abs(u.dot(H.g.g * w)) /
             std::sqrt(u.dot(H.g.g * u) * w.dot(H.g.g * w));
  return std::acos(std::min(1.0, std::max(0.0, c)));
}

namespace {

double search_objective(const LieAlgebra& L, const Eigen::MatrixXd& J0, SearchTarget target,
                        const Eigen::VectorXd& x) {
  int m = L.n;
  Eigen::MatrixXd h = Eigen::Map<const Eigen::MatrixXd>(x.data(), m, m);
  Eigen::FullPivLU<Eigen::MatrixXd> lu(h);
  if (!lu.isInvertible() || std::abs(lu.determinant()) < 1e-8) return 1e6;
  Eigen::MatrixXd hinv = lu.inverse();
  HermitianStructure H{L, h * J0 * hinv, Metric{hinv.transpose() * hinv}};
  double r1 = nijenhuis_residual(H);
  double r2 = 0.0;
  switch (target) {
    case SearchTarget::Complex: break;
    case SearchTarget::SKT: r2 = skt_residual_real_route(H); break;
    case SearchTarget::Balanced: r2 = balanced_residual(H); break;
  }
  return r1 * r1 + r2 * r2;
}

}  // namespace

SearchResult structure_search(const LieAlgebra& L, SearchTarget target,
                              const SearchOptions& opts) {
  int m = L.n;
  if (m % 2 != 0) throw std::invalid_argument("structure_search: even dimension required");
  Eigen::MatrixXd J0 = Eigen::MatrixXd::Zero(m, m);
  for (int l = 0; l < m / 2; ++l) {
    J0(2 * l + 1, 2 * l) = 1.0;
    J0(2 * l, 2 * l + 1) = -1.0;
  }

  std::mt19937_64 rng(opts.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);

  SearchResult out;
  out.best_residual = std::numeric_limits<double>::infinity();

  int total = opts.restarts + static_cast<int>(opts.warm_starts.size());
  for (int r = 0; r < total; ++r) {
    Eigen::MatrixXd h0;
    if (r < static_cast<int>(opts.warm_starts.size())) {
      h0 = opts.warm_starts[r];
    } else if (r == static_cast<int>(opts.warm_starts.size())) {
      h0 = Eigen::MatrixXd::Identity(m, m);
    } else {
      h0 = Eigen::MatrixXd::Identity(m, m);
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) h0(i, j) += 0.4 * gauss(rng);
    }
    Eigen::VectorXd x = Eigen::Map<Eigen::VectorXd>(h0.data(), m * m);
    double f = search_objective(L, J0, target, x);
    double step = 0.1;
    Eigen::VectorXd grad(m * m);
    for (int it = 0; it < opts.iters && f > opts.accept_tol * opts.accept_tol * 0.25; ++it) {
      for (int p = 0; p < m * m; ++p) {
        Eigen::VectorXd xp = x, xm = x;
        xp(p) += opts.fd_step;
        xm(p) -= opts.fd_step;
        grad(p) = (search_objective(L, J0, target, xp) - search_objective(L, J0, target, xm)) /
                  (2.0 * opts.fd_step);
      }
      double gn = grad.norm();
      if (gn < 1e-14) break;
      bool moved = false;
      for (int bt = 0; bt < 30; ++bt) {
        Eigen::VectorXd xn = x - (step / gn) * grad;
        double fn = search_objective(L, J0, target, xn);
        if (fn < f) {
          x = xn;
          f = fn;
          step *= 1.8;
          moved = true;
          break;
        }
        step *= 0.5;
      }
      if (!moved) break;
    }
    double res = std::sqrt(std::max(0.0, f));
    out.restart_residuals.push_back(res);
    if (res < out.best_residual) {
      out.best_residual = res;
      out.best_restart = r;
      Eigen::MatrixXd h = Eigen::Map<Eigen::MatrixXd>(x.data(), m, m);
      Eigen::MatrixXd hinv = h.inverse();
      out.best = HermitianStructure{L, h * J0 * hinv, Metric{hinv.transpose() * hinv}};
    }
  }
  out.found = out.best_residual < opts.accept_tol;
  return out;
}

}  // namespace hermlie
