#include "hermlie/flows.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <ostream>
#include <stdexcept>

namespace hermlie {

namespace {

// J restricted to k_3 in the case-(2) adapted basis, as an m x m matrix
Eigen::MatrixXd block_j(int m) {
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(m, m);
  for (int l = 0; l + 1 < m; l += 2) {
    J(l + 1, l) = 1.0;
    J(l, l + 1) = -1.0;
  }
  return J;
}

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

void check_gauge(const Eigen::MatrixXd& U, const Eigen::MatrixXd& J,
                 const Metric& g, double tol = 1e-10) {
  const double skew = (g.g * U + U.transpose() * g.g).norm();
  const double comm = (U * J - J * U).norm();
  if (skew > tol || comm > tol)
    throw std::invalid_argument(
        "gauge map must take values in u(2n, J, g): skew residual " +
        std::to_string(skew) + ", commutator residual " + std::to_string(comm));
}

}  // namespace

// ---- pi action and generators ----

LieAlgebra pi_action(const Eigen::MatrixXd& A, const LieAlgebra& mu) {
  const int n = mu.n;
  if (A.rows() != n || A.cols() != n)
    throw std::invalid_argument("pi_action: endomorphism size mismatch");
  LieAlgebra out(n);
  for (int k = 0; k < n; ++k) {
    Eigen::MatrixXd Ck = Eigen::MatrixXd::Zero(n, n);
    for (int m = 0; m < n; ++m)
      if (A(k, m) != 0.0) Ck += A(k, m) * mu.C[m];
    Ck -= A.transpose() * mu.C[k] + mu.C[k] * A;
    out.C[k] = Ck;
  }
  return out;
}

Eigen::MatrixXd p_endomorphism(const HermitianStructure& H, double tol) {
  const double nij = nijenhuis_residual(H);
  if (nij > tol)
    throw std::invalid_argument(
        "p_endomorphism requires an integrable complex structure, Nijenhuis "
        "residual " +
        std::to_string(nij));
  const KForm rho11 = projection_11(ricci_tau(H, -1.0), H.J);
  const Eigen::MatrixXd sig = matrix_from_two_form(rho11);
  return 0.5 * H.omega_matrix().inverse() * sig;
}

KForm lefschetz_contract(const KForm& omega, int power, const KForm& sigma) {
  const int n = omega.n;
  const KForm wp = wedge_power(omega, power);
  const int kout = 2 + 2 * power;
  if (sigma.k != kout)
    throw std::invalid_argument("lefschetz_contract: degree mismatch");
  const long m2 = binomial(n, 2);
  const long mk = binomial(n, kout);
  Eigen::MatrixXd W(mk, m2);
  for (long j = 0; j < m2; ++j) {
    KForm ej(n, 2);
    ej.c(j) = 1.0;
    W.col(j) = wedge(wp, ej).c;
  }
  KForm tau(n, 2);
  tau.c = W.colPivHouseholderQr().solve(sigma.c);
  return tau;
}

KForm bott_chern_laplacian(const HermitianStructure& H, const KForm& sigma) {
  const ComplexFrame F(H);
  const int k = sigma.k;
  const Eigen::MatrixXcd Pk = F.partial_matrix(k);
  const Eigen::MatrixXcd Dk = F.dbar_matrix(k);
  const Eigen::MatrixXcd Pk1 = F.partial_matrix(k + 1);
  const Eigen::MatrixXcd Pkm1 = F.partial_matrix(k - 1);
  const Eigen::MatrixXcd Dkm2 = F.dbar_matrix(k - 2);
  Eigen::MatrixXcd L =
      Pkm1 * Dkm2 * Dkm2.adjoint() * Pkm1.adjoint() +   // d' dbar dbar* d'*
      Dk.adjoint() * Pk1.adjoint() * Pk1 * Dk +         // dbar* d'* d' dbar
      Dk.adjoint() * Pk * Pk.adjoint() * Dk +           // dbar* d' d'* dbar
      Pk.adjoint() * Dk * Dk.adjoint() * Pk +           // d'* dbar dbar* d'
      Dk.adjoint() * Dk + Pk.adjoint() * Pk;            // dbar* dbar + d'* d'
  const Eigen::VectorXcd z = F.to_zeta(k) * sigma.c.cast<cplx>();
  const Eigen::VectorXcd w = F.from_zeta(k) * (L * z);
  if (w.imag().norm() > 1e-8 * (1.0 + w.norm()))
    throw std::runtime_error("bott_chern_laplacian: non-real output");
  KForm out(sigma.n, k);
  out.c = w.real();
  return out;
}

KForm q_velocity_form(const HermitianStructure& H, double second_factor_scale) {
  const int n2 = H.dim();
  const int n = n2 / 2;
  const KForm om = H.omega();

  // Laplacian summand
  const KForm lap = bott_chern_laplacian(H, wedge_power(om, n - 1));
  KForm out = lefschetz_contract(om, n - 2, lap) *
              (second_factor_scale / double(n - 1));

  // Chern-Ricci summand (n-2)! i_{omega^{n-2}} (i d' dbar *(rho^C ^ omega))
  const KForm rhoC = ricci_tau(H, 1.0);
  if (rhoC.norm() > 0.0) {
    const KForm s = hodge_star(wedge(rhoC, om), H.g);
    const ComplexFrame F(H);
    const int k = s.k;  // 2n - 4
    const Eigen::VectorXcd z = F.to_zeta(k) * s.c.cast<cplx>();
    const Eigen::VectorXcd w =
        F.from_zeta(k + 2) *
        (cplx(0.0, 1.0) * (F.partial_matrix(k + 1) * (F.dbar_matrix(k) * z)));
    if (w.imag().norm() > 1e-8 * (1.0 + w.norm()))
      throw std::runtime_error("q_velocity_form: non-real i d' dbar term");
    KForm idd(n2, k + 2);
    idd.c = w.real();
    out += lefschetz_contract(om, n - 2, idd) * factorial(n - 2);
  }
  return out;
}

Eigen::MatrixXd q_endomorphism(const HermitianStructure& H,
                               double second_factor_scale) {
  const Eigen::MatrixXd q =
      matrix_from_two_form(q_velocity_form(H, second_factor_scale));
  return -0.5 * H.omega_matrix().inverse() * q;
}

// ---- generic integrator ----

namespace {

Eigen::VectorXd rk4_step(const OdeRhs& rhs, double t, const Eigen::VectorXd& y,
                         double h) {
  const Eigen::VectorXd k1 = rhs(t, y);
  const Eigen::VectorXd k2 = rhs(t + 0.5 * h, y + 0.5 * h * k1);
  const Eigen::VectorXd k3 = rhs(t + 0.5 * h, y + 0.5 * h * k2);
  const Eigen::VectorXd k4 = rhs(t + h, y + h * k3);
  return y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

}  // namespace

FlowTrajectory integrate_ode(const OdeRhs& rhs, const Eigen::VectorXd& y0,
                             const FlowConfig& cfg, const OdeMonitor& monitor) {
  FlowTrajectory traj;
  double t = 0.0;
  Eigen::VectorXd y = y0;
  double h = cfg.h_init;
  int quiet = 0;

  auto push = [&](double tt, const Eigen::VectorXd& yy) {
    FlowSample s;
    s.t = tt;
    s.y = yy;
    s.rhs_norm = rhs(tt, yy).norm();
    s.monitor = monitor ? monitor(yy) : 0.0;
    if (monitor && s.monitor > cfg.monitor_tol)
      throw std::runtime_error("integrate_ode: monitored residual " +
                               std::to_string(s.monitor) +
                               " exceeds tolerance at t = " + std::to_string(tt));
    traj.samples.push_back(std::move(s));
  };
  push(t, y);

  int steps = 0;
  while (t < cfg.t_end) {
    if (++steps > cfg.max_steps)
      throw std::runtime_error("integrate_ode: accepted-step budget exhausted");
    if (h > cfg.t_end - t) h = cfg.t_end - t;
    // one full step vs two half steps for the local error estimate
    for (;;) {
      const Eigen::VectorXd yf = rk4_step(rhs, t, y, h);
      Eigen::VectorXd yh = rk4_step(rhs, t, y, 0.5 * h);
      yh = rk4_step(rhs, t + 0.5 * h, yh, 0.5 * h);
      const double err = (yf - yh).norm() / 15.0;
      if (err <= cfg.err_tol) {
        t += h;
        y = yh;
        if (err < cfg.err_tol / 64.0) h *= 2.0;
        break;
      }
      h *= 0.5;
      if (h < cfg.h_min)
        throw std::runtime_error("integrate_ode: step size underflow at t = " +
                                 std::to_string(t));
    }
    push(t, y);
    if (traj.samples.back().rhs_norm < cfg.conv_tol) {
      if (++quiet >= cfg.conv_steps) {
        traj.converged = true;
        break;
      }
    } else {
      quiet = 0;
    }
  }
  return traj;
}

// ---- bracket flows ----

Eigen::VectorXd mu_to_vec(const LieAlgebra& L) {
  const int n = L.n;
  Eigen::VectorXd y(n * n * n);
  for (int k = 0; k < n; ++k)
    y.segment(k * n * n, n * n) =
        Eigen::Map<const Eigen::VectorXd>(L.C[k].data(), n * n);
  return y;
}

LieAlgebra vec_to_mu(const Eigen::VectorXd& y, int n) {
  if (y.size() != n * n * n)
    throw std::invalid_argument("vec_to_mu: size mismatch");
  LieAlgebra L(n);
  for (int k = 0; k < n; ++k)
    L.C[k] = Eigen::Map<const Eigen::MatrixXd>(y.data() + k * n * n, n, n);
  return L;
}

namespace {

OdeRhs bracket_rhs(const Eigen::MatrixXd& J, const Metric& g,
                   const GaugeMap& gauge, bool balanced, double scale) {
  const int n = static_cast<int>(J.rows());
  return [=](double, const Eigen::VectorXd& y) -> Eigen::VectorXd {
    const LieAlgebra L = vec_to_mu(y, n);
    const HermitianStructure H{L, J, g};
    Eigen::MatrixXd D =
        balanced ? q_endomorphism(H, scale) : p_endomorphism(H);
    if (gauge) {
      const Eigen::MatrixXd U = gauge(H);
      check_gauge(U, J, g);
      D -= U;
    }
    return -mu_to_vec(pi_action(D, L));
  };
}

}  // namespace

OdeRhs pluriclosed_bracket_rhs(const Eigen::MatrixXd& J, const Metric& g,
                               const GaugeMap& gauge) {
  return bracket_rhs(J, g, gauge, false, 1.0);
}

OdeRhs balanced_bracket_rhs(const Eigen::MatrixXd& J, const Metric& g,
                            const GaugeMap& gauge, double second_factor_scale) {
  return bracket_rhs(J, g, gauge, true, second_factor_scale);
}

FlowTrajectory integrate_bracket_flow(const OdeRhs& rhs, const LieAlgebra& mu0,
                                      const FlowConfig& cfg) {
  const int n = mu0.n;
  OdeMonitor monitor = [n](const Eigen::VectorXd& y) {
    return jacobi_residual(vec_to_mu(y, n));
  };
  return integrate_ode(rhs, mu_to_vec(mu0), cfg, monitor);
}

// ---- reduced case-(2) pluriclosed systems ----

double PluriclosedSub2State::r() const {
  const double s = c * c + alpha.squaredNorm();
  return (alpha.squaredNorm() * (s + a * a + q * q) +
          c * c * (v2 * v2 + 2.0 * a * a)) /
         (c * c);
}

Eigen::Vector2d PluriclosedSub2State::z() const {
  // read off the alpha ^ e^5 / alpha ^ e^6 rows of (rho^B)^{1,1}
  const Eigen::MatrixXd J = block_j(2);
  const Eigen::MatrixXd A = -q * J;
  const double s = c * c + alpha.squaredNorm();
  const Eigen::MatrixXd M =
      a * A - (2.0 * s + q * q) * Eigen::MatrixXd::Identity(2, 2);
  return (1.0 / c) * (J * (M.transpose() * alpha));
}

// gauge-corrected generator of the six-dimensional c != 0 branch
static Eigen::MatrixXd sub2_corrected(const PluriclosedSub2State& st) {
  const double s = st.c * st.c + st.alpha.squaredNorm();
  const Eigen::Vector2d zz = st.z();
  const Eigen::MatrixXd J = block_j(2);
  const Eigen::Vector2d Jz = J * zz;
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(6, 6);
  M(0, 4) = st.a / st.c * s;
  M(0, 5) = st.a * st.v2;
  M(1, 4) = -st.a * st.v2;
  M(1, 5) = st.a / st.c * s;
  M.block(2, 2, 2, 2) = s * Eigen::MatrixXd::Identity(2, 2);
  M.block(2, 4, 2, 1) = Jz;
  M.block(2, 5, 2, 1) = -zz;
  M(4, 4) = st.r();
  M(5, 5) = st.r();
  return -0.5 * M;
}

Eigen::MatrixXd PluriclosedSub2State::P() const {
  const double s = c * c + alpha.squaredNorm();
  const Eigen::Vector2d zz = z();
  const Eigen::MatrixXd J = block_j(2);
  const Eigen::Vector2d Jz = J * zz;
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(6, 6);
  M(0, 4) = a / c * s;
  M(0, 5) = a * v2;
  M(1, 4) = -a * v2;
  M(1, 5) = a / c * s;
  M.block(2, 2, 2, 2) = 2.0 * s * Eigen::MatrixXd::Identity(2, 2);
  M.block(2, 4, 2, 1) = Jz;
  M.block(2, 5, 2, 1) = -zz;
  M(4, 4) = 2.0 * r();
  M(5, 5) = 2.0 * r();
  Eigen::MatrixXd sym = M;
  sym.block(4, 0, 2, 4) = M.block(0, 4, 4, 2).transpose();
  return -0.25 * sym;
}

Eigen::MatrixXd PluriclosedSub2State::U() const { return P() - sub2_corrected(*this); }

Case2Data PluriclosedSub2State::data() const {
  if (c == 0.0)
    throw std::domain_error("the c != 0 pluriclosed branch requires c != 0");
  const Eigen::MatrixXd J = block_j(2);
  const double v1 = alpha.squaredNorm() / c;
  const Eigen::Vector2d v = -(q * J + a * Eigen::MatrixXd::Identity(2, 2)) *
                            alpha / c;  // -(A^t + a Id) alpha^sharp / c
  const Eigen::Vector2d nu = -J * alpha;
  return case2_reduced_dim6(a, -a, v1, v2, q, c, v, alpha, nu);
}

Eigen::VectorXd PluriclosedSub2State::to_vector() const {
  Eigen::VectorXd y(6);
  y << a, q, v2, c, alpha(0), alpha(1);
  return y;
}

PluriclosedSub2State PluriclosedSub2State::from_vector(const Eigen::VectorXd& y) {
  PluriclosedSub2State s;
  s.a = y(0);
  s.q = y(1);
  s.v2 = y(2);
  s.c = y(3);
  s.alpha = Eigen::Vector2d(y(4), y(5));
  return s;
}

PluriclosedSub2State PluriclosedSub2State::from_bracket(const LieAlgebra& L) {
  if (L.n != 6)
    throw std::invalid_argument("the c != 0 branch lives in dimension six");
  PluriclosedSub2State s;
  s.a = L.C[4](5, 4);
  s.q = L.C[2](5, 3);
  s.v2 = L.C[1](5, 4);
  s.c = -L.C[0](2, 3);
  s.alpha = Eigen::Vector2d(L.C[0](5, 2), L.C[0](5, 3));
  return s;
}

PluriclosedSub2State pluriclosed_case2_rhs(const PluriclosedSub2State& s) {
  if (s.c == 0.0)
    throw std::domain_error(
        "pluriclosed_case2_rhs: c = 0 leaves the c != 0 branch");
  const LieAlgebra L = build_case2(s.data(), 1e-6).L;
  const LieAlgebra dmu = pi_action(sub2_corrected(s), L);
  PluriclosedSub2State d;  // d/dt mu = -pi(P - U) mu, entries read off ad e_6
  d.a = -dmu.C[4](5, 4);
  d.q = -dmu.C[2](5, 3);
  d.v2 = -dmu.C[1](5, 4);
  d.c = dmu.C[0](2, 3);
  d.alpha = Eigen::Vector2d(-dmu.C[0](5, 2), -dmu.C[0](5, 3));
  return d;
}

double PluriclosedSub1State::r() const {
  return -0.5 * a * a * (2.0 + 0.5 * k()) -
         0.5 * (v1 * v1 + v2 * v2 + v.squaredNorm());
}

int PluriclosedSub1State::k() const {
  const Eigen::MatrixXd Sym = A + A.transpose();
  if (Sym.norm() == 0.0) return 0;
  Eigen::FullPivLU<Eigen::MatrixXd> lu(Sym);
  lu.setThreshold(1e-10);
  return static_cast<int>(lu.rank()) / 2;
}

Eigen::MatrixXd PluriclosedSub1State::S() const {
  const int m = k3_dim();
  return -0.5 * A * A.transpose() + 0.25 * a * (A + A.transpose()) -
         0.5 * a * a * (2.0 + 0.5 * k()) * Eigen::MatrixXd::Identity(m, m);
}

Eigen::MatrixXd PluriclosedSub1State::U() const {
  const int m = k3_dim();
  const int n2 = m + 4;
  const Eigen::MatrixXd J = block_j(m);
  const Eigen::VectorXd z = -0.25 * A.transpose() * v;
  const Eigen::VectorXd Jz = J * z;
  Eigen::MatrixXd U = Eigen::MatrixXd::Zero(n2, n2);
  U(0, n2 - 2) = 0.25 * a * v1;
  U(0, n2 - 1) = 0.25 * a * v2;
  U(1, n2 - 2) = -0.25 * a * v2;
  U(1, n2 - 1) = 0.25 * a * v1;
  U.block(2, 2, m, m) = 0.25 * a * (A - A.transpose());
  U.block(2, n2 - 2, m, 1) = -z;
  U.block(2, n2 - 1, m, 1) = -Jz;
  U.block(n2 - 2, 0, 2, 2) << -0.25 * a * v1, 0.25 * a * v2, -0.25 * a * v2,
      -0.25 * a * v1;
  U.block(n2 - 2, 2, 1, m) = z.transpose();
  U.block(n2 - 1, 2, 1, m) = Jz.transpose();
  return U;
}

Case2Data PluriclosedSub1State::data() const {
  const int m = k3_dim();
  Case2Data d = Case2Data::zero((m + 4) / 2);
  d.a = a;
  d.a2 = -a;
  d.lambda = -a;
  d.v1 = v1;
  d.v2 = v2;
  d.v = v;
  d.A = A;
  return d;
}

Eigen::VectorXd PluriclosedSub1State::to_vector() const {
  const int m = k3_dim();
  Eigen::VectorXd y(3 + m + m * m);
  y(0) = a;
  y(1) = v1;
  y(2) = v2;
  y.segment(3, m) = v;
  y.segment(3 + m, m * m) = Eigen::Map<const Eigen::VectorXd>(A.data(), m * m);
  return y;
}

PluriclosedSub1State PluriclosedSub1State::from_vector(const Eigen::VectorXd& y,
                                                       int k3) {
  PluriclosedSub1State s;
  s.a = y(0);
  s.v1 = y(1);
  s.v2 = y(2);
  s.v = y.segment(3, k3);
  s.A = Eigen::Map<const Eigen::MatrixXd>(y.data() + 3 + k3, k3, k3);
  return s;
}

PluriclosedSub1State PluriclosedSub1State::from_bracket(const LieAlgebra& L) {
  const int n2 = L.n;
  const int m = n2 - 4;
  const int last = n2 - 2;
  PluriclosedSub1State s;
  s.a = L.C[last](n2 - 1, last);
  s.v1 = L.C[0](n2 - 1, last);
  s.v2 = L.C[1](n2 - 1, last);
  s.v.resize(m);
  s.A.resize(m, m);
  for (int i = 0; i < m; ++i) {
    s.v(i) = L.C[2 + i](n2 - 1, last);
    for (int j = 0; j < m; ++j) s.A(j, i) = L.C[2 + j](n2 - 1, 2 + i);
  }
  return s;
}

PluriclosedSub1State pluriclosed_case2_rhs(const PluriclosedSub1State& s) {
  const double r = s.r();
  PluriclosedSub1State d;
  d.a = r * s.a;
  d.v1 = 2.0 * r * s.v1;
  d.v2 = (-s.a * s.a + 2.0 * r) * s.v2;
  d.v = r * s.v + s.S() * s.v -
        0.5 * (s.v1 * s.v1 + s.v2 * s.v2 + s.v.squaredNorm()) * s.v;
  d.A = r * s.A;
  return d;
}

PluriclosedSub1State normalized_pluriclosed_rhs(const PluriclosedSub1State& s) {
  const double r = s.r();
  const int m = s.k3_dim();
  PluriclosedSub1State d;
  d.a = 0.0;
  d.v1 = r * s.v1;
  d.v2 = (-s.a * s.a + r) * s.v2;
  d.v = s.S() * s.v -
        0.5 * (s.v1 * s.v1 + s.v2 * s.v2 + s.v.squaredNorm()) * s.v;
  d.A = Eigen::MatrixXd::Zero(m, m);
  return d;
}

Eigen::MatrixXd gauge_pluriclosed_sub2(const HermitianStructure& H) {
  return PluriclosedSub2State::from_bracket(H.L).U();
}

Eigen::MatrixXd gauge_pluriclosed_sub1(const HermitianStructure& H) {
  return PluriclosedSub1State::from_bracket(H.L).U();
}

Eigen::MatrixXd gauge_balanced_case2(const HermitianStructure& H) {
  return BalancedCase2State::from_bracket(H.L).U();
}

// ---- reduced balanced systems ----

double BalancedCase1State::m() const {
  const double t = (block_j(4) * A).trace();
  return 4.0 * A.squaredNorm() - t * t;
}

double BalancedCase1State::p() const {
  const Eigen::MatrixXd Ap = 0.5 * (A + A.transpose());
  const double eta2 = 0.5 * eta.squaredNorm();  // form norm squared
  return -m() / 32.0 * Ap.squaredNorm() + eta2 * eta2 / 16.0;
}

Eigen::MatrixXd BalancedCase1State::P() const {
  const double eta2 = 0.5 * eta.squaredNorm();
  return m() / 32.0 * (A * A.transpose() - A.transpose() * A) -
         eta2 * eta2 / 16.0 * Eigen::MatrixXd::Identity(4, 4);
}

Case1Data BalancedCase1State::data() const {
  Case1Data d;
  d.n = 3;
  d.a = a;
  d.beta = Eigen::VectorXd::Zero(4);
  d.A = A;
  d.eta = eta;
  return d;
}

Eigen::VectorXd BalancedCase1State::to_vector() const {
  Eigen::VectorXd y(1 + 16 + 16);
  y(0) = a;
  y.segment(1, 16) = Eigen::Map<const Eigen::VectorXd>(A.data(), 16);
  y.segment(17, 16) = Eigen::Map<const Eigen::VectorXd>(eta.data(), 16);
  return y;
}

BalancedCase1State BalancedCase1State::from_vector(const Eigen::VectorXd& y) {
  BalancedCase1State s;
  s.a = y(0);
  s.A = Eigen::Map<const Eigen::MatrixXd>(y.data() + 1, 4, 4);
  s.eta = Eigen::Map<const Eigen::MatrixXd>(y.data() + 17, 4, 4);
  return s;
}

BalancedCase1State BalancedCase1State::from_bracket(const LieAlgebra& L) {
  if (L.n != 6)
    throw std::invalid_argument("balanced case-1 state lives in dimension six");
  BalancedCase1State s;
  s.a = L.C[0](5, 0);
  s.A.resize(4, 4);
  s.eta.resize(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      s.A(j, i) = L.C[1 + j](5, 1 + i);
      s.eta(i, j) = -L.C[0](1 + i, 1 + j);
    }
  return s;
}

BalancedCase1State balanced_case1_rhs(const BalancedCase1State& s) {
  const double p = s.p();
  const Eigen::MatrixXd P = s.P();
  BalancedCase1State d;
  d.a = p * s.a;
  d.A = s.A * P - P * s.A + p * s.A;
  d.eta = P.transpose() * s.eta + s.eta * P - p * s.eta;  // P^* eta - p eta
  return d;
}

double BalancedCase2State::h() const {
  const double s = c * c + p * p + q * q;
  return 0.25 * (s * s + 0.5 * b * b * (p * p + q * q));
}

double BalancedCase2State::k() const {
  return 0.5 * (c * c + p * p + q * q + 0.5 * b * b);
}

Eigen::MatrixXd BalancedCase2State::Q() const {
  const double hh = h();
  const double kk = k();
  Eigen::MatrixXd Q = Eigen::MatrixXd::Zero(6, 6);
  Q.diagonal() << hh, hh, -hh, -hh, -hh, -hh;
  Q(0, 2) = 0.5 * b * q * kk;
  Q(0, 3) = -0.5 * b * p * kk;
  Q(1, 2) = 0.5 * b * p * kk;
  Q(1, 3) = 0.5 * b * q * kk;
  Q.block(2, 0, 2, 2) = Q.block(0, 2, 2, 2).transpose();
  return Q;
}

Eigen::MatrixXd BalancedCase2State::U() const {
  const double kk = k();
  Eigen::MatrixXd U = Eigen::MatrixXd::Zero(6, 6);
  U(0, 2) = -0.5 * b * q * kk;
  U(0, 3) = 0.5 * b * p * kk;
  U(1, 2) = -0.5 * b * p * kk;
  U(1, 3) = -0.5 * b * q * kk;
  U.block(2, 0, 2, 2) = -U.block(0, 2, 2, 2).transpose();
  return U;
}

Case2Data BalancedCase2State::data() const {
  Case2Data d = Case2Data::zero(3);
  d.alpha = Eigen::Vector2d(p, q);
  d.gamma = Eigen::Vector2d(-q, p);
  d.A(0, 1) = b;
  d.A(1, 0) = -b;
  d.v1 = -c;
  d.xi(0, 1) = c;
  d.xi(1, 0) = -c;
  return d;
}

Eigen::VectorXd BalancedCase2State::to_vector() const {
  Eigen::VectorXd y(4);
  y << b, c, p, q;
  return y;
}

BalancedCase2State BalancedCase2State::from_vector(const Eigen::VectorXd& y) {
  BalancedCase2State s;
  s.b = y(0);
  s.c = y(1);
  s.p = y(2);
  s.q = y(3);
  return s;
}

BalancedCase2State BalancedCase2State::from_bracket(const LieAlgebra& L) {
  if (L.n != 6)
    throw std::invalid_argument("balanced case-2 state lives in dimension six");
  BalancedCase2State s;
  s.b = L.C[2](5, 3);
  s.c = -L.C[0](2, 3);
  s.p = L.C[0](5, 2);
  s.q = L.C[0](5, 3);
  return s;
}

BalancedCase2State balanced_case2_rhs(const BalancedCase2State& s) {
  const double hh = s.h();
  const double kk = s.k();
  BalancedCase2State d;
  d.b = -hh * s.b;
  d.c = -3.0 * hh * s.c;
  d.p = -(kk * s.b * s.b + 3.0 * hh) * s.p;
  d.q = -(kk * s.b * s.b + 3.0 * hh) * s.q;
  return d;
}

// ---- direct metric flows ----

std::vector<MetricFlowSample> metric_flow_direct(const HermitianStructure& H0,
                                                 MetricFlowKind kind,
                                                 const FlowConfig& cfg,
                                                 double second_factor_scale) {
  H0.validate();
  const int n2 = H0.dim();
  const LieAlgebra L = H0.L;
  const Eigen::MatrixXd J = H0.J;

  auto unpack = [&](const Eigen::VectorXd& y) -> HermitianStructure {
    const Eigen::MatrixXd om =
        Eigen::Map<const Eigen::MatrixXd>(y.data(), n2, n2);
    Eigen::MatrixXd G = -J.transpose() * om;
    G = 0.5 * (G + G.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(G);
    if (es.eigenvalues().minCoeff() < 1e-12)
      throw std::runtime_error("metric_flow_direct: metric degenerated");
    return HermitianStructure{L, J, Metric{G}};
  };
  auto velocity = [&](const HermitianStructure& H) -> KForm {
    if (kind == MetricFlowKind::pluriclosed)
      return -projection_11(ricci_tau(H, -1.0), H.J);
    return q_velocity_form(H, second_factor_scale);
  };
  OdeRhs rhs = [&](double, const Eigen::VectorXd& y) -> Eigen::VectorXd {
    const Eigen::MatrixXd dom = matrix_from_two_form(velocity(unpack(y)));
    return Eigen::Map<const Eigen::VectorXd>(dom.data(), n2 * n2);
  };

  const Eigen::MatrixXd om0 = H0.omega_matrix();
  const FlowTrajectory traj = integrate_ode(
      rhs, Eigen::Map<const Eigen::VectorXd>(om0.data(), n2 * n2), cfg);

  std::vector<MetricFlowSample> out;
  out.reserve(traj.samples.size());
  for (const FlowSample& s : traj.samples) {
    const HermitianStructure H = unpack(s.y);
    MetricFlowSample ms;
    ms.t = s.t;
    ms.omega = Eigen::Map<const Eigen::MatrixXd>(s.y.data(), n2, n2);
    ms.velocity_norm = velocity(H).norm();
    ms.flow_residual = kind == MetricFlowKind::pluriclosed
                           ? skt_residual(H)
                           : balanced_residual(H);
    out.push_back(std::move(ms));
  }
  return out;
}

// ---- export ----

void write_trajectory_csv(std::ostream& os, const FlowTrajectory& traj,
                          const std::vector<std::string>& columns) {
  os.precision(17);
  os << "t";
  for (const std::string& c : columns) os << "," << c;
  os << ",monitor,rhs_norm\n";
  for (const FlowSample& s : traj.samples) {
    if (static_cast<long>(columns.size()) != s.y.size())
      throw std::invalid_argument("write_trajectory_csv: column count mismatch");
    os << s.t;
    for (long i = 0; i < s.y.size(); ++i) os << "," << s.y(i);
    os << "," << s.monitor << "," << s.rhs_norm << "\n";
  }
}

}  // namespace hermlie
