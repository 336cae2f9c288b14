#include "hermlie/almost_nilpotent.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace hermlie {

namespace {

// standard complex structure on an even-dimensional block: pairs (0,1), (2,3), ...
Eigen::MatrixXd block_J(int m) {
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(m, m);
  for (int l = 0; 2 * l + 1 < m; ++l) {
    J(2 * l + 1, 2 * l) = 1.0;
    J(2 * l, 2 * l + 1) = -1.0;
  }
  return J;
}

// (A^* sigma)(X,Y) = sigma(AX,Y) + sigma(X,AY) on matrices of 2-forms
Eigen::MatrixXd pull_2form(const Eigen::MatrixXd& A, const Eigen::MatrixXd& S) {
  return A.transpose() * S + S * A;
}

// trace of a 2-form against the adapted J-pairs of an even block
double pair_trace(const Eigen::MatrixXd& S) {
  double t = 0.0;
  for (int l = 0; 2 * l + 1 < S.rows(); ++l) t += S(2 * l, 2 * l + 1);
  return t;
}

// action of J on a 1-form, (J alpha)(X) = -alpha(JX)
Eigen::VectorXd J_form(const Eigen::MatrixXd& J, const Eigen::VectorXd& al) {
  return -J.transpose() * al;
}

// wedge of two 1-forms as a skew matrix
Eigen::MatrixXd wedge11(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  return a * b.transpose() - b * a.transpose();
}

KForm form_on_k1(const Eigen::MatrixXd& S) {  // embed skew matrix as 2-form
  return two_form_from_matrix(S);
}

}  // namespace

// ---- case (1) ----

Eigen::MatrixXd Case1Data::Jk1() const { return block_J(k1_dim()); }

double Case1Data::validity_residual() const {
  return (pull_2form(A, eta) - a * eta).norm();
}

bool Case1Data::strongly_unimodular(double tol) const {
  return std::abs(a) < tol && std::abs(A.trace()) < tol;
}

Case1Data random_su_case1(int n, unsigned seed, bool traceless_eta) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> N(0.0, 1.0);
  const int m = 2 * n - 2;
  Case1Data d;
  d.n = n;
  d.a = 0.0;
  d.beta = Eigen::VectorXd::Zero(m);
  // A skew and commuting with J: diagonal rotation blocks
  d.A = Eigen::MatrixXd::Zero(m, m);
  d.eta = Eigen::MatrixXd::Zero(m, m);
  for (int l = 0; 2 * l + 1 < m; ++l) {
    const double b = N(rng);
    d.A(2 * l, 2 * l + 1) = b;
    d.A(2 * l + 1, 2 * l) = -b;
    double h = N(rng);
    d.eta(2 * l, 2 * l + 1) = h;
    d.eta(2 * l + 1, 2 * l) = -h;
  }
  if (traceless_eta) {
    const double t = pair_trace(d.eta) - d.eta(0, 1);
    d.eta(0, 1) = -t;
    d.eta(1, 0) = t;
  }
  return d;
}

HermitianStructure build_case1(const Case1Data& d, double tol,
                               bool allow_zero_eta) {
  const int n2 = 2 * d.n;
  const int m = d.k1_dim();
  if (d.A.rows() != m || d.eta.rows() != m || d.beta.size() != m)
    throw std::invalid_argument("case-1 data have inconsistent dimensions");
  if (d.validity_residual() > tol)
    throw std::invalid_argument(
        "case-1 data violate the derivation constraint A* eta = a eta");
  if (!allow_zero_eta && d.eta.norm() < tol)
    throw std::invalid_argument(
        "case-1 data need eta != 0 (the commutator of the nilradical "
        "degenerates)");
  LieAlgebra L(n2);
  Eigen::VectorXd be1 = Eigen::VectorXd::Zero(n2);
  be1(0) = d.a;
  L.set_bracket(n2 - 1, 0, be1);
  for (int i = 0; i < m; ++i) {
    Eigen::VectorXd bx = Eigen::VectorXd::Zero(n2);
    bx(0) = d.beta(i);
    for (int j = 0; j < m; ++j) bx(1 + j) = d.A(j, i);
    L.set_bracket(n2 - 1, 1 + i, bx);
    for (int j = i + 1; j < m; ++j)
      L.add_bracket(1 + i, 1 + j, 0, -d.eta(i, j));
  }
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n2, n2);
  J(n2 - 1, 0) = 1.0;
  J(0, n2 - 1) = -1.0;
  J.block(1, 1, m, m) = block_J(m);
  return HermitianStructure{L, J, Metric{Eigen::MatrixXd::Identity(n2, n2)}};
}

bool integrable_case1(const Case1Data& d, double tol) {
  const Eigen::MatrixXd J = d.Jk1();
  const bool commutes = (d.A * J - J * d.A).norm() < tol;
  const bool type11 = (J.transpose() * d.eta * J - d.eta).norm() < tol;
  return commutes && d.beta.norm() < tol && type11;
}

double form_trace_k1(const Eigen::MatrixXd& eta) { return pair_trace(eta); }

bool skt_case1(const Case1Data& d, double tol) {
  if (!integrable_case1(d, tol)) return false;
  const int m = d.k1_dim();
  const Eigen::MatrixXd omega = d.Jk1().transpose();  // g = identity on k_1
  KForm eta = form_on_k1(d.eta);
  KForm Aw = form_on_k1(pull_2form(d.A, omega));
  // eta^2 = eta ^ A* omega
  const double r1 = (wedge(eta, eta).c - wedge(eta, Aw).c).norm();
  // (aA + A^2 + A^t A)* omega = 2a eta
  const Eigen::MatrixXd M =
      d.a * d.A + d.A * d.A + d.A.transpose() * d.A;
  const double r2 = (pull_2form(M, omega) - 2.0 * d.a * d.eta).norm();
  (void)m;
  return r1 < tol && r2 < tol;
}

bool kahler_case1(const Case1Data& d, double tol) {
  if (!integrable_case1(d, tol)) return false;
  const Eigen::MatrixXd omega = d.Jk1().transpose();
  return (d.eta - pull_2form(d.A, omega)).norm() < tol;
}

bool balanced_case1(const Case1Data& d, double tol) {
  if (!integrable_case1(d, tol)) return false;
  return std::abs(d.A.trace() - pair_trace(d.eta)) < tol;
}

// ---- case (2) ----

Case2Data Case2Data::zero(int n) {
  Case2Data d;
  d.n = n;
  const int m = 2 * n - 4;
  d.v = d.w = Eigen::VectorXd::Zero(m);
  d.alpha = d.beta = d.gamma = d.nu = d.delta = Eigen::VectorXd::Zero(m);
  d.A = Eigen::MatrixXd::Zero(m, m);
  d.xi = Eigen::MatrixXd::Zero(m, m);
  return d;
}

Eigen::MatrixXd Case2Data::Jk3() const { return block_J(k3_dim()); }

Eigen::Vector4d Case2Data::validity_residuals() const {
  Eigen::Vector4d r;
  // (a2 - a1) delta + A^t delta + p2 nu - lambda beta - i_w xi = 0
  r(0) = ((a2 - a1) * delta + A.transpose() * delta + p2 * nu - lambda * beta -
          xi.transpose() * w)
             .norm();
  // lambda (a + a2 - a1) + nu(w) + delta(v) = 0
  r(1) = std::abs(lambda * (a + a2 - a1) + nu.dot(w) + delta.dot(v));
  // a1 xi - A* xi + gamma ^ delta + beta ^ nu = 0
  r(2) = (a1 * xi - pull_2form(A, xi) + wedge11(gamma, delta) +
          wedge11(beta, nu))
             .norm();
  // (a - a1) nu + A^t nu + lambda gamma + v2 delta - i_v xi = 0
  r(3) = ((a - a1) * nu + A.transpose() * nu + lambda * gamma + v2 * delta -
          xi.transpose() * v)
             .norm();
  return r;
}

bool Case2Data::strongly_unimodular(double tol) const {
  return std::abs(a1) < tol && std::abs(a + a2 + A.trace()) < tol;
}

HermitianStructure build_case2(const Case2Data& d, double tol,
                               bool allow_zero_eta) {
  const int n2 = 2 * d.n;
  const int m = d.k3_dim();
  if (d.A.rows() != m || d.xi.rows() != m || d.alpha.size() != m ||
      d.v.size() != m)
    throw std::invalid_argument("case-2 data have inconsistent dimensions");
  const Eigen::Vector4d res = d.validity_residuals();
  if (res.norm() > tol)
    throw std::invalid_argument(
        "case-2 data violate derivation constraints, residuals (" +
        std::to_string(res(0)) + ", " + std::to_string(res(1)) + ", " +
        std::to_string(res(2)) + ", " + std::to_string(res(3)) + ")");
  // eta = xi + delta ^ e^2 + nu ^ e^{2n-1} + lambda e^2 ^ e^{2n-1} on
  // k_2 = <e_2, ..., e_{2n-1}>
  const double eta_norm = d.xi.norm() + d.delta.norm() + d.nu.norm() +
                          std::abs(d.lambda);
  if (!allow_zero_eta && eta_norm < tol)
    throw std::invalid_argument("case-2 data need eta != 0");

  LieAlgebra L(n2);
  const int last = n2 - 2;  // index of e_{2n-1}
  // ad e_{2n} on n = R e_1 + R e_2 + k_3 + R e_{2n-1}
  Eigen::VectorXd col = Eigen::VectorXd::Zero(n2);
  col(0) = d.a1;
  L.set_bracket(n2 - 1, 0, col);
  col.setZero();
  col(0) = d.p1;
  col(1) = d.a2;
  col.segment(2, m) = d.w;
  col(last) = d.p2;
  L.set_bracket(n2 - 1, 1, col);
  for (int i = 0; i < m; ++i) {
    col.setZero();
    col(0) = d.alpha(i);
    col(1) = d.gamma(i);
    for (int j = 0; j < m; ++j) col(2 + j) = d.A(j, i);
    col(last) = d.beta(i);
    L.set_bracket(n2 - 1, 2 + i, col);
  }
  col.setZero();
  col(0) = d.v1;
  col(1) = d.v2;
  col.segment(2, m) = d.v;
  col(last) = d.a;
  L.set_bracket(n2 - 1, last, col);
  // [Y, Z] = -eta(Y, Z) e_1 on k_2
  for (int i = 0; i < m; ++i) {
    L.add_bracket(1, 2 + i, 0, d.delta(i));        // eta(e_2, X) = -delta(X)
    L.add_bracket(2 + i, last, 0, -d.nu(i));       // eta(X, e_{2n-1}) = nu(X)
    for (int j = i + 1; j < m; ++j)
      L.add_bracket(2 + i, 2 + j, 0, -d.xi(i, j));
  }
  L.add_bracket(1, last, 0, -d.lambda);
  Eigen::MatrixXd J = block_J(n2);
  return HermitianStructure{L, J, Metric{Eigen::MatrixXd::Identity(n2, n2)}};
}

bool integrable_case2(const Case2Data& d, double tol) {
  const Eigen::MatrixXd J = d.Jk3();
  double r = std::abs(d.p1) + std::abs(d.p2) + d.beta.norm() + d.delta.norm() +
             std::abs(d.lambda - (d.a2 - d.a1)) + (d.A * J - J * d.A).norm() +
             d.w.norm() + (d.nu - (d.gamma - J_form(J, d.alpha))).norm();
  return r < tol;
}

bool kahler_case2(const Case2Data& d, double tol) {
  if (!integrable_case2(d, tol)) return false;
  const Eigen::MatrixXd J = d.Jk3();
  const bool unitary = (d.A + d.A.transpose()).norm() < tol &&
                       (d.A * J - J * d.A).norm() < tol;
  return std::abs(d.a1 - d.a / 2) < tol && std::abs(d.a2 + d.a / 2) < tol &&
         std::abs(d.v1) < tol && std::abs(d.v2) < tol && d.v.norm() < tol &&
         d.alpha.norm() < tol && d.gamma.norm() < tol && d.xi.norm() < tol &&
         unitary && std::abs(d.a) > tol;
}

bool balanced_case2(const Case2Data& d, double tol) {
  if (!integrable_case2(d, tol)) return false;
  return std::abs(d.v1 + pair_trace(d.xi)) < tol && std::abs(d.v2) < tol &&
         d.v.norm() < tol && std::abs(d.A.trace() + d.a1 + d.a2) < tol;
}

SktCase2Report skt_case2_dim6(const Case2Data& d, double tol) {
  if (d.n != 3)
    throw std::invalid_argument("skt_case2_dim6 needs a 6-dimensional algebra");
  if (!d.strongly_unimodular(1e-8) || !integrable_case2(d, tol)) return {};
  const Eigen::MatrixXd J = d.Jk3();
  const double c = d.xi(0, 1);
  SktCase2Report rep;
  if (std::abs(c) > tol) {
    // branch 2: a2 = -a, v1 = |alpha|^2 / c, v = -(A^t + a I) alpha# / c,
    // nu = -J alpha
    const Eigen::VectorXd vexp =
        -(d.A.transpose() + d.a * Eigen::MatrixXd::Identity(2, 2)) * d.alpha / c;
    const double r = std::abs(d.a2 + d.a) +
                     std::abs(d.v1 - d.alpha.squaredNorm() / c) +
                     (d.v - vexp).norm() + (d.nu + J_form(J, d.alpha)).norm();
    if (r < tol) {
      rep.skt = true;
      rep.branch = 2;
    }
  } else {
    // branch 1: a2 = -a != 0, c = 0, alpha = nu = 0
    const double r =
        std::abs(d.a2 + d.a) + d.alpha.norm() + d.nu.norm();
    if (r < tol && std::abs(d.a) > tol) {
      rep.skt = true;
      rep.branch = 1;
    }
  }
  return rep;
}

bool skt_case2_abelian_k3(const Case2Data& d, double tol) {
  if (d.alpha.norm() > tol || d.gamma.norm() > tol || d.xi.norm() > tol)
    throw std::invalid_argument(
        "skt_case2_abelian_k3 assumes alpha = gamma = 0, xi = 0");
  if (!integrable_case2(d, tol)) return false;
  const Eigen::MatrixXd J = d.Jk3();
  const bool unitary = (d.A + d.A.transpose()).norm() < tol &&
                       (d.A * J - J * d.A).norm() < tol;
  return std::abs(d.a1) < tol && std::abs(d.a2 + d.a) < tol &&
         std::abs(d.a) > tol && unitary;
}

Case2Data case2_reduced_dim6(double a, double a2, double v1, double v2,
                             double q, double c, const Eigen::Vector2d& v,
                             const Eigen::Vector2d& alpha,
                             const Eigen::Vector2d& nu) {
  Case2Data d = Case2Data::zero(3);
  d.a = a;
  d.a2 = a2;
  d.lambda = a2;  // a1 = 0
  d.v1 = v1;
  d.v2 = v2;
  d.v = v;
  d.alpha = alpha;
  d.nu = nu;
  d.gamma = nu + J_form(d.Jk3(), alpha);  // integrability: nu = gamma - J alpha
  d.A = -q * d.Jk3();
  d.xi << 0.0, c, -c, 0.0;
  return d;
}

HermitianStructure gtheta_family(const std::vector<double>& b, double theta) {
  if (theta < 0.0 || theta >= std::acos(-1.0) / 2.0)
    throw std::invalid_argument(
        "gtheta_family needs theta in [0, pi/2); the metric degenerates at "
        "pi/2");
  const int n = static_cast<int>(b.size()) + 1;
  Case1Data d;
  d.n = n;
  d.a = 0.0;
  d.beta = Eigen::VectorXd::Zero(2 * n - 2);
  d.A = Eigen::MatrixXd::Zero(2 * n - 2, 2 * n - 2);
  d.eta = Eigen::MatrixXd::Zero(2 * n - 2, 2 * n - 2);
  for (size_t l = 0; l < b.size(); ++l) {
    d.A(2 * l, 2 * l + 1) = b[l];
    d.A(2 * l + 1, 2 * l) = -b[l];
  }
  d.eta(0, 1) = 1.0;
  d.eta(1, 0) = -1.0;
  HermitianStructure H = build_case1(d);
  const int n2 = 2 * n;
  Eigen::MatrixXd G = Eigen::MatrixXd::Identity(n2, n2);
  const double s = std::sin(theta);
  G(0, n2 - 2) = G(n2 - 2, 0) = s;
  G(n2 - 3, n2 - 1) = G(n2 - 1, n2 - 3) = -s;
  H.g = Metric{G};
  return H;
}

}  // namespace hermlie
