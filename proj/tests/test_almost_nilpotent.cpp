#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "hermlie/almost_nilpotent.hpp"
#include "hermlie/parse.hpp"

using namespace hermlie;

namespace {

Case1Data su_case1(int n, const std::vector<double>& rot,
                   const std::vector<double>& eta_pairs) {
  Case1Data d;
  d.n = n;
  d.a = 0.0;
  const int m = 2 * n - 2;
  d.beta = Eigen::VectorXd::Zero(m);
  d.A = Eigen::MatrixXd::Zero(m, m);
  d.eta = Eigen::MatrixXd::Zero(m, m);
  for (size_t l = 0; l < rot.size(); ++l) {
    d.A(2 * l, 2 * l + 1) = rot[l];
    d.A(2 * l + 1, 2 * l) = -rot[l];
  }
  for (size_t l = 0; l < eta_pairs.size(); ++l) {
    d.eta(2 * l, 2 * l + 1) = eta_pairs[l];
    d.eta(2 * l + 1, 2 * l) = -eta_pairs[l];
  }
  return d;
}

}  // namespace

TEST_CASE("build_case1 produces the expected structure equations") {
  // A rotation blocks with eta = e^{23} gives
  // df^1 = f^{23}, df^{2l} = b_l f^{2l+1,2n}, df^{2l+1} = -b_l f^{2l,2n}
  Case1Data d = su_case1(3, {1.0, 2.0}, {1.0});
  HermitianStructure H = build_case1(d);
  CHECK(jacobi_residual(H.L) < 1e-14);
  LieAlgebra ref =
      parse_algebra("(f^{23},f^{36},-f^{26},2f^{56},-2f^{46},0)");
  double diff = 0.0;
  for (int k = 0; k < 6; ++k) diff += (H.L.C[k] - ref.C[k]).norm();
  CHECK(diff < 1e-14);
  CHECK(H.compatibility_residual() < 1e-14);
}

TEST_CASE("build_case1 rejects invalid data") {
  Case1Data d = su_case1(3, {1.0, 2.0}, {});
  CHECK_THROWS_AS(build_case1(d), std::invalid_argument);  // eta = 0
  CHECK_NOTHROW(build_case1(d, 1e-9, /*allow_zero_eta=*/true));

  // A* eta != a eta
  Case1Data bad = su_case1(3, {}, {1.0});
  bad.A.setZero();
  bad.A(0, 0) = 1.0;  // A* eta = eta but a = 0
  CHECK(bad.validity_residual() > 0.5);
  CHECK_THROWS_AS(build_case1(bad), std::invalid_argument);

  // a = 1, eta = e^{23}, A = diag(1, 0, 0, 0): valid but not unimodular
  Case1Data nonuni = bad;
  nonuni.a = 1.0;
  CHECK(nonuni.validity_residual() < 1e-14);
  CHECK_FALSE(nonuni.strongly_unimodular());
  HermitianStructure H = build_case1(nonuni);
  CHECK(jacobi_residual(H.L) < 1e-14);
  CHECK_FALSE(is_strongly_unimodular(H.L, Eigen::MatrixXd::Identity(6, 6).leftCols(5)).strongly_unimodular);
}

TEST_CASE("integrable_case1 tracks the Nijenhuis residual") {
  Case1Data d = su_case1(3, {1.0, -0.5}, {2.0});
  CHECK(integrable_case1(d));
  CHECK(nijenhuis_residual(build_case1(d)) < 1e-12);

  Case1Data db = d;
  db.beta(0) = 1.0;  // beta = e^2
  CHECK(db.validity_residual() < 1e-14);
  CHECK_FALSE(integrable_case1(db));
  CHECK(nijenhuis_residual(build_case1(db)) > 1e-6);

  Case1Data de = su_case1(3, {}, {});
  de.eta(0, 2) = 1.0;  // eta = e^{24}, not of type (1,1)
  de.eta(2, 0) = -1.0;
  CHECK(de.validity_residual() < 1e-14);
  CHECK_FALSE(integrable_case1(de));
  CHECK(nijenhuis_residual(build_case1(de)) > 1e-6);
}

TEST_CASE("case-1 SKT, Kahler, balanced closed forms") {
  // strongly unimodular, eta^2 = 0: SKT, never Kahler
  Case1Data dskt = su_case1(3, {1.0, 3.0}, {2.0});
  CHECK(dskt.strongly_unimodular());
  CHECK(skt_case1(dskt));
  CHECK_FALSE(kahler_case1(dskt));
  CHECK(skt_residual(build_case1(dskt)) < 1e-10);
  CHECK_FALSE(balanced_case1(dskt));
  CHECK(balanced_residual(build_case1(dskt)) > 1e-6);

  // eta = b1 (e^{23} - e^{45}): eta^2 != 0, balanced instead
  Case1Data dbal = su_case1(3, {1.0, 3.0}, {1.5, -1.5});
  CHECK_FALSE(skt_case1(dbal));
  CHECK(skt_residual(build_case1(dbal)) > 1e-6);
  CHECK(balanced_case1(dbal));
  CHECK(balanced_residual(build_case1(dbal)) < 1e-10);

  // Kahler family: A = (a/2) Id, eta = A* omega = a (e^{23} + e^{45})
  Case1Data dk;
  dk.n = 3;
  dk.a = 1.0;
  dk.beta = Eigen::VectorXd::Zero(4);
  dk.A = 0.5 * Eigen::MatrixXd::Identity(4, 4);
  dk.eta = Eigen::MatrixXd::Zero(4, 4);
  dk.eta(0, 1) = 1.0;
  dk.eta(1, 0) = -1.0;
  dk.eta(2, 3) = 1.0;
  dk.eta(3, 2) = -1.0;
  CHECK(dk.validity_residual() < 1e-14);
  CHECK(kahler_case1(dk));
  CHECK(skt_case1(dk));
  CHECK(balanced_case1(dk));
  CHECK(kahler_residual(build_case1(dk)) < 1e-12);
}

TEST_CASE("case-1 predicates agree with residuals on random data") {
  for (unsigned seed = 1; seed <= 6; ++seed) {
    for (int n : {3, 4}) {
      Case1Data d = random_su_case1(n, seed, seed % 2 == 0);
      CAPTURE(seed);
      CAPTURE(n);
      CHECK(d.validity_residual() < 1e-12);
      CHECK(integrable_case1(d));
      HermitianStructure H = build_case1(d);
      CHECK(nijenhuis_residual(H) < 1e-12);
      CHECK(skt_case1(d) == (skt_residual(H) < 1e-10));
      CHECK(kahler_case1(d) == (kahler_residual(H) < 1e-10));
      CHECK(balanced_case1(d) == (balanced_residual(H) < 1e-10));
      CHECK(is_strongly_unimodular(H.L, Eigen::MatrixXd::Identity(2 * n, 2 * n).leftCols(2 * n - 1)).strongly_unimodular == d.strongly_unimodular());
      // d omega = (eta - A* omega) ^ e^{2n}
      KForm dw = ce_differential(H.L, H.omega());
      Eigen::MatrixXd full = Eigen::MatrixXd::Zero(2 * n, 2 * n);
      Eigen::MatrixXd Jk1 = d.Jk1();
      full.block(1, 1, 2 * n - 2, 2 * n - 2) =
          d.eta - (d.A.transpose() * Jk1.transpose() + Jk1.transpose() * d.A);
      KForm rhs = wedge(two_form_from_matrix(full), basis_form(2 * n, {2 * n - 1}));
      CHECK((dw.c - rhs.c).norm() < 1e-12);
    }
  }
}

TEST_CASE("build_case2 validity reporting") {
  Case2Data d = Case2Data::zero(3);
  CHECK_THROWS_AS(build_case2(d), std::invalid_argument);  // eta = 0
  CHECK_NOTHROW(build_case2(d, 1e-9, /*allow_zero_eta=*/true));

  // reduced data with a = q = 0, c = 1: h3 + R^2 nilradical
  Case2Data dc = case2_reduced_dim6(0, 0, 0, 0, 0, 1, Eigen::Vector2d::Zero(),
                                    Eigen::Vector2d::Zero(),
                                    Eigen::Vector2d::Zero());
  CHECK(dc.validity_residual() < 1e-14);
  HermitianStructure H = build_case2(dc);
  CHECK(jacobi_residual(H.L) < 1e-14);
  auto layers = descending_central_series(H.L, Eigen::MatrixXd::Identity(6, 6).leftCols(5)).dims();
  CHECK(layers[1] == 1);  // dim n^1 = 1

  // lambda (a + a2 - a1) != 0 trips exactly the second constraint
  Case2Data bad = Case2Data::zero(3);
  bad.lambda = 1.0;
  bad.a = 1.0;
  Eigen::Vector4d res = bad.validity_residuals();
  CHECK(res(1) == doctest::Approx(1.0));
  CHECK(res(0) + res(2) + res(3) < 1e-14);
  CHECK_THROWS_AS(build_case2(bad), std::invalid_argument);
}

TEST_CASE("integrable_case2 tracks the Nijenhuis residual") {
  Case2Data d = case2_reduced_dim6(0, 0, 0, 0, 1, 1, Eigen::Vector2d::Zero(),
                                   Eigen::Vector2d::Zero(),
                                   Eigen::Vector2d::Zero());
  CHECK(integrable_case2(d));
  CHECK(nijenhuis_residual(build_case2(d)) < 1e-12);

  // abelian k_3, all couplings zero, a2 = -a
  Case2Data da = Case2Data::zero(3);
  da.a = 1.0;
  da.a2 = -1.0;
  da.lambda = -1.0;
  CHECK(da.validity_residual() < 1e-14);
  CHECK(integrable_case2(da));
  CHECK(nijenhuis_residual(build_case2(da)) < 1e-12);

  Case2Data dw = da;
  dw.w = Eigen::Vector2d(1.0, 0.0);  // N(e_1, e_{2n-1}) picks up w
  CHECK(dw.validity_residual() < 1e-14);
  CHECK_FALSE(integrable_case2(dw));
  CHECK(nijenhuis_residual(build_case2(dw)) > 1e-6);
}

TEST_CASE("kahler_case2 and its model algebras") {
  Case2Data dk = Case2Data::zero(3);
  dk.a = 1.0;
  dk.a1 = 0.5;
  dk.a2 = -0.5;
  dk.lambda = -1.0;  // a2 - a1
  dk.A << 0.0, 0.7, -0.7, 0.0;
  CHECK(dk.validity_residual() < 1e-14);
  CHECK(integrable_case2(dk));
  CHECK(kahler_case2(dk));
  HermitianStructure H = build_case2(dk);
  CHECK(jacobi_residual(H.L) < 1e-14);
  CHECK(kahler_residual(H) < 1e-12);

  Case2Data d0 = dk;
  d0.a = 0.0;
  d0.a1 = d0.a2 = d0.lambda = 0.0;
  CHECK_FALSE(kahler_case2(d0));

  Case2Data dv = dk;
  dv.v = Eigen::Vector2d(1.0, 0.0);
  CHECK(dv.validity_residual() < 1e-14);
  CHECK_FALSE(kahler_case2(dv));
  CHECK(kahler_residual(build_case2(dv)) > 1e-6);
}

TEST_CASE("skt_case2_dim6 branch report") {
  // q = c = 1 only: branch 2, a = 0; the algebra is s4.7 + R^2
  Case2Data d1 = case2_reduced_dim6(0, 0, 0, 0, 1, 1, Eigen::Vector2d::Zero(),
                                    Eigen::Vector2d::Zero(),
                                    Eigen::Vector2d::Zero());
  auto rep1 = skt_case2_dim6(d1);
  CHECK(rep1.skt);
  CHECK(rep1.branch == 2);
  CHECK(skt_residual(build_case2(d1)) < 1e-12);

  // branch 2 with all couplings on
  const double a = 0.5, q = 0.7, c = 2.0;
  Eigen::Vector2d alpha(0.3, -0.2);
  Eigen::MatrixXd J2(2, 2);
  J2 << 0, -1, 1, 0;
  Eigen::Vector2d nu = -(J2 * alpha);
  Eigen::Vector2d v = -((-q * J2).transpose() +
                        a * Eigen::Matrix2d::Identity()) *
                      alpha / c;
  Case2Data d2 =
      case2_reduced_dim6(a, -a, alpha.squaredNorm() / c, 0, q, c, v, alpha, nu);
  CHECK(d2.validity_residual() < 1e-12);
  auto rep2 = skt_case2_dim6(d2);
  CHECK(rep2.skt);
  CHECK(rep2.branch == 2);
  CHECK(skt_residual(build_case2(d2)) < 1e-10);

  // branch 1: a2 = -a != 0, c = 0, alpha = nu = 0
  Case2Data d3 = case2_reduced_dim6(1, -1, 0, 0, 0.4, 0,
                                    Eigen::Vector2d::Zero(),
                                    Eigen::Vector2d::Zero(),
                                    Eigen::Vector2d::Zero());
  auto rep3 = skt_case2_dim6(d3);
  CHECK(rep3.skt);
  CHECK(rep3.branch == 1);
  CHECK(skt_residual(build_case2(d3)) < 1e-10);

  // a2 = a = 1 is not strongly unimodular, hence rejected
  Case2Data d4 = case2_reduced_dim6(1, 1, 0, 0, 0, 1, Eigen::Vector2d::Zero(),
                                    Eigen::Vector2d::Zero(),
                                    Eigen::Vector2d::Zero());
  CHECK_FALSE(skt_case2_dim6(d4).skt);
}

TEST_CASE("skt_case2_abelian_k3 in dimension eight") {
  Case2Data d = Case2Data::zero(4);
  d.a = 1.0;
  d.a2 = -1.0;
  d.lambda = -1.0;
  d.A(0, 1) = 2.0;
  d.A(1, 0) = -2.0;
  CHECK(d.validity_residual() < 1e-14);
  CHECK(skt_case2_abelian_k3(d));
  HermitianStructure H = build_case2(d);
  CHECK(d.strongly_unimodular());
  CHECK(is_strongly_unimodular(H.L, Eigen::MatrixXd::Identity(8, 8).leftCols(7)).strongly_unimodular);
  CHECK(skt_residual(H) < 1e-10);

  Case2Data d0 = d;
  d0.a = 0.0;
  d0.a2 = 0.0;
  d0.lambda = 0.0;
  CHECK_FALSE(skt_case2_abelian_k3(d0));

  // a symmetric part in A (commuting with J, so J stays integrable) breaks SKT
  Case2Data ds = d;
  ds.A(0, 0) += 0.5;
  ds.A(1, 1) += 0.5;
  CHECK(ds.validity_residual() < 1e-14);
  CHECK(integrable_case2(ds));
  CHECK_FALSE(skt_case2_abelian_k3(ds));
  CHECK(skt_residual(build_case2(ds)) > 1e-6);
}

TEST_CASE("balanced_case2 and the balanced normal form") {
  // de^1 = p e^{36} + q e^{46} - c e^{56} + c e^{34}, de^3 = -b e^{46}, ...
  const double b = 1.5, c = 2.0, p = 0.7, q = -0.4;
  Case2Data d = Case2Data::zero(3);
  d.alpha = Eigen::Vector2d(p, q);
  d.gamma = Eigen::Vector2d(-q, p);
  d.A << 0.0, b, -b, 0.0;
  d.v1 = -c;
  d.xi << 0.0, c, -c, 0.0;
  CHECK(d.validity_residual() < 1e-13);
  CHECK(integrable_case2(d));
  CHECK(balanced_case2(d));
  HermitianStructure H = build_case2(d);
  CHECK(jacobi_residual(H.L) < 1e-13);
  CHECK(balanced_residual(H) < 1e-10);
  CHECK(kahler_residual(H) > 1e-6);
  // de^1 coefficients
  KForm de1 = ce_differential(H.L, basis_form(6, {0}));
  auto pair_eval = [&](int i, int j) {
    Eigen::MatrixXd V(6, 2);
    V.col(0) = Eigen::VectorXd::Unit(6, i);
    V.col(1) = Eigen::VectorXd::Unit(6, j);
    return eval(de1, V);
  };
  CHECK(pair_eval(2, 5) == doctest::Approx(p));
  CHECK(pair_eval(3, 5) == doctest::Approx(q));
  CHECK(pair_eval(4, 5) == doctest::Approx(-c));
  CHECK(pair_eval(2, 3) == doctest::Approx(c));

  Case2Data dv = d;
  dv.v2 = 1.0;
  CHECK(dv.validity_residual() < 1e-13);
  CHECK_FALSE(balanced_case2(dv));
  CHECK(balanced_residual(build_case2(dv)) > 1e-6);

  // Kahler data are balanced
  Case2Data dk = Case2Data::zero(3);
  dk.a = 1.0;
  dk.a1 = 0.5;
  dk.a2 = -0.5;
  dk.lambda = -1.0;
  CHECK(balanced_case2(dk));
}

TEST_CASE("sub_domega reproduced termwise") {
  const double b = 1.5, c = 2.0, p = 0.7, q = -0.4;
  Case2Data d = Case2Data::zero(3);
  d.alpha = Eigen::Vector2d(p, q);
  d.gamma = Eigen::Vector2d(-q, p);
  d.A << 0.0, b, -b, 0.0;
  d.v1 = -c;
  d.xi << 0.0, c, -c, 0.0;
  HermitianStructure H = build_case2(d);
  KForm dw = ce_differential(H.L, H.omega());
  // assemble the adapted-basis formula
  const int n2 = 6;
  auto e = [&](std::vector<int> idx) { return basis_form(n2, std::move(idx)); };
  Eigen::VectorXd acc = -(d.a1 + d.a2) * e({0, 1, 5}).c;
  for (int i = 0; i < 2; ++i) {
    acc += d.gamma(i) * wedge(e({2 + i}), e({0, 5})).c;
    acc -= d.nu(i) * wedge(e({2 + i}), e({1, 4})).c;
    acc -= d.alpha(i) * wedge(e({2 + i}), e({1, 5})).c;
  }
  Eigen::MatrixXd xi_full = Eigen::MatrixXd::Zero(n2, n2);
  xi_full.block(2, 2, 2, 2) = d.xi;
  acc += wedge(e({1}), two_form_from_matrix(xi_full)).c;
  acc += d.v1 * e({1, 4, 5}).c;
  acc -= d.v2 * e({0, 4, 5}).c;
  Eigen::Vector2d Jv = d.Jk3() * d.v;
  for (int i = 0; i < 2; ++i) acc += Jv(i) * wedge(e({2 + i}), e({4, 5})).c;
  Eigen::MatrixXd om3 = d.Jk3().transpose();
  Eigen::MatrixXd Aw = d.A.transpose() * om3 + om3 * d.A;
  Eigen::MatrixXd Aw_full = Eigen::MatrixXd::Zero(n2, n2);
  Aw_full.block(2, 2, 2, 2) = Aw;
  acc -= wedge(two_form_from_matrix(Aw_full), e({5})).c;
  CHECK((dw.c - acc).norm() < 1e-12);
}

TEST_CASE("gtheta_family interpolates the angle at constant SKT residual") {
  const std::vector<double> b{1.0, 2.0};
  const double pi = std::acos(-1.0);

  HermitianStructure H0 = gtheta_family(b, 0.0);
  CHECK((H0.g.g - Eigen::MatrixXd::Identity(6, 6)).norm() == doctest::Approx(0.0));
  CHECK(skt_residual(H0) < 1e-12);

  Eigen::VectorXd n1 = Eigen::VectorXd::Unit(6, 0);
  Eigen::MatrixXd nilrad = Eigen::MatrixXd::Identity(6, 6).leftCols(5);
  for (double theta : {pi / 6, pi / 3, 1.2}) {
    HermitianStructure H = gtheta_family(b, theta);
    CAPTURE(theta);
    CHECK(H.compatibility_residual() < 1e-12);
    CHECK(nijenhuis_residual(H) < 1e-12);
    CHECK(skt_residual(H) < 1e-10);
    CHECK(angle_theta_hat(H, n1, nilrad) == doctest::Approx(theta).epsilon(1e-9));
  }

  // torsion form at theta: -f^{123} - b_{n-1} sin(theta) f^{1,2n-2,2n}
  //                        - sin(theta) f^{23,2n-1}
  const double th = pi / 6;
  HermitianStructure H = gtheta_family(b, th);
  KForm torsion = dc(H, H.omega());
  Eigen::VectorXd expect = -basis_form(6, {0, 1, 2}).c -
                           b.back() * std::sin(th) * basis_form(6, {0, 3, 5}).c -
                           std::sin(th) * basis_form(6, {1, 2, 4}).c;
  CHECK((torsion.c - expect).norm() < 1e-10);

  CHECK_THROWS_AS(gtheta_family(b, pi / 2), std::invalid_argument);
}
