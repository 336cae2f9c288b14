#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "hermlie/hermitian.hpp"
#include "hermlie/parse.hpp"

using namespace hermlie;

namespace {

// J with J f_i = s f_j (and J f_j = -(1/s) f_i) for each listed (i, j, s),
// 1-based indices
Eigen::MatrixXd make_J(int n, const std::vector<std::tuple<int, int, double>>& pairs) {
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
  for (auto [i, j, s] : pairs) {
    J(j - 1, i - 1) = s;
    J(i - 1, j - 1) = -1.0 / s;
  }
  return J;
}

HermitianStructure make_structure(const LieAlgebra& L, const Eigen::MatrixXd& J,
                                  const Eigen::MatrixXd& G) {
  return HermitianStructure{L, J, Metric{G}};
}

HermitianStructure standard_structure(const LieAlgebra& L,
                                      const std::vector<std::tuple<int, int, double>>& pairs) {
  return make_structure(L, make_J(L.n, pairs),
                        Eigen::MatrixXd::Identity(L.n, L.n));
}

// adapted-basis model with J e_1 = e_{2n}, J e_{2l} = e_{2l+1}:
// [e_{2n}, e_1] = a e_1, [e_{2n}, X] = beta(X) e_1 + A X,
// [Y, Z] = -eta(Y, Z) e_1 on k_1 = <e_2, ..., e_{2n-1}>
LieAlgebra mu_case1(int n2, double a, const Eigen::VectorXd& beta,
                    const Eigen::MatrixXd& A, const Eigen::MatrixXd& eta) {
  LieAlgebra L(n2);
  const int m = n2 - 2;  // dim k_1
  Eigen::VectorXd be1 = Eigen::VectorXd::Zero(n2);
  be1(0) = a;
  L.set_bracket(n2 - 1, 0, be1);
  for (int i = 0; i < m; ++i) {
    Eigen::VectorXd bx = Eigen::VectorXd::Zero(n2);
    bx(0) = beta(i);
    for (int j = 0; j < m; ++j) bx(1 + j) = A(j, i);
    L.set_bracket(n2 - 1, 1 + i, bx);
    for (int j = i + 1; j < m; ++j)
      L.add_bracket(1 + i, 1 + j, 0, -eta(i, j));
  }
  return L;
}

Eigen::MatrixXd J_case1(int n2) {
  std::vector<std::tuple<int, int, double>> pairs{{1, n2, 1.0}};
  for (int l = 1; 2 * l < n2; ++l) pairs.push_back({2 * l, 2 * l + 1, 1.0});
  return make_J(n2, pairs);
}

// structure equations df^1 = f^23, df^{2l} = b_l f^{2l+1,2n},
// df^{2l+1} = -b_l f^{2l,2n} with the compatible pair J f_1 = f_{2n},
// J f_{2l} = f_{2l+1}, g = identity
HermitianStructure skt_case1_example(const std::vector<double>& b) {
  const int n = static_cast<int>(b.size()) + 1;
  const int n2 = 2 * n;
  LieAlgebra L(n2);
  L.add_bracket(1, 2, 0, -1.0);  // df^1 = f^{23}
  for (int l = 1; l <= n - 1; ++l) {
    L.add_bracket(2 * l, n2 - 1, 2 * l - 1, -b[l - 1]);   // df^{2l} = b f^{2l+1,2n}
    L.add_bracket(2 * l - 1, n2 - 1, 2 * l, b[l - 1]);    // df^{2l+1} = -b f^{2l,2n}
  }
  std::vector<std::tuple<int, int, double>> pairs{{1, n2, 1.0}};
  for (int l = 1; l <= n - 1; ++l) pairs.push_back({2 * l, 2 * l + 1, 1.0});
  return make_structure(L, make_J(n2, pairs), Eigen::MatrixXd::Identity(n2, n2));
}

// df^1 = f^{23}, df^2 = -f^{2,2n}, df^3 = f^{3,2n}, df^{2l+2} = b_l f^{2l+3,2n},
// df^{2l+3} = -b_l f^{2l+2,2n}; J f_1 = -f_2, J f_3 = f_{2n}, J f_{2l+2} = f_{2l+3}
HermitianStructure skt_case2_example(const std::vector<double>& b) {
  const int n = static_cast<int>(b.size()) + 2;
  const int n2 = 2 * n;
  LieAlgebra L(n2);
  L.add_bracket(1, 2, 0, -1.0);
  L.add_bracket(1, n2 - 1, 1, 1.0);
  L.add_bracket(2, n2 - 1, 2, -1.0);
  for (int l = 1; l <= n - 2; ++l) {
    L.add_bracket(2 * l + 2, n2 - 1, 2 * l + 1, -b[l - 1]);
    L.add_bracket(2 * l + 1, n2 - 1, 2 * l + 2, b[l - 1]);
  }
  std::vector<std::tuple<int, int, double>> pairs{{1, 2, -1.0}, {3, n2, 1.0}};
  for (int l = 1; l <= n - 2; ++l) pairs.push_back({2 * l + 2, 2 * l + 3, 1.0});
  return make_structure(L, make_J(n2, pairs), Eigen::MatrixXd::Identity(n2, n2));
}

const std::vector<std::tuple<int, int, double>> J_PERP{{1, 6, 1}, {2, 3, 1}, {4, 5, 1}};
const std::vector<std::tuple<int, int, double>> J_PERP_ALT{{1, 6, 1}, {2, 4, -1}, {3, 5, 1}};

}  // namespace

TEST_CASE("integrability of the catalog complex structures, J n^1 not in n") {
  auto check_integrable = [](const std::string& tuple,
                             const std::vector<std::tuple<int, int, double>>& pairs) {
    auto H = standard_structure(parse_algebra(tuple), pairs);
    CAPTURE(tuple);
    CHECK(jacobi_residual(H.L) < 1e-12);
    CHECK(H.compatibility_residual() < 1e-12);
    CHECK(nijenhuis_residual(H) < 1e-12);
  };
  check_integrable("(f^{23},0,0,f^{56},-f^{46},0)", J_PERP);      // h3 + s3.3^0
  check_integrable("(f^{23},f^{36},-f^{26},0,0,0)", J_PERP);      // s4.7 + R^2
  check_integrable("(f^{23},f^{36},-f^{26},f^{26}+f^{56},f^{36}-f^{46},0)", J_PERP);  // s6.44
  check_integrable("(f^{23},f^{36},-f^{26},1.7f^{56},-1.7f^{46},0)", J_PERP);  // s6.52^{0,b}
  check_integrable("(f^{24}+f^{35},0,-f^{56},0,f^{36},0)", J_PERP_ALT);        // s6.159
  check_integrable("(f^{24}+f^{35},f^{26},f^{36},-f^{46},-f^{56},0)", J_PERP); // s6.162^1
  // s6.165^a, a = 0.8
  check_integrable(
      "(f^{24}+f^{35},0.8f^{26}+f^{36},-f^{26}+0.8f^{36},-0.8f^{46}+f^{56},-f^{46}-0.8f^{56},0)",
      J_PERP);
  check_integrable("(f^{24}+f^{35},-f^{46},-0.6f^{56},f^{26},0.6f^{36},0)", J_PERP_ALT);  // s6.166^a
  check_integrable("(f^{24}+f^{35},f^{36},-f^{26},f^{26}+f^{56},f^{36}-f^{46},0)", J_PERP);  // s6.167
}

TEST_CASE("integrability of the catalog complex structures, J n^1 in n") {
  auto check_integrable = [](const std::string& tuple,
                             const std::vector<std::tuple<int, int, double>>& pairs) {
    auto H = standard_structure(parse_algebra(tuple), pairs);
    CAPTURE(tuple);
    CHECK(jacobi_residual(H.L) < 1e-12);
    CHECK(nijenhuis_residual(H) < 1e-12);
  };
  check_integrable("(f^{23},f^{26},-f^{36},0,0,0)", {{1, 2, 1}, {3, 6, 1}, {4, 5, 1}});  // s4.6+R^2
  check_integrable("(f^{23},f^{36},-f^{26},0,0,0)", {{1, 4, 1}, {2, 3, 1}, {5, 6, 1}});  // s4.7+R^2
  check_integrable("(f^{23}+f^{46},f^{36},-f^{26},0,0,0)",
                   {{1, 5, -1}, {2, 3, 1}, {4, 6, 1}});  // s5.16+R
  check_integrable("(f^{23},f^{36},-f^{26},0,f^{46},0)",
                   {{1, 5, -1}, {2, 3, 1}, {4, 6, 1}});  // s6.25
  // s6.51^{a,0}, a = 1.4: J f_1 = a f_2 is integrable for any metric
  check_integrable("(f^{23},1.4f^{26},-1.4f^{36},f^{56},-f^{46},0)",
                   {{1, 2, 1.4}, {3, 6, 1}, {4, 5, 1}});
  check_integrable("(f^{24}+f^{35},0,f^{36},0,-f^{56},0)",
                   {{1, 3, 1}, {2, 4, 1}, {5, 6, 1}});  // s6.158
  check_integrable("(f^{24}+f^{35},0.9f^{26},f^{56},-0.9f^{46},-f^{36},0)",
                   {{1, 2, 0.9}, {3, 5, 1}, {4, 6, 1}});  // s6.164^a
}

TEST_CASE("non-integrable pairings are detected") {
  // the perpendicular-type J fails on s6.25 and s6.158
  auto H1 = standard_structure(parse_algebra("(f^{23},f^{36},-f^{26},0,f^{46},0)"), J_PERP);
  CHECK(nijenhuis_residual(H1) > 1e-6);
  auto H2 = standard_structure(parse_algebra("(f^{24}+f^{35},0,f^{36},0,-f^{56},0)"), J_PERP);
  CHECK(nijenhuis_residual(H2) > 1e-6);
}

TEST_CASE("bidegree machinery and d^c cross-check") {
  auto H = skt_case1_example({1.0, 2.0});
  ComplexFrame cf(H);

  SUBCASE("bidegree projectors resolve the identity") {
    for (int k = 1; k <= 3; ++k) {
      Eigen::MatrixXcd sum =
          Eigen::MatrixXcd::Zero(cf.bidegree_proj(k, 0, 0).rows(),
                                 cf.bidegree_proj(k, 0, 0).cols());
      for (int p = 0; p <= k; ++p) sum += cf.bidegree_proj(k, p, k - p);
      CHECK((sum - Eigen::MatrixXcd::Identity(sum.rows(), sum.cols())).norm() <
            1e-12);
    }
  }

  SUBCASE("omega is of type (1,1)") {
    KForm om = H.omega();
    Eigen::VectorXcd z = cf.to_zeta(2) * om.c.cast<cplx>();
    CHECK((cf.bidegree_proj(2, 1, 1) * z - z).norm() < 1e-12);
  }

  SUBCASE("d = partial + dbar on integrable structures") {
    for (int k = 1; k <= 3; ++k)
      CHECK((cf.d_matrix(k) - cf.partial_matrix(k) - cf.dbar_matrix(k)).norm() <
            1e-10);
  }

  SUBCASE("d^c omega agrees with -d omega(J.,J.,J.)") {
    KForm dcw = dc(H, H.omega());
    KForm dw = ce_differential(H.L, H.omega());
    KForm real_route = pullback_form(dw, H.J);
    CHECK((dcw.c + real_route.c).norm() < 1e-10);
    CHECK(skt_residual(H) == doctest::Approx(skt_residual_real_route(H)).epsilon(1e-8));
  }
}

TEST_CASE("SKT examples are pluriclosed and not Kahler") {
  auto H1 = skt_case1_example({1.0, -0.7});
  CHECK(skt_residual(H1) < 1e-10);
  CHECK(kahler_residual(H1) > 1e-6);

  auto H2 = skt_case2_example({1.3});
  CHECK(jacobi_residual(H2.L) < 1e-12);
  CHECK(nijenhuis_residual(H2) < 1e-12);
  CHECK(skt_residual(H2) < 1e-10);
  CHECK(kahler_residual(H2) > 1e-6);

  // dimension 8 instance of the second family
  auto H3 = skt_case2_example({0.9, -2.0});
  CHECK(skt_residual(H3) < 1e-10);
}

TEST_CASE("catalog SKT structures with J n^1 in n") {
  auto check_skt = [](const std::string& tuple,
                      const std::vector<std::tuple<int, int, double>>& pairs) {
    auto H = standard_structure(parse_algebra(tuple), pairs);
    CAPTURE(tuple);
    CHECK(nijenhuis_residual(H) < 1e-12);
    CHECK(skt_residual(H) < 1e-10);
  };
  check_skt("(f^{23},f^{26},-f^{36},0,0,0)", {{1, 2, 1}, {3, 6, 1}, {4, 5, 1}});
  check_skt("(f^{23},f^{36},-f^{26},0,0,0)", {{1, 4, 1}, {2, 3, 1}, {5, 6, 1}});
  check_skt("(f^{23},f^{36},-f^{26},0,f^{46},0)", {{1, 5, -1}, {2, 3, 1}, {4, 6, 1}});
  check_skt("(f^{23},f^{26},-f^{36},f^{56},-f^{46},0)", {{1, 2, 1}, {3, 6, 1}, {4, 5, 1}});
  check_skt("(f^{24}+f^{35},0,f^{36},0,-f^{56},0)", {{1, 3, 1}, {2, 4, 1}, {5, 6, 1}});
  check_skt("(f^{24}+f^{35},f^{26},f^{56},-f^{46},-f^{36},0)",
            {{1, 2, 1}, {3, 5, 1}, {4, 6, 1}});
}

TEST_CASE("catalog balanced structures with J n^1 orthogonal to n") {
  auto check_bal = [](const std::string& tuple,
                      const std::vector<std::tuple<int, int, double>>& pairs) {
    auto H = standard_structure(parse_algebra(tuple), pairs);
    CAPTURE(tuple);
    CHECK(nijenhuis_residual(H) < 1e-12);
    CHECK(balanced_residual(H) < 1e-10);
    CHECK(kahler_residual(H) > 1e-6);
  };
  check_bal("(f^{24}+f^{35},0,-f^{56},0,f^{36},0)", J_PERP_ALT);  // s6.159
  check_bal("(f^{24}+f^{35},f^{26},f^{36},-f^{46},-f^{56},0)", J_PERP);  // s6.162^1
  check_bal(
      "(f^{24}+f^{35},0.8f^{26}+f^{36},-f^{26}+0.8f^{36},-0.8f^{46}+f^{56},-f^{46}-0.8f^{56},0)",
      J_PERP);  // s6.165^a
  check_bal("(f^{24}+f^{35},-f^{46},-0.6f^{56},f^{26},0.6f^{36},0)", J_PERP_ALT);  // s6.166^a
  check_bal("(f^{24}+f^{35},f^{36},-f^{26},f^{26}+f^{56},f^{36}-f^{46},0)", J_PERP);  // s6.167
}

TEST_CASE("balanced examples") {
  // s6.162^1 with the standard pair is balanced but not SKT
  auto Hb = standard_structure(parse_algebra("(f^{24}+f^{35},f^{26},f^{36},-f^{46},-f^{56},0)"),
                               J_PERP);
  CHECK(balanced_residual(Hb) < 1e-10);
  CHECK(skt_residual(Hb) > 1e-6);
  CHECK(kahler_residual(Hb) > 1e-6);
  CHECK(lee_form(Hb).c.norm() < 1e-9);

  // s5.16 + R carries a balanced non-Kahler structure with J f_4 = -f_6
  auto Hs = standard_structure(parse_algebra("(f^{23}+f^{46},f^{36},-f^{26},0,0,0)"),
                               {{1, 5, -1}, {2, 3, 1}, {4, 6, -1}});
  CHECK(nijenhuis_residual(Hs) < 1e-12);
  CHECK(balanced_residual(Hs) < 1e-10);
  CHECK(kahler_residual(Hs) > 1e-6);

  // SKT examples above are not balanced
  CHECK(balanced_residual(skt_case1_example({1.0})) > 1e-6);
}

TEST_CASE("Lee form solves d omega^{n-1} = theta ^ omega^{n-1}") {
  for (auto& H : {skt_case1_example({1.0, 0.5}), skt_case2_example({2.0})}) {
    const int n = H.dim() / 2;
    KForm om = H.omega();
    KForm omn1 = wedge_power(om, n - 1);
    KForm lhs = ce_differential(H.L, omn1);
    KForm rhs = wedge(lee_form(H), omn1);
    CHECK((lhs.c - rhs.c).norm() < 1e-9);
  }
}

TEST_CASE("Gauduchon Ricci forms against the adapted-basis closed form") {
  const int n2 = 6;
  // A = diag(a/2, a/2, d, d) and eta = c e^{23} satisfy A* eta = a eta and the
  // integrability constraints; expected
  //   rho^tau = (-a - tau tr A / 2 + (tau-1) tr eta / 2)(a e^{1,6} + eta)
  const double a = 0.7, d = -0.3, c = 1.1;
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(4, 4);
  A.diagonal() << a / 2, a / 2, d, d;
  Eigen::MatrixXd eta = Eigen::MatrixXd::Zero(4, 4);
  eta(0, 1) = c;
  eta(1, 0) = -c;
  LieAlgebra L = mu_case1(n2, a, Eigen::VectorXd::Zero(4), A, eta);
  CHECK(jacobi_residual(L) < 1e-12);
  HermitianStructure H{L, J_case1(n2), Metric{Eigen::MatrixXd::Identity(n2, n2)}};
  CHECK(nijenhuis_residual(H) < 1e-12);

  for (double tau : {-1.0, 0.5, 1.0}) {
    const double coef = -a - 0.5 * tau * (a + 2 * d) + 0.5 * (tau - 1.0) * c;
    KForm expect = basis_form(n2, {0, 5});
    expect.c *= a * coef;
    KForm e23 = basis_form(n2, {1, 2});
    expect.c += coef * c * e23.c;
    KForm got = ricci_tau(H, tau);
    CAPTURE(tau);
    CHECK((got.c - expect.c).norm() < 1e-10);
    // Ricci forms on the Gauduchon line here are of type (1,1)
    CHECK((projection_11(got, H.J).c - got.c).norm() < 1e-10);
  }
}

TEST_CASE("strongly unimodular closed form and the Bismut special case") {
  // A = diag(C_{b1}, C_{b2}) rotations, eta = b1' e^{23} + b2' e^{45}:
  // rho^tau = (tau-1)/2 (tr eta) eta
  const double b1 = 1.2, b2 = -0.4, h1 = 0.9, h2 = 0.5;
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(4, 4);
  A(0, 1) = b1; A(1, 0) = -b1; A(2, 3) = b2; A(3, 2) = -b2;
  Eigen::MatrixXd eta = Eigen::MatrixXd::Zero(4, 4);
  eta(0, 1) = h1; eta(1, 0) = -h1; eta(2, 3) = h2; eta(3, 2) = -h2;
  LieAlgebra L = mu_case1(6, 0.0, Eigen::VectorXd::Zero(4), A, eta);
  CHECK(jacobi_residual(L) < 1e-12);
  HermitianStructure H{L, J_case1(6), Metric{Eigen::MatrixXd::Identity(6, 6)}};

  for (double tau : {-1.0, 0.0, 1.0}) {
    KForm got = ricci_tau(H, tau);
    Eigen::VectorXd expect = 0.5 * (tau - 1.0) * (h1 + h2) *
                             (h1 * basis_form(6, {1, 2}).c + h2 * basis_form(6, {3, 4}).c);
    CHECK((got.c - expect).norm() < 1e-10);
  }

  // mu(A, c): eta = c e^{23} gives rho^B = -c^2 e^{23}
  Eigen::MatrixXd eta2 = Eigen::MatrixXd::Zero(4, 4);
  eta2(0, 1) = 2.0; eta2(1, 0) = -2.0;
  LieAlgebra L2 = mu_case1(6, 0.0, Eigen::VectorXd::Zero(4), A, eta2);
  HermitianStructure H2{L2, J_case1(6), Metric{Eigen::MatrixXd::Identity(6, 6)}};
  KForm rhoB = ricci_tau(H2, -1.0);
  Eigen::VectorXd expect2 = -4.0 * basis_form(6, {1, 2}).c;
  CHECK((rhoB.c - expect2).norm() < 1e-12);
}

TEST_CASE("Bismut Ricci curvature-trace oracle agrees with d theta^B") {
  std::vector<HermitianStructure> cases;
  cases.push_back(skt_case1_example({1.0, 2.0}));
  cases.push_back(skt_case2_example({1.3}));
  cases.push_back(standard_structure(
      parse_algebra("(f^{24}+f^{35},f^{26},f^{36},-f^{46},-f^{56},0)"), J_PERP));
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(4, 4);
  A(0, 1) = 1.2; A(1, 0) = -1.2;
  Eigen::MatrixXd eta = Eigen::MatrixXd::Zero(4, 4);
  eta(0, 1) = 0.9; eta(1, 0) = -0.9; eta(2, 3) = 0.5; eta(3, 2) = -0.5;
  cases.push_back(HermitianStructure{mu_case1(6, 0.0, Eigen::VectorXd::Zero(4), A, eta),
                                     J_case1(6), Metric{Eigen::MatrixXd::Identity(6, 6)}});
  for (size_t i = 0; i < cases.size(); ++i) {
    CAPTURE(i);
    KForm lhs = ricci_tau(cases[i], -1.0);
    KForm rhs = bismut_ricci_oracle(cases[i]);
    CHECK((lhs.c - rhs.c).norm() < 1e-8);
  }
}

TEST_CASE("projection to (1,1) is an idempotent J-invariant average") {
  Eigen::MatrixXd J = J_case1(6);
  std::mt19937_64 rng(7);
  std::normal_distribution<double> N(0.0, 1.0);
  KForm sigma(6, 2);
  for (int i = 0; i < sigma.c.size(); ++i) sigma.c(i) = N(rng);
  KForm p = projection_11(sigma, J);
  CHECK((projection_11(p, J).c - p.c).norm() < 1e-12);
  // J-invariance: p(J., J.) = p
  CHECK((pullback_form(p, J).c - p.c).norm() < 1e-12);
}

TEST_CASE("angle between J n^1 and the metric normal of the nilradical") {
  Eigen::VectorXd n1 = Eigen::VectorXd::Unit(6, 0);
  Eigen::MatrixXd nilrad = Eigen::MatrixXd::Identity(6, 6).leftCols(5);

  auto Hperp = skt_case1_example({1.0, 2.0});
  CHECK(angle_theta_hat(Hperp, n1, nilrad) == doctest::Approx(0.0).epsilon(1e-9));

  auto Hsub = standard_structure(parse_algebra("(f^{23},f^{36},-f^{26},0,0,0)"),
                                 {{1, 4, 1}, {2, 3, 1}, {5, 6, 1}});
  CHECK(angle_theta_hat(Hsub, n1, nilrad) ==
        doctest::Approx(std::acos(0.0)).epsilon(1e-9));
}

TEST_CASE("structure search finds known structures") {
  LieAlgebra L = parse_algebra("(f^{23},f^{36},-f^{26},0,0,0)");  // s4.7 + R^2
  SearchOptions opts;
  opts.restarts = 10;
  opts.iters = 150;
  opts.seed = 3;
  SearchResult res = structure_search(L, SearchTarget::SKT, opts);
  CHECK(res.found);
  CHECK(res.best_residual < 1e-6);
  CHECK(nijenhuis_residual(res.best) < 1e-5);
}
