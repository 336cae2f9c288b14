#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "hermlie/catalog_lattice.hpp"

#include <cmath>
#include <set>

using namespace hermlie;

namespace {
const double t0_hyp = std::log(2.0 + std::sqrt(3.0));
}

TEST_CASE("catalog has all table entries and the parametric families") {
  auto cat = catalog();
  std::set<std::string> names;
  for (const auto& e : cat) names.insert(e.name);
  CHECK(names.size() == cat.size());  // no duplicates

  const char* expected[] = {
      "h3+s3.1_-1", "h3+s3.3_0",  "s4.6+R2",   "s4.7+R2",  "s5.15+R",  "s5.16+R",
      "s6.24",      "s6.25",      "s6.30",     "s6.31",    "s6.32_-1", "s6.34_0",
      "s6.43",      "s6.44",      "s6.45_a_-1","s6.46_a_-a","s6.47_-1", "s6.51_a_0",
      "s6.52_0_b",  "s6.158",     "s6.159",    "s6.160",   "s6.161_eps","s6.162_a",
      "s6.163",     "s6.164_a",   "s6.165_a",  "s6.166_a", "s6.167",
      "skt-perp-family", "skt-sub-family", "gk-family"};
  for (const char* n : expected) CHECK(names.count(n) == 1);
  CHECK(cat.size() == 32);

  CHECK_THROWS(catalog_entry("no-such-algebra"));
  CHECK(catalog_entry("s6.44").cpx_perp == Flag::yes);
  CHECK(catalog_entry("s6.44").skt_perp == Flag::no);
  CHECK(catalog_entry("s6.162_a").cpx_perp == Flag::only_a1);
}

TEST_CASE("exact Jacobi and strong unimodularity at all parameter samples") {
  for (const auto& e : catalog()) {
    for (int s = 0; s < 3; ++s) {
      auto qs = e.sample_rationals(s);
      CHECK_MESSAGE(e.jacobi_exact(qs), e.name, " sample ", s);
      CHECK_MESSAGE(e.strongly_unimodular_exact(qs), e.name, " sample ", s);
    }
  }
}

TEST_CASE("a Jacobi-violating deformation is detected by the exact check") {
  CatalogEntry e = catalog_entry("s5.15+R");
  // breaking the rotation coefficient destroys d(df1) = 0
  e.terms[3].coeff = Rational(1);
  CHECK_FALSE(e.jacobi_exact({}));
  CatalogEntry u = catalog_entry("h3+s3.1_-1");
  u.terms[2].coeff = Rational(-1, 2);  // unbalances the ad_{f6} trace
  CHECK_FALSE(u.strongly_unimodular_exact({}));
}

TEST_CASE("verify_entry passes on every entry at every sample") {
  for (const auto& e : catalog()) {
    auto reports = verify_entry_samples(e);
    REQUIRE(reports.size() == 3);
    for (const auto& r : reports) {
      CHECK_MESSAGE(r.jacobi, e.name);
      CHECK_MESSAGE(r.strongly_unimodular, e.name);
      CHECK_MESSAGE(r.nilradical_ok, e.name);
      for (const auto& c : r.checks)
        CHECK_MESSAGE(c.ok, e.name, " ", c.what, " residual ", c.residual);
      CHECK(r.pass());
    }
  }
}

TEST_CASE("attached structures carry the table flags and refute the others") {
  // s6.52^{0,b}: perpendicular complex structure is SKT but not balanced
  auto r = verify_entry(catalog_entry("s6.52_0_b"), {{"b", 1.0}});
  REQUIRE(r.checks.size() == 3);
  CHECK(r.checks[0].expected);       // nijenhuis
  CHECK(r.checks[1].expected);       // skt claimed
  CHECK_FALSE(r.checks[2].expected); // balanced refuted
  CHECK(r.checks[2].residual > 1e-6);

  // s5.16+R: case-2 structure is balanced but not SKT
  auto rb = verify_entry(catalog_entry("s5.16+R"), {});
  CHECK(rb.checks[1].residual > 1e-6);
  CHECK(rb.checks[2].residual < 1e-12);

  // s6.44: complex only, both metric properties fail
  auto rc = verify_entry(catalog_entry("s6.44"), {});
  CHECK(rc.checks[1].residual > 1e-6);
  CHECK(rc.checks[2].residual > 1e-6);
}

TEST_CASE("conditional a=1 structure of s6.162 is gated on the parameter") {
  const auto& e = catalog_entry("s6.162_a");
  auto at1 = verify_entry(e, {{"a", 1.0}});
  CHECK(at1.checks.size() == 3);
  CHECK(at1.pass());
  auto athalf = verify_entry(e, {{"a", 0.5}});
  CHECK(athalf.checks.empty());  // structure only attached at a = 1
  CHECK(athalf.pass());
}

TEST_CASE("an abelian ad-hoc entry passes all-trivial verification") {
  CatalogEntry e;
  e.name = "R6";
  e.dim = 6;
  e.nilradical = "R5";
  CHECK(e.jacobi_exact({}));
  CHECK(e.strongly_unimodular_exact({}));
  CHECK(verify_entry(e, {}).pass());
}

TEST_CASE("nilradical commutator distinguishes h3+R2 from h5") {
  // both nilradicals have central series dims (5, 1, 0); the rank of the
  // f1-valued commutator form separates them
  auto r1 = verify_entry(catalog_entry("s6.24"), {});
  auto r2 = verify_entry(catalog_entry("s6.160"), {});
  CHECK(r1.nilradical_ok);
  CHECK(r2.nilradical_ok);
  // swapping the expectation must fail
  CatalogEntry e = catalog_entry("s6.24");
  e.nilradical = "h5";
  CHECK_FALSE(verify_entry(e, {}).nilradical_ok);
}

TEST_CASE("family builders agree with their catalog slices") {
  Eigen::VectorXd b(2);
  b << 1.5, -0.7;
  LieAlgebra L1 = skt_perp_family(3, b);
  LieAlgebra L2 = catalog_entry("skt-perp-family").structure({{"b1", 1.5}, {"b2", -0.7}});
  for (int k = 0; k < 6; ++k) CHECK((L1.C[k] - L2.C[k]).norm() < 1e-15);

  LieAlgebra S1 = skt_sub_family(4, b);
  LieAlgebra S2 = catalog_entry("skt-sub-family").structure({{"b1", 1.5}, {"b2", -0.7}});
  for (int k = 0; k < 8; ++k) CHECK((S1.C[k] - S2.C[k]).norm() < 1e-15);

  LieAlgebra G1 = gk_family(4, 0.4, 1.2);
  LieAlgebra G2 = catalog_entry("gk-family").structure({{"p", 0.4}, {"q", 1.2}});
  for (int k = 0; k < 8; ++k) CHECK((G1.C[k] - G2.C[k]).norm() < 1e-15);

  CHECK(jacobi_residual(skt_perp_family(4, Eigen::Vector3d(1, 2, 3))) < 1e-14);
  CHECK(jacobi_residual(skt_sub_family(5, Eigen::Vector3d(1, 2, 3))) < 1e-14);
  CHECK(jacobi_residual(gk_family(5, 0.3, 2.0)) < 1e-14);
  CHECK_THROWS(skt_perp_family(3, Eigen::Vector3d(1, 2, 3)));
}

TEST_CASE("hyperbolic lattice certificate in the adapted nilradical basis") {
  double c = 2.0 * M_PI / t0_hyp;
  LieAlgebra L = skt_sub_family(4, Eigen::Vector2d(c, c));
  Eigen::MatrixXd D = nilradical_derivation(L);
  Eigen::MatrixXd B = skt_sub_lattice_basis(4);

  // the basis change preserves the Heisenberg bracket [f2', f3'] = -f1'
  Eigen::MatrixXd T = Eigen::MatrixXd::Identity(8, 8);
  T.topLeftCorner(7, 7) = B;
  LieAlgebra Lp = L.change_basis(T);
  CHECK(Lp.C[0](1, 2) == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(std::abs(Lp.C[0](1, 2) - L.C[0](1, 2)) < 1e-12);

  auto cert = lattice_check(D, B, t0_hyp);
  CHECK(cert.integral);
  CHECK(cert.deviation < 1e-9);
  Eigen::Matrix3i head;
  head << 1, 0, 0, 0, 0, -1, 0, 1, 4;
  CHECK(cert.exp_t0D.topLeftCorner(3, 3) == head);
  CHECK(cert.exp_t0D.bottomRightCorner(4, 4) == Eigen::Matrix4i::Identity());
}

TEST_CASE("higher-n certificate keeps the identity tail") {
  double c = 2.0 * M_PI / t0_hyp;
  LieAlgebra L = skt_sub_family(6, Eigen::Vector4d(c, c, 2 * c, c));
  auto cert = lattice_check(nilradical_derivation(L), skt_sub_lattice_basis(6), t0_hyp);
  CHECK(cert.integral);
  CHECK(cert.exp_t0D.bottomRightCorner(8, 8) == Eigen::MatrixXi::Identity(8, 8));
}

TEST_CASE("lattice_check edge cases") {
  Eigen::MatrixXd D = Eigen::MatrixXd::Zero(4, 4);
  auto cert = lattice_check(D, Eigen::MatrixXd::Identity(4, 4), 3.7);
  CHECK(cert.integral);
  CHECK(cert.exp_t0D == Eigen::MatrixXi::Identity(4, 4));

  // irrational stretch in an unadapted basis is rejected
  Eigen::MatrixXd S = Eigen::MatrixXd::Zero(2, 2);
  S(0, 0) = 1.0;
  S(1, 1) = -1.0;
  auto bad = lattice_check(S, Eigen::MatrixXd::Identity(2, 2), 1.0);
  CHECK_FALSE(bad.integral);

  CHECK_THROWS(lattice_check(D, Eigen::MatrixXd::Zero(4, 4), 1.0));
}

TEST_CASE("gk lattice parameter solver") {
  auto gp = solve_gk_lattice_params(2, 0);
  REQUIRE(gp.has_value());
  double lam = std::exp(gp->t0);
  // real root of x^3 - 2x^2 - 1
  CHECK(lam == doctest::Approx(2.205569430400590).epsilon(1e-9));
  CHECK(gp->q == doctest::Approx(2.0 * M_PI / gp->t0));

  // exp(t0 diag(1, C_p - 1/2 Id)) must have characteristic polynomial
  // x^3 - 2 x^2 - 1
  Eigen::Matrix3d D = Eigen::Matrix3d::Zero();
  D(0, 0) = 1.0;
  D(1, 1) = D(2, 2) = -0.5;
  D(1, 2) = gp->p;
  D(2, 1) = -gp->p;
  Eigen::Matrix3d E = matrix_exp(gp->t0 * D);
  CHECK(E.trace() == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(E.determinant() == doctest::Approx(1.0).epsilon(1e-9));
  double sigma2 = 0.5 * (E.trace() * E.trace() - (E * E).trace());
  CHECK(sigma2 == doctest::Approx(0.0).epsilon(1e-9));

  // in the Krylov basis the exponential is the integer companion matrix
  auto cert = lattice_check(D, companion_basis(E), gp->t0);
  CHECK(cert.integral);
  CHECK(std::llround(std::abs(cert.exp_t0D.cast<double>().determinant())) == 1);

  // cube roots of unity: lambda = 1 is inadmissible
  CHECK_FALSE(solve_gk_lattice_params(0, 0).has_value());
  // three real roots (x - 1)^3 = x^3 - 3x^2 + 3x - 1: no non-real pair
  CHECK_FALSE(solve_gk_lattice_params(3, 3).has_value());
}

TEST_CASE("gk family built from solver parameters is a GK algebra slice") {
  auto gp = solve_gk_lattice_params(2, 0);
  REQUIRE(gp.has_value());
  LieAlgebra L = gk_family(4, gp->p, gp->q);
  CHECK(jacobi_residual(L) < 1e-12);
  Eigen::MatrixXd D = nilradical_derivation(L);
  // rotation blocks close up at t0 while the head needs the Krylov basis
  Eigen::MatrixXd E = matrix_exp(gp->t0 * D);
  CHECK((E.bottomRightCorner(4, 4) - Eigen::MatrixXd::Identity(4, 4)).norm() < 1e-9);
  Eigen::MatrixXd B = Eigen::MatrixXd::Identity(7, 7);
  B.topLeftCorner(3, 3) = companion_basis(E.topLeftCorner(3, 3));
  auto cert = lattice_check(D, B, gp->t0);
  CHECK(cert.integral);
}
