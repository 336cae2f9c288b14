#pragma once

// Bracket-flow engine for the pluriclosed and balanced flows on almost
// nilpotent Hermitian Lie algebras: the pi action of gl(2n) on brackets,
// assembly of the generators P_mu (pluriclosed) and Q_mu (balanced), gauge
// maps, an adaptive explicit integrator with a Jacobi monitor, the reduced
// ODE systems attached to the adapted case-(1)/case-(2) models, direct
// integration in metric coordinates, and CSV trajectory export.

#include "hermlie/almost_nilpotent.hpp"

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace hermlie {

// ---- the pi action and flow generators ----

// (pi(A)mu)(X,Y) = A mu(X,Y) - mu(AX,Y) - mu(X,AY)
LieAlgebra pi_action(const Eigen::MatrixXd& A, const LieAlgebra& mu);

// P_mu = 1/2 omega^{-1} (rho^B_mu)^{1,1}; requires integrable J
Eigen::MatrixXd p_endomorphism(const HermitianStructure& H, double tol = 1e-8);

// Inverse Lefschetz contraction: the unique 2-form tau with
// omega^power ^ tau = sigma (least-squares solve of the wedge map).
KForm lefschetz_contract(const KForm& omega, int power, const KForm& sigma);

// Modified Bott-Chern Laplacian on invariant forms,
//   Delta_BC = d' dbar dbar* d'* + dbar* d'* d' dbar + dbar* d' d'* dbar
//            + d'* dbar dbar* d' + dbar* dbar + d'* d',
// with d' = partial; adjoints are finite-dimensional metric adjoints in the
// unitary coefficient frame. Requires integrable J.
KForm bott_chern_laplacian(const HermitianStructure& H, const KForm& sigma);

// Balanced-flow velocity
//   q(omega) = (n-2)! i_{omega^{n-2}} (i d' dbar *(rho^C ^ omega))
//            + 1/(n-1) i_{omega^{n-2}} Delta_BC omega^{n-1},
// with i_{omega^{n-2}} the inverse Lefschetz contraction. The scale factor
// multiplies the Laplacian summand (1.0 reproduces the reference systems).
KForm q_velocity_form(const HermitianStructure& H, double second_factor_scale = 1.0);

// Q_mu = -1/2 omega^{-1} q_mu
Eigen::MatrixXd q_endomorphism(const HermitianStructure& H,
                               double second_factor_scale = 1.0);

// ---- generic adaptive integrator ----

struct FlowConfig {
  double t_end = 1.0;
  double h_init = 1e-2;
  double err_tol = 1e-8;       // local error estimate per step (halving below)
  double h_min = 1e-12;        // step underflow threshold
  int max_steps = 400000;      // accepted-step budget
  double monitor_tol = 1e-7;   // abort when the monitored residual exceeds it
  double conv_tol = 1e-9;      // derivative norm for convergence declaration
  int conv_steps = 10;         // consecutive accepted steps below conv_tol
};

struct FlowSample {
  double t = 0.0;
  Eigen::VectorXd y;
  double monitor = 0.0;   // monitored residual (Jacobi for bracket flows)
  double rhs_norm = 0.0;  // derivative norm at the sample
};

struct FlowTrajectory {
  std::vector<FlowSample> samples;  // strictly increasing t, samples[0] at t0
  bool converged = false;
  const FlowSample& back() const { return samples.back(); }
};

using OdeRhs = std::function<Eigen::VectorXd(double, const Eigen::VectorXd&)>;
using OdeMonitor = std::function<double(const Eigen::VectorXd&)>;

// Explicit RK4 with step halving on the two-half-steps local error estimate;
// throws on step underflow, step budget exhaustion, or monitor violation.
FlowTrajectory integrate_ode(const OdeRhs& rhs, const Eigen::VectorXd& y0,
                             const FlowConfig& cfg, const OdeMonitor& monitor = {});

// ---- bracket flows ----

Eigen::VectorXd mu_to_vec(const LieAlgebra& L);
LieAlgebra vec_to_mu(const Eigen::VectorXd& y, int n);

// gauge map mu -> U_mu in u(2n, J, g); validated to be g-skew and J-commuting
using GaugeMap = std::function<Eigen::MatrixXd(const HermitianStructure&)>;

// d/dt mu = -pi(P_mu - U_mu) mu  /  d/dt mu = -pi(Q_mu - U_mu) mu
OdeRhs pluriclosed_bracket_rhs(const Eigen::MatrixXd& J, const Metric& g,
                               const GaugeMap& gauge = {});
OdeRhs balanced_bracket_rhs(const Eigen::MatrixXd& J, const Metric& g,
                            const GaugeMap& gauge = {},
                            double second_factor_scale = 1.0);

// integrate_ode on structure constants with the Jacobi residual as monitor
FlowTrajectory integrate_bracket_flow(const OdeRhs& rhs, const LieAlgebra& mu0,
                                      const FlowConfig& cfg);

// ---- reduced case-(2) pluriclosed systems ----

// branch with c != 0 on the six-dimensional model: state (a, q, v2, c, alpha)
struct PluriclosedSub2State {
  double a = 0.0, q = 0.0, v2 = 0.0, c = 0.0;
  Eigen::Vector2d alpha = Eigen::Vector2d::Zero();

  double r() const;             // r(Xi) >= 0
  Eigen::Vector2d z() const;    // z(Xi) in k_3
  Eigen::MatrixXd P() const;    // closed-form P_{mu(Xi)}, 6x6
  Eigen::MatrixXd U() const;    // closed-form gauge U_{mu(Xi)}, 6x6
  Case2Data data() const;       // embeds the pinned branch quantities
  Eigen::VectorXd to_vector() const;
  static PluriclosedSub2State from_vector(const Eigen::VectorXd& y);
  static PluriclosedSub2State from_bracket(const LieAlgebra& L);
};

// state derivative from the gauge-corrected generator; throws when c = 0
PluriclosedSub2State pluriclosed_case2_rhs(const PluriclosedSub2State& s);

// abelian-k_3 branch in dimension 2n: state (a, v1, v2, v, A)
struct PluriclosedSub1State {
  double a = 0.0, v1 = 0.0, v2 = 0.0;
  Eigen::VectorXd v;   // in k_3 (size 2n-4)
  Eigen::MatrixXd A;   // endomorphism of k_3

  int k3_dim() const { return static_cast<int>(v.size()); }
  double r() const;       // r <= 0
  int k() const;          // k = 1/2 rk(A + A^t)
  Eigen::MatrixXd S() const;
  Eigen::MatrixXd U() const;  // closed-form gauge, 2n x 2n
  Case2Data data() const;     // a1 = 0, a2 = -a, lambda = -a
  Eigen::VectorXd to_vector() const;
  static PluriclosedSub1State from_vector(const Eigen::VectorXd& y, int k3);
  static PluriclosedSub1State from_bracket(const LieAlgebra& L);
};

PluriclosedSub1State pluriclosed_case2_rhs(const PluriclosedSub1State& s);
// same system with r Id subtracted: a and A stay constant
PluriclosedSub1State normalized_pluriclosed_rhs(const PluriclosedSub1State& s);

// shipped gauges for the full bracket flows (read the state off the bracket)
Eigen::MatrixXd gauge_pluriclosed_sub2(const HermitianStructure& H);
Eigen::MatrixXd gauge_pluriclosed_sub1(const HermitianStructure& H);
Eigen::MatrixXd gauge_balanced_case2(const HermitianStructure& H);

// ---- reduced balanced systems ----

// case (1), six-dimensional strongly unimodular model: state (a, A, eta)
struct BalancedCase1State {
  double a = 0.0;
  Eigen::MatrixXd A;    // endomorphism of k_1 (4x4)
  Eigen::MatrixXd eta;  // skew matrix of the 2-form on k_1

  double m() const;     // m = 4|A|^2 - tr(JA)^2
  double p() const;
  Eigen::MatrixXd P() const;
  Case1Data data() const;
  Eigen::VectorXd to_vector() const;
  static BalancedCase1State from_vector(const Eigen::VectorXd& y);
  static BalancedCase1State from_bracket(const LieAlgebra& L);
};

BalancedCase1State balanced_case1_rhs(const BalancedCase1State& s);

// case (2), six-dimensional model: state (b, c, p, q)
struct BalancedCase2State {
  double b = 0.0, c = 0.0, p = 0.0, q = 0.0;

  double h() const;  // h >= 0
  double k() const;  // k >= 0
  Eigen::MatrixXd Q() const;  // closed-form Q_{mu(b,c,p,q)}, 6x6
  Eigen::MatrixXd U() const;  // closed-form gauge, 6x6
  Case2Data data() const;
  Eigen::VectorXd to_vector() const;
  static BalancedCase2State from_vector(const Eigen::VectorXd& y);
  static BalancedCase2State from_bracket(const LieAlgebra& L);
};

BalancedCase2State balanced_case2_rhs(const BalancedCase2State& s);

// ---- direct metric flows on a fixed algebra ----

enum class MetricFlowKind { pluriclosed, balanced };

struct MetricFlowSample {
  double t = 0.0;
  Eigen::MatrixXd omega;  // fundamental form, original coordinates
  double velocity_norm = 0.0;  // |rho^{1,1}| resp. |q(omega)|
  double flow_residual = 0.0;  // skt resp. balanced residual
};

// d/dt omega = -(rho^B)^{1,1} (pluriclosed) or d/dt omega = q(omega)
// (balanced) with the bracket frozen; throws when the metric degenerates
// (eigenvalue below 1e-12).
std::vector<MetricFlowSample> metric_flow_direct(const HermitianStructure& H0,
                                                 MetricFlowKind kind,
                                                 const FlowConfig& cfg,
                                                 double second_factor_scale = 1.0);

// ---- export ----

// Header "t,<columns...>,monitor,rhs_norm"; 17 significant digits.
void write_trajectory_csv(std::ostream& os, const FlowTrajectory& traj,
                          const std::vector<std::string>& columns);

}  // namespace hermlie
