// hermlie command-line front end: catalog verification, residual checks on
// user-supplied algebras, pluriclosed/balanced flows with CSV trajectories,
// generalized Kahler verification, lattice certificates and holomorphic
// Poisson bases.
//
// Exit codes: 0 success, 2 parse error, 3 validity error (bad input data),
// 4 property failure, 5 numerical failure.

#include "hermlie/almost_nilpotent.hpp"
#include "hermlie/catalog_lattice.hpp"
#include "hermlie/flows.hpp"
#include "hermlie/gk_poisson.hpp"
#include "hermlie/parse.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

using namespace hermlie;
using nlohmann::json;

namespace {

constexpr int kExitParse = 2;
constexpr int kExitValidity = 3;
constexpr int kExitProperty = 4;
constexpr int kExitNumerical = 5;

struct CliError : std::runtime_error {
  int code;
  CliError(int code_, const std::string& msg) : std::runtime_error(msg), code(code_) {}
};

std::string fmt(double x) {
  std::ostringstream os;
  os << std::setprecision(17) << x;
  return os.str();
}

unsigned effective_seed(unsigned config_seed) {
  if (const char* env = std::getenv("HERMLIE_SEED")) return std::stoul(env);
  return config_seed;
}

std::map<std::string, double> parse_params(const std::string& text) {
  std::map<std::string, double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    auto eq = item.find('=');
    if (eq == std::string::npos)
      throw CliError(kExitParse, "bad parameter binding (expected k=v): " + item);
    try {
      out[item.substr(0, eq)] = std::stod(item.substr(eq + 1));
    } catch (const std::exception&) {
      throw CliError(kExitParse, "bad parameter value: " + item);
    }
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CliError(kExitValidity, "cannot open file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// whitespace matrix: one row per line
Eigen::MatrixXd read_matrix(const std::string& path) {
  std::istringstream in(read_file(path));
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::vector<double> row;
    double x;
    while (ls >> x) row.push_back(x);
    if (!row.empty()) rows.push_back(row);
  }
  if (rows.empty()) throw CliError(kExitParse, "empty matrix file: " + path);
  Eigen::MatrixXd M(rows.size(), rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows[0].size())
      throw CliError(kExitParse, "ragged matrix file: " + path);
    for (std::size_t j = 0; j < rows[i].size(); ++j) M(i, j) = rows[i][j];
  }
  return M;
}

bool is_catalog_name(const std::string& s) {
  for (const auto& e : catalog())
    if (e.name == s) return true;
  return false;
}

LieAlgebra load_algebra(const std::string& spec, const std::map<std::string, double>& params) {
  if (is_catalog_name(spec)) return catalog_entry(spec).structure(params);
  LieAlgebra L;
  try {
    L = parse_algebra(read_file(spec));
  } catch (const ParseError& e) {
    throw CliError(kExitParse, std::string("parse error: ") + e.what());
  }
  if (jacobi_residual(L) > 1e-8)
    throw CliError(kExitValidity, "input brackets violate the Jacobi identity");
  return L;
}

json report_to_json(const VerifyReport& r) {
  json checks = json::array();
  for (const auto& c : r.checks)
    checks.push_back({{"what", c.what},
                      {"expected", c.expected},
                      {"residual", c.residual},
                      {"ok", c.ok}});
  return {{"entry", r.entry},
          {"jacobi", r.jacobi},
          {"strongly_unimodular", r.strongly_unimodular},
          {"nilradical", r.nilradical_ok},
          {"checks", checks},
          {"pass", r.pass()}};
}

void print_report(const VerifyReport& r, int sample) {
  std::cout << r.entry;
  if (sample >= 0) std::cout << " [sample " << sample << "]";
  std::cout << ": jacobi=" << (r.jacobi ? "ok" : "FAIL")
            << " strongly-unimodular=" << (r.strongly_unimodular ? "ok" : "FAIL")
            << " nilradical=" << (r.nilradical_ok ? "ok" : "FAIL") << "\n";
  for (const auto& c : r.checks)
    std::cout << "    " << c.what << ": residual " << c.residual
              << (c.expected ? " (claimed)" : " (refuted)") << " -> "
              << (c.ok ? "ok" : "FAIL") << "\n";
}

int run_verify_catalog(const std::string& entry_name, const std::string& params_str,
                       bool as_json) {
  std::vector<CatalogEntry> entries;
  if (entry_name.empty()) {
    entries = catalog();
    std::sort(entries.begin(), entries.end(),
              [](const CatalogEntry& a, const CatalogEntry& b) { return a.name < b.name; });
  } else {
    entries.push_back(catalog_entry(entry_name));
  }

  bool explicit_params = !params_str.empty();
  auto bound = parse_params(params_str);

  bool all = true;
  json out = json::array();
  for (const auto& e : entries) {
    std::vector<std::pair<int, VerifyReport>> reports;
    if (explicit_params) {
      reports.emplace_back(-1, verify_entry(e, bound));
    } else {
      auto rs = verify_entry_samples(e);
      for (int s = 0; s < static_cast<int>(rs.size()); ++s) reports.emplace_back(s, rs[s]);
    }
    for (auto& [s, r] : reports) {
      bool exact = explicit_params ||
                   (e.jacobi_exact(e.sample_rationals(std::max(s, 0))) &&
                    e.strongly_unimodular_exact(e.sample_rationals(std::max(s, 0))));
      all = all && r.pass() && exact;
      if (as_json) {
        json j = report_to_json(r);
        j["sample"] = s;
        j["exact_checks"] = exact;
        out.push_back(j);
      } else {
        print_report(r, s);
      }
    }
  }
  if (as_json) std::cout << out.dump(2) << "\n";
  if (!as_json) std::cout << (all ? "catalog: all checks passed\n" : "catalog: FAILURES\n");
  return all ? 0 : kExitProperty;
}

int run_check(const std::string& file, const std::string& j_file, const std::string& g_file,
              bool as_json) {
  LieAlgebra L;
  try {
    L = parse_algebra(read_file(file));
  } catch (const ParseError& e) {
    throw CliError(kExitParse, std::string("parse error: ") + e.what());
  }
  double jac = jacobi_residual(L);
  double unimod = 0.0;
  for (int i = 0; i < L.n; ++i) unimod = std::max(unimod, std::abs(L.ad(i).trace()));

  json out = {{"dim", L.n}, {"jacobi_residual", jac}, {"unimodularity_residual", unimod}};
  if (!as_json)
    std::cout << "dim " << L.n << "\njacobi residual        " << jac
              << "\nunimodularity residual " << unimod << "\n";
  if (jac > 1e-8) {
    if (as_json) std::cout << out.dump(2) << "\n";
    std::cerr << "Jacobi identity fails\n";
    return kExitValidity;
  }

  if (!j_file.empty()) {
    Eigen::MatrixXd J = read_matrix(j_file);
    Eigen::MatrixXd G = g_file.empty() ? Eigen::MatrixXd::Identity(L.n, L.n)
                                       : read_matrix(g_file);
    if (J.rows() != L.n || J.cols() != L.n || G.rows() != L.n || G.cols() != L.n)
      throw CliError(kExitValidity, "J/g dimension mismatch with the algebra");
    if ((J * J + Eigen::MatrixXd::Identity(L.n, L.n)).norm() > 1e-8)
      throw CliError(kExitValidity, "J is not an almost complex structure (J^2 != -Id)");
    HermitianStructure H{L, J, Metric{G}};
    double nij = nijenhuis_residual(H), skt = skt_residual(H), bal = balanced_residual(H),
           kah = kahler_residual(H);
    out["nijenhuis_residual"] = nij;
    out["skt_residual"] = skt;
    out["balanced_residual"] = bal;
    out["kahler_residual"] = kah;
    if (!as_json)
      std::cout << "nijenhuis residual     " << nij << "\nskt residual           " << skt
                << "\nbalanced residual      " << bal << "\nkahler residual        " << kah
                << "\n";
  }
  if (as_json) std::cout << out.dump(2) << "\n";
  return 0;
}

// the one-parameter case-1 SKT model with eta = c f^{23} and rotation 2c
Case1Data case1_su_data(double c) {
  Case1Data d;
  d.n = 3;
  d.a = 0.0;
  d.beta = Eigen::VectorXd::Zero(4);
  d.A = Eigen::MatrixXd::Zero(4, 4);
  d.A(0, 1) = 2.0 * c;
  d.A(1, 0) = -2.0 * c;
  d.eta = Eigen::MatrixXd::Zero(4, 4);
  d.eta(0, 1) = c;
  d.eta(1, 0) = -c;
  return d;
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
  std::ofstream os(path);
  if (!os) throw CliError(kExitValidity, "cannot open output file: " + path);
  for (std::size_t i = 0; i < header.size(); ++i)
    os << (i ? "," : "") << header[i];
  os << "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << fmt(row[i]);
    os << "\n";
  }
}

int run_flow(const std::string& kind, const std::string& algebra, const std::string& params_str,
             double t_max, double tol, const std::string& out_path, bool reduced,
             bool normalized, bool as_json) {
  if (t_max <= 0.0) throw CliError(kExitValidity, "t-max must be positive");
  if (tol <= 0.0 || tol > 1e-2) throw CliError(kExitValidity, "tolerance must lie in (0, 1e-2]");
  auto params = parse_params(params_str);

  auto state_param = [&](const char* k) { return params.count(k) ? params.at(k) : 0.0; };

  // resolve the Hermitian structure
  HermitianStructure H;
  bool case1_su = false;
  if (reduced && algebra == "sub2") {
    PluriclosedSub2State s;
    s.a = state_param("a");
    s.q = state_param("q");
    s.v2 = state_param("v2");
    s.c = state_param("c");
    s.alpha = Eigen::Vector2d(state_param("alpha1"), state_param("alpha2"));
    if (s.c == 0.0) throw CliError(kExitValidity, "the sub2 branch needs c != 0");
    H = build_case2(s.data(), 1e-6);
  } else if (reduced && algebra == "bal2") {
    BalancedCase2State s;
    s.b = state_param("b");
    s.c = state_param("c");
    s.p = state_param("p");
    s.q = state_param("q");
    H = build_case2(s.data(), 1e-6);
  } else if (algebra == "skt-perp-family" && params.count("c")) {
    H = build_case1(case1_su_data(params.at("c")));
    case1_su = true;
  } else if (is_catalog_name(algebra)) {
    const CatalogEntry& e = catalog_entry(algebra);
    if (e.examples.empty())
      throw CliError(kExitValidity, "entry has no attached Hermitian structure: " + algebra);
    LieAlgebra L = e.structure(params);
    H = HermitianStructure{L, e.examples.front().J(e.dim, params),
                           Metric{Eigen::MatrixXd::Identity(e.dim, e.dim)}};
  } else {
    throw CliError(kExitValidity,
                   "flow needs a catalog entry with an attached structure; got " + algebra);
  }

  FlowConfig cfg;
  cfg.t_end = t_max;
  cfg.err_tol = tol;
  cfg.monitor_tol = 1e-6;

  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
  json final_state;

  try {
    if (reduced) {
      if (kind == "pluriclosed") {
        PluriclosedSub2State s0 = PluriclosedSub2State::from_bracket(H.L);
        if (s0.c == 0.0)
          throw CliError(kExitValidity,
                         "algebra is not in the reduced-model basis; use --algebra sub2 "
                         "with state parameters a,q,v2,c,alpha1,alpha2");
        auto rhs = [&](double, const Eigen::VectorXd& y) {
          auto s = PluriclosedSub2State::from_vector(y);
          return pluriclosed_case2_rhs(s).to_vector();
        };
        auto traj = integrate_ode(rhs, s0.to_vector(), cfg);
        header = {"t", "a", "q", "v2", "c", "alpha1", "alpha2"};
        for (const auto& smp : traj.samples) {
          std::vector<double> row = {smp.t};
          for (int i = 0; i < smp.y.size(); ++i) row.push_back(smp.y(i));
          rows.push_back(row);
        }
        auto sf = PluriclosedSub2State::from_vector(traj.back().y);
        final_state = {{"t", traj.back().t}, {"a", sf.a}, {"q", sf.q},
                       {"v2", sf.v2}, {"c", sf.c}};
      } else {
        BalancedCase2State s0 = BalancedCase2State::from_bracket(H.L);
        auto rhs = [&](double, const Eigen::VectorXd& y) {
          auto s = BalancedCase2State::from_vector(y);
          return balanced_case2_rhs(s).to_vector();
        };
        auto traj = integrate_ode(rhs, s0.to_vector(), cfg);
        header = {"t", "b", "c", "p", "q"};
        for (const auto& smp : traj.samples) {
          std::vector<double> row = {smp.t};
          for (int i = 0; i < smp.y.size(); ++i) row.push_back(smp.y(i));
          rows.push_back(row);
        }
        auto sf = BalancedCase2State::from_vector(traj.back().y);
        final_state = {{"t", traj.back().t}, {"b", sf.b}, {"c", sf.c},
                       {"p", sf.p}, {"q", sf.q}};
      }
    } else {
      GaugeMap gauge;
      if (case1_su)
        gauge = {};  // the case-1 su model flows inside its own gauge slice
      OdeRhs rhs = kind == "pluriclosed" ? pluriclosed_bracket_rhs(H.J, H.g, gauge)
                                         : balanced_bracket_rhs(H.J, H.g, gauge);
      if (normalized) {
        OdeRhs base = rhs;
        int n = H.L.n;
        rhs = [base, n](double t, const Eigen::VectorXd& y) -> Eigen::VectorXd {
          Eigen::VectorXd d = base(t, y);
          double n2 = y.squaredNorm();
          if (n2 > 0) d -= (y.dot(d) / n2) * y;  // norm-preserving projection
          return d;
        };
      }
      auto traj = integrate_bracket_flow(rhs, H.L, cfg);
      header = {"t"};
      if (case1_su) header.push_back("c");
      header.push_back("mu_norm");
      header.push_back(kind == "pluriclosed" ? "skt_residual" : "balanced_residual");
      double final_c = 0.0, final_res = 0.0;
      for (const auto& smp : traj.samples) {
        LieAlgebra mu = vec_to_mu(smp.y, H.L.n);
        HermitianStructure Ht{mu, H.J, H.g};
        double res =
            kind == "pluriclosed" ? skt_residual(Ht) : balanced_residual(Ht);
        std::vector<double> row = {smp.t};
        if (case1_su) {
          double c = -mu.C[0](1, 2);  // eta coefficient on f^{23}
          row.push_back(c);
          final_c = c;
        }
        row.push_back(smp.y.norm());
        row.push_back(res);
        rows.push_back(row);
        final_res = res;
      }
      final_state = {{"t", traj.back().t},
                     {"mu_norm", traj.back().y.norm()},
                     {"property_residual", final_res}};
      if (case1_su) final_state["c"] = final_c;
    }
  } catch (const CliError&) {
    throw;
  } catch (const std::exception& e) {
    throw CliError(kExitNumerical, std::string("flow integration failed: ") + e.what());
  }

  if (!out_path.empty()) write_csv(out_path, header, rows);
  if (as_json) {
    std::cout << final_state.dump(2) << "\n";
  } else {
    std::cout << "flow " << kind << " on " << algebra << ": " << rows.size() << " samples";
    if (!out_path.empty()) std::cout << " -> " << out_path;
    std::cout << "\nfinal:";
    for (std::size_t i = 0; i < header.size() && i < rows.back().size(); ++i)
      std::cout << " " << header[i] << "=" << rows.back()[i];
    std::cout << "\n";
  }
  return 0;
}

Eigen::MatrixXd make_J(int n, const std::vector<std::tuple<int, int, double>>& pairs) {
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
  for (auto [i, j, s] : pairs) {
    J(j - 1, i - 1) = s;
    J(i - 1, j - 1) = -1.0 / s;
  }
  return J;
}

GKStructure gk_structure(int n, double p, double q) {
  int n2 = 2 * n;
  LieAlgebra L = gk_family(n, p, q);
  std::vector<std::tuple<int, int, double>> pp = {{1, n2, 1}, {2, 3, 1}, {4, 5, 1}, {6, 7, -1}};
  std::vector<std::tuple<int, int, double>> pm = {{1, n2, 1}, {2, 3, -1}, {4, 7, -1}, {5, 6, 1}};
  for (int l = 1; l <= n - 4; ++l) {
    pp.push_back({2 * l + 6, 2 * l + 7, 1});
    pm.push_back({2 * l + 6, 2 * l + 7, 1});
  }
  return GKStructure{L, make_J(n2, pp), make_J(n2, pm), Metric::identity(n2)};
}

int run_gk_verify(int n, double p, double q, bool as_json) {
  if (n < 4) throw CliError(kExitValidity, "gk-verify needs n >= 4");
  GKStructure S = gk_structure(n, p, q);
  double res;
  try {
    res = gk_residual(S);
  } catch (const std::exception& e) {
    throw CliError(kExitValidity, std::string("not a generalized Kahler candidate: ") + e.what());
  }
  SplitReport split = is_split(S);
  Bivector20 sigma = poisson_candidate(S);
  ComplexifiedAlgebra C(S.L, S.Jp);
  double dbar_res = 0.0;
  for (int l = 0; l < C.n; ++l) {
    Eigen::VectorXcd xbar = Eigen::VectorXcd::Zero(C.n);
    xbar(l) = 1.0;
    dbar_res = std::max(dbar_res, dbar_bivector(C, xbar, sigma).norm());
  }
  double schouten_norm = schouten(C, sigma, sigma).norm();

  json out = {{"n", n},
              {"p", p},
              {"q", q},
              {"gk_residual", res},
              {"split", split.split},
              {"commutator_norm", split.commutator_norm},
              {"sigma_norm", sigma.norm()},
              {"dbar_sigma_residual", dbar_res},
              {"schouten_residual", schouten_norm}};
  if (as_json) {
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "A^{p,q}_" << 2 * n << " with p=" << p << " q=" << q << "\n"
              << "gk residual        " << res << "\n"
              << "split              " << (split.split ? "yes" : "no")
              << " (commutator norm " << split.commutator_norm << ")\n"
              << "|sigma|            " << sigma.norm() << "\n"
              << "|dbar sigma|       " << dbar_res << "\n"
              << "|[sigma, sigma]|   " << schouten_norm << "\n";
  }
  return res < 1e-8 && dbar_res < 1e-8 && schouten_norm < 1e-8 ? 0 : kExitProperty;
}

int run_lattice(const std::string& entry_name, const std::string& t0_str,
                const std::string& solve_str, const std::string& params_str, bool as_json) {
  json out;
  if (!solve_str.empty()) {
    auto comma = solve_str.find(',');
    if (comma == std::string::npos)
      throw CliError(kExitParse, "--solve expects m,n");
    long long m = std::stoll(solve_str.substr(0, comma));
    long long nn = std::stoll(solve_str.substr(comma + 1));
    auto gp = solve_gk_lattice_params(m, nn);
    if (!gp) {
      std::cerr << "no admissible root pattern for x^3 - " << m << " x^2 + " << nn
                << " x - 1\n";
      return kExitProperty;
    }
    // certificate for the 3x3 head block in its Krylov basis
    Eigen::Matrix3d D = Eigen::Matrix3d::Zero();
    D(0, 0) = 1.0;
    D(1, 1) = D(2, 2) = -0.5;
    D(1, 2) = gp->p;
    D(2, 1) = -gp->p;
    auto cert = lattice_check(D, companion_basis(matrix_exp(gp->t0 * D)), gp->t0);
    out = {{"p", gp->p}, {"t0", gp->t0}, {"q", gp->q},
           {"integral", cert.integral}, {"deviation", cert.deviation}};
    if (as_json) {
      std::cout << out.dump(2) << "\n";
    } else {
      std::cout << "p  = " << fmt(gp->p) << "\nt0 = " << fmt(gp->t0)
                << "\nq  = " << fmt(gp->q) << "\ncompanion-basis certificate: "
                << (cert.integral ? "integral" : "FAIL") << " (deviation "
                << cert.deviation << ")\n";
    }
    return cert.integral ? 0 : kExitProperty;
  }

  if (entry_name.empty()) throw CliError(kExitValidity, "lattice needs --entry or --solve");
  const CatalogEntry& e = catalog_entry(entry_name);
  double t0;
  if (t0_str == "auto")
    t0 = std::log(2.0 + std::sqrt(3.0));
  else
    t0 = std::stod(t0_str);
  if (t0 <= 0.0) throw CliError(kExitValidity, "t0 must be positive");

  auto params = parse_params(params_str);
  if (params.empty()) {
    // rotation slopes closing up at t0
    for (const auto& s : e.slots) params[s.name] = 2.0 * M_PI / t0;
  }
  LieAlgebra L = e.structure(params);
  Eigen::MatrixXd D = nilradical_derivation(L);
  Eigen::MatrixXd B = entry_name == "skt-sub-family"
                          ? skt_sub_lattice_basis(e.dim / 2)
                          : Eigen::MatrixXd::Identity(e.dim - 1, e.dim - 1);
  auto cert = lattice_check(D, B, t0);
  if (as_json) {
    json M = json::array();
    for (int i = 0; i < cert.exp_t0D.rows(); ++i) {
      json row = json::array();
      for (int j = 0; j < cert.exp_t0D.cols(); ++j) row.push_back(cert.exp_t0D(i, j));
      M.push_back(row);
    }
    out = {{"entry", entry_name}, {"t0", cert.t0}, {"deviation", cert.deviation},
           {"integral", cert.integral}, {"exp_t0D", M}};
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "entry " << entry_name << ", t0 = " << fmt(t0) << "\nexp(t0 D) =\n"
              << cert.exp_t0D << "\ndeviation " << cert.deviation << " -> "
              << (cert.integral ? "integral" : "NOT integral") << "\n";
  }
  return cert.integral ? 0 : kExitProperty;
}

int run_poisson(const std::string& algebra, const std::string& j_file,
                const std::string& params_str, bool as_json) {
  auto params = parse_params(params_str);
  LieAlgebra L = load_algebra(algebra, params);
  Eigen::MatrixXd J;
  if (!j_file.empty()) {
    J = read_matrix(j_file);
  } else if (is_catalog_name(algebra)) {
    const CatalogEntry& e = catalog_entry(algebra);
    if (e.examples.empty())
      throw CliError(kExitValidity, "entry has no attached complex structure: " + algebra);
    J = e.examples.front().J(e.dim, params);
  } else {
    throw CliError(kExitValidity, "poisson needs --J for file-based algebras");
  }
  if (J.rows() != L.n || J.cols() != L.n)
    throw CliError(kExitValidity, "J dimension mismatch with the algebra");

  ComplexifiedAlgebra C(L, J);
  if (C.holomorphy_residual() > 1e-8)
    throw CliError(kExitValidity, "J is not integrable on this algebra");
  auto basis = holomorphic_poisson_space(C);

  json out = {{"complex_dim", C.n}, {"space_dim", basis.size()}};
  json elems = json::array();
  for (const auto& b : basis) {
    json terms = json::array();
    for (int k = 0; k < C.n; ++k)
      for (int l = k + 1; l < C.n; ++l) {
        auto c = b.c.coeff({k, l});
        if (std::abs(c) > 1e-12)
          terms.push_back({{"k", k + 1}, {"l", l + 1}, {"re", c.real()}, {"im", c.imag()}});
      }
    elems.push_back(terms);
  }
  out["basis"] = elems;
  if (as_json) {
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "holomorphic Poisson space: dimension " << basis.size() << "\n";
    for (std::size_t i = 0; i < basis.size(); ++i) {
      std::cout << "  sigma_" << i + 1 << " =";
      bool first = true;
      for (int k = 0; k < C.n; ++k)
        for (int l = k + 1; l < C.n; ++l) {
          auto c = basis[i].c.coeff({k, l});
          if (std::abs(c) > 1e-12) {
            std::cout << (first ? " " : " + ") << "(" << c.real() << (c.imag() < 0 ? "" : "+")
                      << c.imag() << "i) Z" << k + 1 << "^Z" << l + 1;
            first = false;
          }
        }
      if (first) std::cout << " 0";
      std::cout << "\n";
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hermitian-geometric invariants of solvable Lie algebras"};
  app.require_subcommand(1);
  bool as_json = false;
  unsigned seed = 12345;
  app.add_flag("--json", as_json, "machine-readable JSON output");
  app.add_option("--seed", seed, "random seed (HERMLIE_SEED overrides)");

  // verify-catalog
  std::string vc_entry, vc_params;
  auto* vc = app.add_subcommand("verify-catalog", "verify catalog entries against their tables");
  vc->add_option("--entry", vc_entry, "single entry name");
  vc->add_option("--params", vc_params, "comma-separated k=v parameter bindings");

  // check
  std::string ck_file, ck_J, ck_g;
  auto* ck = app.add_subcommand("check", "Jacobi/unimodularity and Hermitian residuals");
  ck->add_option("file", ck_file, "algebra file (JSON or structure tuple)")->required();
  ck->add_option("--J", ck_J, "almost complex structure matrix file");
  ck->add_option("--g", ck_g, "metric matrix file (default identity)");

  // flow
  std::string fl_kind, fl_algebra, fl_params, fl_out;
  double fl_tmax = 1.0, fl_tol = 1e-8;
  bool fl_reduced = false, fl_full = false, fl_normalized = false;
  auto* fl = app.add_subcommand("flow", "integrate a pluriclosed or balanced bracket flow");
  fl->add_option("kind", fl_kind, "pluriclosed|balanced")
      ->required()
      ->check(CLI::IsMember({"pluriclosed", "balanced"}));
  fl->add_option("--algebra", fl_algebra, "catalog entry name")->required();
  fl->add_option("--params", fl_params, "parameter bindings");
  fl->add_option("--t-max", fl_tmax, "integration horizon")->required();
  fl->add_option("--tol", fl_tol, "local error tolerance");
  fl->add_option("--out", fl_out, "trajectory CSV path");
  fl->add_flag("--reduced", fl_reduced, "integrate the reduced state system");
  fl->add_flag("--full", fl_full, "integrate the full bracket flow (default)");
  fl->add_flag("--normalized", fl_normalized, "norm-normalized flow");

  // gk-verify
  int gk_n = 4;
  double gk_p = 0.0, gk_q = 1.0;
  auto* gk = app.add_subcommand("gk-verify", "verify the A^{p,q}_{2n} generalized Kahler family");
  gk->add_option("--n", gk_n, "complex dimension n (real dimension 2n)")->required();
  gk->add_option("--p", gk_p, "head rotation slope")->required();
  gk->add_option("--q", gk_q, "tail rotation slope")->required();

  // lattice
  std::string lt_entry, lt_t0 = "auto", lt_solve, lt_params;
  auto* lt = app.add_subcommand("lattice", "integrality certificate for exp(t0 D)");
  lt->add_option("--entry", lt_entry, "catalog entry name");
  lt->add_option("--t0", lt_t0, "time (or 'auto' for ln(2+sqrt 3))");
  lt->add_option("--solve", lt_solve, "m,n: solve x^3 - m x^2 + n x - 1 for (p, t0, q)");
  lt->add_option("--params", lt_params, "parameter bindings (default: slopes 2 pi / t0)");

  // poisson
  std::string ps_algebra, ps_J, ps_params;
  auto* ps = app.add_subcommand("poisson", "basis of holomorphic Poisson bivectors");
  ps->add_option("--algebra", ps_algebra, "catalog entry name or algebra file")->required();
  ps->add_option("--J", ps_J, "complex structure matrix file");
  ps->add_option("--params", ps_params, "parameter bindings");

  CLI11_PARSE(app, argc, argv);
  seed = effective_seed(seed);
  (void)seed;

  try {
    if (vc->parsed()) return run_verify_catalog(vc_entry, vc_params, as_json);
    if (ck->parsed()) return run_check(ck_file, ck_J, ck_g, as_json);
    if (fl->parsed())
      return run_flow(fl_kind, fl_algebra, fl_params, fl_tmax, fl_tol, fl_out,
                      fl_reduced && !fl_full, fl_normalized, as_json);
    if (gk->parsed()) return run_gk_verify(gk_n, gk_p, gk_q, as_json);
    if (lt->parsed()) return run_lattice(lt_entry, lt_t0, lt_solve, lt_params, as_json);
    if (ps->parsed()) return run_poisson(ps_algebra, ps_J, ps_params, as_json);
  } catch (const CliError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidity;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
  return 0;
}
