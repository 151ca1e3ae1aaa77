#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "rsdual/io.hpp"

using namespace rsdual;

namespace {

constexpr int kExitVerification = 2;
constexpr int kExitMalformed = 3;

std::vector<double> parse_x_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(std::stod(tok));
  if (out.empty()) throw MalformedInput("empty x list");
  return out;
}

HamiltonianSelector parse_ham(const std::string& s) {
  auto colon = s.find(':');
  if (colon == std::string::npos) throw MalformedInput("bad --ham: " + s);
  std::string fam = s.substr(0, colon), rest = s.substr(colon + 1);
  if (fam == "f") return HamiltonianSelector::f(std::stoi(rest));
  if (fam == "phi") return HamiltonianSelector::phi(std::stoi(rest));
  if (fam == "chi") {
    std::vector<cxd> coeffs;
    std::stringstream ss(rest);
    std::string tok;
    while (std::getline(ss, tok, ',')) coeffs.push_back(cxd(std::stod(tok), 0));
    return HamiltonianSelector::chi(coeffs);
  }
  throw MalformedInput("bad --ham family: " + fam);
}

std::vector<double> parse_t_grid(const std::string& s) {
  double start, stop;
  int steps;
  if (std::sscanf(s.c_str(), "%lf:%lf:%d", &start, &stop, &steps) != 3 ||
      steps < 1)
    throw MalformedInput("bad --t-grid: " + s);
  std::vector<double> t(steps);
  for (int i = 0; i < steps; ++i)
    t[i] = steps == 1 ? start : start + (stop - start) * i / (steps - 1);
  return t;
}

int cmd_dualize(const std::string& in, const std::string& direction, double x,
                const std::string& out, const std::string& report_path,
                const ToleranceConfig& tol) {
  PointFile pf = read_point_file(in);
  Coupling c(x != 0 ? x : pf.x);
  PointFile po;
  po.n = pf.n;
  po.x = c.x;
  std::ostringstream report;
  report << "[\n";
  bool all_ok = true, first = true;
  auto emit = [&](int idx, double r1, double r2, bool ok) {
    if (!first) report << ",\n";
    first = false;
    report << "  {\"index\": " << idx << ", \"res_spec_l\": " << r1
           << ", \"res_spec_lhat\": " << r2 << ", \"certified\": "
           << (ok ? "true" : "false") << "}";
    all_ok = all_ok && ok;
  };
  if (direction == "fwd") {
    if (pf.space != "P") throw MalformedInput("fwd needs space P");
    po.space = "Phat";
    for (size_t i = 0; i < pf.points_p.size(); ++i) {
      try {
        ForwardResult fr = duality_forward(pf.points_p[i], c, tol);
        po.points_phat.push_back(fr.pt);
        emit((int)i, fr.res_spec_l, fr.res_spec_lhat, true);
      } catch (const Error& e) {
        emit((int)i, -1, -1, false);
        std::cerr << "point " << i << ": " << e.what() << "\n";
      }
    }
  } else if (direction == "inv") {
    if (pf.space != "Phat") throw MalformedInput("inv needs space Phat");
    po.space = "P";
    for (size_t i = 0; i < pf.points_phat.size(); ++i) {
      try {
        InverseResult ir = duality_inverse(pf.points_phat[i], c, tol);
        po.points_p.push_back(ir.pt);
        emit((int)i, ir.res_spec_l, ir.res_spec_lhat, true);
      } catch (const Error& e) {
        emit((int)i, -1, -1, false);
        std::cerr << "point " << i << ": " << e.what() << "\n";
      }
    }
  } else if (direction == "fwd-completed") {
    if (pf.space != "P") throw MalformedInput("fwd-completed needs space P");
    po.space = "PhatC";
    for (size_t i = 0; i < pf.points_p.size(); ++i) {
      try {
        ForwardCompletedResult fr =
            duality_forward_completed(pf.points_p[i], c, tol);
        po.points_phatc.push_back(fr.pc);
        emit((int)i, fr.certification_residual, fr.boundary ? 1.0 : 0.0, true);
      } catch (const Error& e) {
        emit((int)i, -1, -1, false);
        std::cerr << "point " << i << ": " << e.what() << "\n";
      }
    }
  } else {
    throw MalformedInput("bad --direction: " + direction);
  }
  report << "\n]\n";
  write_point_file(out, po);
  if (!report_path.empty()) {
    std::ofstream rf(report_path);
    rf << report.str();
  }
  std::cout << (all_ok ? "all points certified\n" : "certification failures\n");
  return all_ok ? 0 : kExitVerification;
}

int cmd_flow(const std::string& in, const std::string& ham,
             const std::string& t_grid, const std::string& route,
             const std::string& out, const ToleranceConfig& tol) {
  PointFile pf = read_point_file(in);
  Coupling c(pf.x);
  HamiltonianSelector sel = parse_ham(ham);
  std::vector<double> ts = parse_t_grid(t_grid);
  std::ofstream csv(out);
  if (!csv) throw MalformedInput("cannot write " + out);
  csv.precision(17);
  bool degenerate_hit = false;
  const int n = pf.n;

  if (route == "exact" || route == "ode") {
    if (pf.space != "P") throw MalformedInput(route + " route needs space P");
    csv << "t";
    for (int j = 0; j < n; ++j) csv << ",q" << j;
    for (int j = 0; j < n; ++j) csv << ",p" << j;
    for (int k = 1; k <= n; ++k) csv << ",trLk" << k;
    csv << ",status\n";
    for (const PointP& p0 : pf.points_p) {
      for (double t : ts) {
        PointP pt;
        try {
          if (route == "exact") {
            pt = original_flow_reduced(p0, sel, t, c, tol);
          } else {
            if (sel.family != HamiltonianSelector::Family::F)
              throw MalformedInput("ode route supports f:k only");
            int k = sel.k;
            HamFn H = [&](const RVec& q, const RVec& p) {
              PointP pp{q, p};
              Mat L = lax_rs(pp, c, tol);
              Mat Lk = Mat::Identity(n, n);
              for (int i = 0; i < k; ++i) Lk = Lk * L;
              return Lk.trace().real() / (2.0 * k);
            };
            OdeTrajectory tr = ode_oracle(H, p0.q, p0.p, t == 0 ? 1e-12 : t, 1);
            pt.q = tr.q.back();
            pt.p = tr.p.back();
          }
        } catch (const DegenerateSpectrum&) {
          csv << t;
          for (int j = 0; j < 2 * n + n; ++j) csv << ",nan";
          csv << ",degenerate\n";
          degenerate_hit = true;
          continue;
        }
        Mat L = lax_rs(pt, c, tol);
        csv << t;
        for (int j = 0; j < n; ++j) csv << "," << pt.q(j);
        for (int j = 0; j < n; ++j) csv << "," << pt.p(j);
        Mat Lk = Mat::Identity(n, n);
        for (int k = 1; k <= n; ++k) {
          Lk = Lk * L;
          csv << "," << Lk.trace().real();
        }
        csv << ",ok\n";
      }
    }
  } else if (route == "spectral") {
    csv << "t";
    for (int j = 0; j < n; ++j) csv << ",phat" << j;
    csv << ",status\n";
    for (double t : ts) {
      try {
        RVec ph;
        if (pf.space == "Phat")
          ph = dual_flow_spectral(pf.points_phat.at(0), sel, t, c, tol);
        else if (pf.space == "PhatC")
          ph = dual_flow_spectral(pf.points_phatc.at(0), sel, t, c, tol);
        else
          throw MalformedInput("spectral route needs space Phat or PhatC");
        csv << t;
        for (int j = 0; j < n; ++j) csv << "," << ph(j);
        csv << ",ok\n";
      } catch (const DegenerateSpectrum&) {
        csv << t;
        for (int j = 0; j < n; ++j) csv << ",nan";
        csv << ",degenerate\n";
        degenerate_hit = true;
      }
    }
  } else {
    throw MalformedInput("bad --route: " + route);
  }
  return degenerate_hit ? kExitVerification : 0;
}

int cmd_verify(const std::string& suite, const std::string& n_range,
               const std::string& x_list, int trials, std::uint64_t seed,
               const std::string& json_out, const ToleranceConfig& tol) {
  int n_min, n_max;
  if (std::sscanf(n_range.c_str(), "%d:%d", &n_min, &n_max) != 2 || n_min < 1 ||
      n_max < n_min)
    throw MalformedInput("bad --n-range: " + n_range);
  std::vector<double> xs = parse_x_list(x_list);
  std::vector<std::string> names;
  if (suite == "all")
    names = suite_names();
  else
    names.push_back(suite);
  std::vector<VerificationReport> reports;
  bool all_pass = true;
  for (const std::string& name : names) {
    VerificationReport rep = run_suite(name, n_min, n_max, xs, trials, seed, tol);
    int fails = 0;
    for (const CheckRecord& cr : rep.checks)
      if (!cr.pass) ++fails;
    std::printf("%-22s %5zu checks  %3d failed  max residual %.3e  %.2fs  %s\n",
                name.c_str(), rep.checks.size(), fails, rep.max_residual,
                rep.seconds, rep.pass ? "PASS" : "FAIL");
    if (!rep.pass)
      for (const CheckRecord& cr : rep.checks)
        if (!cr.pass)
          std::printf("    %-32s n=%d x=%+.3f seed=%llu residual %.3e > %.3e\n",
                      cr.id.c_str(), cr.n, cr.x,
                      (unsigned long long)cr.seed, cr.residual, cr.tolerance);
    all_pass = all_pass && rep.pass;
    reports.push_back(std::move(rep));
  }
  if (!json_out.empty()) {
    std::ofstream jf(json_out);
    jf << report_to_json(reports);
  }
  return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"trigonometric many-body duality toolkit"};
  app.require_subcommand(1);

  std::string in, out, report_path, direction = "fwd";
  double x = 0;
  auto* dualize = app.add_subcommand("dualize", "map points across the duality");
  dualize->add_option("--in", in, "input point file (JSON)")->required();
  dualize->add_option("--direction", direction, "fwd | inv | fwd-completed");
  dualize->add_option("--x", x, "coupling (overrides the file value)");
  dualize->add_option("--out", out, "output point file")->required();
  dualize->add_option("--report", report_path, "JSON diagnostics path");

  std::string ham = "f:1", t_grid = "0:1:11", route = "exact", flow_in,
              flow_out;
  auto* flow = app.add_subcommand("flow", "integrate a commuting flow");
  flow->add_option("--in", flow_in, "input point file (JSON)")->required();
  flow->add_option("--ham", ham, "f:k | phi:k | chi:c1,c2,...");
  flow->add_option("--t-grid", t_grid, "start:stop:steps");
  flow->add_option("--route", route, "exact | spectral | ode");
  flow->add_option("--out", flow_out, "output trajectory CSV")->required();

  std::string suite = "all", n_range = "1:3", x_list = "0.8", json_out;
  int trials = 5;
  std::uint64_t seed = 1;
  auto* verify = app.add_subcommand("verify", "run identity suites");
  verify->add_option("--suite", suite, "suite name or 'all'");
  verify->add_option("--n-range", n_range, "min:max matrix size");
  verify->add_option("--x-list", x_list, "comma-separated couplings");
  verify->add_option("--trials", trials, "trials per (n, x)");
  verify->add_option("--seed", seed, "base RNG seed");
  verify->add_option("--json", json_out, "JSON report path");

  CLI11_PARSE(app, argc, argv);

  try {
    ToleranceConfig tol = ToleranceConfig::from_env();
    if (dualize->parsed())
      return cmd_dualize(in, direction, x, out, report_path, tol);
    if (flow->parsed())
      return cmd_flow(flow_in, ham, t_grid, route, flow_out, tol);
    if (verify->parsed())
      return cmd_verify(suite, n_range, x_list, trials, seed, json_out, tol);
  } catch (const MalformedInput& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitMalformed;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitVerification;
  }
  return kExitMalformed;
}
