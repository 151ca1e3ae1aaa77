#include "rsdual/io.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "rsdual/tolerances.hpp"

namespace rsdual {

using nlohmann::json;

void ToleranceConfig::merge_json(const std::string& json_text) {
  json j = json::parse(json_text);
  if (!j.is_object()) throw MalformedInput("tolerance overrides: not a JSON object");
  for (auto& [key, val] : j.items()) {
    if (!val.is_number())
      throw MalformedInput("tolerance override " + key + ": not a number");
    double d = val.get<double>();
    if (key == "singularity_tol") singularity_tol = d;
    else if (key == "unitarity_tol") unitarity_tol = d;
    else if (key == "recon_tol") recon_tol = d;
    else if (key == "degeneracy_tol") degeneracy_tol = d;
    else if (key == "fd_tol") fd_tol = d;
    else if (key == "constraint_tol") constraint_tol = d;
    else if (key == "duality_tol") duality_tol = d;
    else if (key == "chamber_tol") chamber_tol = d;
    else if (key == "rank_tol") rank_tol = d;
    else if (key == "gauge_tol") gauge_tol = d;
    else if (key == "cross_check_tol") cross_check_tol = d;
    else if (key == "boundary_recover_tol") boundary_recover_tol = d;
    else if (key == "zeta_cond_max") zeta_cond_max = d;
    else throw MalformedInput("tolerance override: unknown key " + key);
  }
}

ToleranceConfig ToleranceConfig::from_env() {
  ToleranceConfig tc;
  if (const char* env = std::getenv("RS_TOL_OVERRIDES")) tc.merge_json(env);
  return tc;
}

namespace {

json vec_to_json(const RVec& v) {
  json a = json::array();
  for (int i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

RVec json_to_vec(const json& a, int n, const char* what) {
  if (!a.is_array() || (int)a.size() != n)
    throw MalformedInput(std::string("point file: bad array for ") + what);
  RVec v(n);
  for (int i = 0; i < n; ++i) v(i) = a[i].get<double>();
  return v;
}

}  // namespace

PointFile read_point_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MalformedInput("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw MalformedInput("point file parse error: " + std::string(e.what()));
  }
  PointFile pf;
  try {
    pf.n = j.at("n").get<int>();
    pf.x = j.at("x").get<double>();
    pf.space = j.at("space").get<std::string>();
    const json& pts = j.at("points");
    if (!pts.is_array()) throw MalformedInput("point file: points not an array");
    if (pf.n < 1) throw MalformedInput("point file: n < 1");
    for (const json& p : pts) {
      if (pf.space == "P") {
        PointP q;
        q.q = json_to_vec(p.at("q"), pf.n, "q");
        q.p = json_to_vec(p.at("p"), pf.n, "p");
        pf.points_p.push_back(std::move(q));
      } else if (pf.space == "Phat") {
        PointPhat q;
        q.qHat = json_to_vec(p.at("qhat"), pf.n, "qhat");
        q.pHat = json_to_vec(p.at("phat"), pf.n, "phat");
        pf.points_phat.push_back(std::move(q));
      } else if (pf.space == "PhatC") {
        PointPhatC q;
        const json& zr = p.at("z_re");
        const json& zi = p.at("z_im");
        if ((int)zr.size() != pf.n - 1 || (int)zi.size() != pf.n - 1)
          throw MalformedInput("point file: bad z length");
        q.z = Vec(pf.n - 1);
        for (int i = 0; i + 1 < pf.n; ++i)
          q.z(i) = cxd(zr[i].get<double>(), zi[i].get<double>());
        q.Z = cxd(p.at("Z_re").get<double>(), p.at("Z_im").get<double>());
        pf.points_phatc.push_back(std::move(q));
      } else {
        throw MalformedInput("point file: unknown space " + pf.space);
      }
    }
  } catch (const json::exception& e) {
    throw MalformedInput("point file: " + std::string(e.what()));
  }
  return pf;
}

void write_point_file(const std::string& path, const PointFile& pf) {
  json j;
  j["n"] = pf.n;
  j["x"] = pf.x;
  j["space"] = pf.space;
  json pts = json::array();
  if (pf.space == "P") {
    for (const PointP& p : pf.points_p)
      pts.push_back({{"q", vec_to_json(p.q)}, {"p", vec_to_json(p.p)}});
  } else if (pf.space == "Phat") {
    for (const PointPhat& p : pf.points_phat)
      pts.push_back(
          {{"qhat", vec_to_json(p.qHat)}, {"phat", vec_to_json(p.pHat)}});
  } else if (pf.space == "PhatC") {
    for (const PointPhatC& p : pf.points_phatc) {
      json zr = json::array(), zi = json::array();
      for (int i = 0; i < p.z.size(); ++i) {
        zr.push_back(p.z(i).real());
        zi.push_back(p.z(i).imag());
      }
      pts.push_back({{"z_re", zr},
                     {"z_im", zi},
                     {"Z_re", p.Z.real()},
                     {"Z_im", p.Z.imag()}});
    }
  } else {
    throw MalformedInput("write_point_file: unknown space " + pf.space);
  }
  j["points"] = std::move(pts);
  std::ofstream out(path);
  if (!out) throw MalformedInput("cannot write " + path);
  out << j.dump(2) << "\n";
}

std::string report_to_json(const std::vector<VerificationReport>& reports) {
  json j = json::array();
  for (const VerificationReport& r : reports) {
    json checks = json::array();
    for (const CheckRecord& c : r.checks)
      checks.push_back({{"id", c.id},
                        {"n", c.n},
                        {"x", c.x},
                        {"seed", c.seed},
                        {"residual", c.residual},
                        {"tolerance", c.tolerance},
                        {"pass", c.pass}});
    j.push_back({{"suite", r.suite},
                 {"pass", r.pass},
                 {"seconds", r.seconds},
                 {"max_residual", r.max_residual},
                 {"checks", std::move(checks)}});
  }
  return j.dump(2);
}

}  // namespace rsdual
