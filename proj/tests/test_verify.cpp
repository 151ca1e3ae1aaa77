#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>

#include <nlohmann/json.hpp>

#include "rsdual/io.hpp"
#include "rsdual/verify.hpp"

using namespace rsdual;

TEST_CASE("sample generators respect their domains") {
  Rng rng(1);
  Coupling c(0.8);
  PointP p = rng.random_point_p(4, c);
  for (int j = 0; j < 4; ++j) {
    CHECK(p.q(j) >= 0.0);
    CHECK(p.q(j) < M_PI);
    if (j + 1 < 4) CHECK(p.q(j) > p.q(j + 1));
  }
  PointPhat ph = rng.random_point_phat(4, c);
  CHECK(in_chamber_open(ph.pHat, c.x));
  Mat g = rng.random_gauge(4, c);
  CHECK(is_gauge_element(g, c));
  Mat u = rng.random_unitary(4);
  CHECK(is_unitary(u));
  Mat b = rng.random_b(4);
  CHECK(is_b_element(b));
}

TEST_CASE("every registered suite passes at small size") {
  for (const std::string& name : suite_names()) {
    VerificationReport rep =
        run_suite(name, 1, 3, {0.8, -1.2}, 2, 123, ToleranceConfig{});
    INFO(name);
    CHECK(rep.pass);
    CHECK(rep.checks.size() > 0);
  }
}

TEST_CASE("suite names are unique and the registry rejects unknowns") {
  auto names = suite_names();
  for (size_t i = 0; i < names.size(); ++i)
    for (size_t j = i + 1; j < names.size(); ++j) CHECK(names[i] != names[j]);
  CHECK_THROWS_AS(
      run_suite("no-such-suite", 1, 2, {0.8}, 1, 1, ToleranceConfig{}),
      MalformedInput);
}

TEST_CASE("pullback checks at one draw each") {
  for (const char* id : {"itilde", "ihat", "kx", "zx"}) {
    double r = pullback_check(id, 3, 0.8, 7, ToleranceConfig{});
    INFO(id);
    CHECK(r < 1e-5);
  }
}

TEST_CASE("ode oracle against the harmonic oscillator") {
  HamFn ham = [](const RVec& q, const RVec& p) {
    return 0.5 * (q.squaredNorm() + p.squaredNorm());
  };
  RVec q0 = RVec::Constant(1, 1.0), p0 = RVec::Zero(1);
  OdeTrajectory tr = ode_oracle(ham, q0, p0, 2.0, 5);
  for (size_t i = 0; i < tr.t.size(); ++i) {
    CHECK(tr.q[i](0) == doctest::Approx(std::cos(tr.t[i])).epsilon(1e-7));
    CHECK(tr.p[i](0) == doctest::Approx(-std::sin(tr.t[i])).epsilon(1e-7));
  }
}

TEST_CASE("tolerance overrides") {
  ToleranceConfig tc;
  tc.merge_json(R"({"duality_tol": 1e-6, "chamber_tol": 2e-9})");
  CHECK(tc.duality_tol == 1e-6);
  CHECK(tc.chamber_tol == 2e-9);
  CHECK_THROWS_AS(tc.merge_json(R"({"bogus": 1})"), MalformedInput);
  CHECK_THROWS_AS(tc.merge_json(R"([1,2])"), MalformedInput);
}

TEST_CASE("point files round trip in every space") {
  Rng rng(5);
  Coupling c(0.8);
  const char* path = "tmp_points_roundtrip.json";

  PointFile pf;
  pf.n = 3;
  pf.x = c.x;
  pf.space = "P";
  pf.points_p.push_back(rng.random_point_p(3, c));
  write_point_file(path, pf);
  PointFile back = read_point_file(path);
  CHECK(back.space == "P");
  CHECK((back.points_p[0].q - pf.points_p[0].q).cwiseAbs().maxCoeff() == 0.0);
  CHECK((back.points_p[0].p - pf.points_p[0].p).cwiseAbs().maxCoeff() == 0.0);

  pf = PointFile{};
  pf.n = 2;
  pf.x = c.x;
  pf.space = "PhatC";
  pf.points_phatc.push_back(rng.random_point_phatc(2, c));
  write_point_file(path, pf);
  back = read_point_file(path);
  CHECK(back.points_phatc[0].Z == pf.points_phatc[0].Z);
  CHECK(back.points_phatc[0].z(0) == pf.points_phatc[0].z(0));
  std::remove(path);

  CHECK_THROWS_AS(read_point_file("no_such_file.json"), MalformedInput);
}

TEST_CASE("verification reports serialize to parseable json") {
  VerificationReport rep =
      run_suite("factorizations", 2, 2, {0.8}, 1, 9, ToleranceConfig{});
  auto j = nlohmann::json::parse(report_to_json({rep}));
  CHECK(j.is_array());
  CHECK(j[0]["suite"] == "factorizations");
  CHECK(j[0]["pass"] == true);
}
