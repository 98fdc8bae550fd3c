#include <cmath>
#include <limits>

#include "doctest.h"
#include "wpg/commands.hpp"
#include "wpg/errors.hpp"
#include "wpg/serialize.hpp"
#include "wpg/verify.hpp"

using namespace wpg;

TEST_CASE("psi JSON round trip is exact") {
  PsiCoefficients p(20);
  p.set(2, cd(0.1, -1.0 / 3.0));
  p.set(7, cd(std::nextafter(1.0, 2.0), 0.0));
  p.set(20, cd(-1e-300, 5e-17));
  const json j = to_json(p);
  const PsiCoefficients back = psi_from_json(json::parse(j.dump()), 20);
  CHECK(back.tail() == p.tail());
  const PsiCoefficients wrapped = psi_from_json(json{{"psi", j["psi"]}, {"truncation", 25}}, 8);
  CHECK(wrapped.truncation() == 25);
  CHECK(wrapped.tail() == p.tail());
}

TEST_CASE("psi JSON rejects malformed input") {
  CHECK_THROWS_AS(psi_from_json(json::parse("[[1, 1.0, 0.0]]"), 8), UnsupportedInput);
  CHECK_THROWS_AS(psi_from_json(json::parse("[[2, 1.0]]"), 8), UnsupportedInput);
  CHECK_THROWS_AS(psi_from_json(json::parse("[[2, \"x\", 0.0]]"), 8), UnsupportedInput);
  CHECK_THROWS_AS(psi_from_json(json::parse("{\"coefficients\": []}"), 8), UnsupportedInput);
  json bad = json::array({json::array({3, 0.0, 0.0})});
  bad[0][1] = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(psi_from_json(bad, 8), UnsupportedInput);
  CHECK_THROWS_AS(read_psi_file("/nonexistent/psi.json", 8), UnsupportedInput);
}

TEST_CASE("Fourier and HS JSON round trips") {
  FourierCoefficients f(6);
  f.set(-3, cd(0.5, 0.25));
  f.set(4, cd(0.0, -2.0));
  CHECK(fourier_from_json(json::parse(to_json(f).dump()), 6).coeffs() == f.coeffs());
  HSMatrix A = HSMatrix::zero(3);
  A.at(1, 0) = cd(0.125, 0.0);
  A.at(3, 2) = cd(-0.75, 1e-9);
  const HSMatrix B = hs_from_json(json::parse(to_json(A).dump()));
  CHECK(B.data == A.data);
  CHECK_THROWS_AS(hs_from_json(json{{"rows", 2}}), UnsupportedInput);
}

TEST_CASE("run configuration: file values, unknown keys, validation") {
  RunConfig base;
  const RunConfig c = config_from_json(json{{"N", 12}, {"tol", 1e-6}, {"suites", {"quad.gauss_exactness"}}}, base);
  CHECK(c.N == 12);
  CHECK(c.tol == 1e-6);
  CHECK(c.m == base.m);
  CHECK(c.seed == base.seed);
  REQUIRE(c.suites.size() == 1);
  CHECK_THROWS_AS(config_from_json(json{{"threads", 4}}, base), ConfigError);
  CHECK_THROWS_AS(config_from_json(json{{"N", "many"}}, base), ConfigError);
  const RunConfig round = config_from_json(to_json(c), base);
  CHECK(round.N == c.N);
  CHECK(round.tol == c.tol);
  CHECK(round.suites == c.suites);
  RunConfig bad;
  bad.N = 0;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = RunConfig{};
  bad.tol = -1.0;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = RunConfig{};
  bad.suites = {"no.such.suite"};
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  CHECK_NOTHROW(RunConfig{}.validate());
}

TEST_CASE("command argument parsers") {
  CHECK(parse_ranks("1..4") == std::vector<int>{1, 2, 3, 4});
  CHECK(parse_ranks("2,5,9") == std::vector<int>{2, 5, 9});
  CHECK_THROWS_AS(parse_ranks("4..1"), ConfigError);
  CHECK_THROWS_AS(parse_ranks("0..3"), ConfigError);
  CHECK_THROWS_AS(parse_ranks("a"), ConfigError);
  const std::vector<double> t = parse_t_grid("0:0.5:2");
  REQUIRE(t.size() == 5);
  CHECK(t.back() == 2.0);
  CHECK(parse_t_grid("1:1:1").size() == 1);
  CHECK_THROWS_AS(parse_t_grid("0:0:1"), ConfigError);
  CHECK_THROWS_AS(parse_t_grid("2:0.1:1"), ConfigError);
  CHECK_THROWS_AS(parse_t_grid("0:1"), ConfigError);
  CHECK(parse_complex("0.25") == cd(0.25, 0.0));
  CHECK(parse_complex("0.1,-0.2") == cd(0.1, -0.2));
  CHECK_THROWS_AS(parse_complex("x,1"), ConfigError);
}

TEST_CASE("CSV writers") {
  const std::string csv = curvature_csv({{1, 0, -2.0, 0.5}, {3, 7, -1.75, 0.25}});
  CHECK(csv == "rank,trial,K,wedge\n1,0,-2,0.5\n3,7,-1.75,0.25\n");
  const std::string g = geodesic_csv({{0.0, 1.0, 0.5}});
  CHECK(g == "t,speed,siegel_det\n0,1,0.5\n");
  CHECK(format_double(0.1) == "0.10000000000000001");
}

TEST_CASE("embed and geodesic commands on small inputs") {
  RunConfig cfg;
  cfg.N = 8;
  cfg.m = 32;
  const EmbedReport zero = run_embed(PsiCoefficients(8), cfg, 0.0);
  CHECK(zero.A.data.norm() == 0.0);
  CHECK(zero.siegel.det == 1.0);
  CHECK(zero.siegel.member);
  PsiCoefficients p(8);
  p.set(2, 0.3);
  const EmbedReport e = run_embed(p, cfg, 0.0);
  CHECK(e.converged);
  CHECK(e.siegel.member);
  CHECK(e.cross_method_max_diff < 1e-6);
  CHECK(e.lambda == doctest::Approx(1.0));
  CHECK(e.max_singular_value < 1.0);
  CHECK_THROWS_AS(run_embed(p, cfg, 4.0), ConfigError);
  CHECK_THROWS_AS(geodesic_direction(to_json(PsiCoefficients(8)), cfg), NormalizationError);
  const HSMatrix d = geodesic_direction(to_json(p), cfg);
  CHECK(std::fabs(d.data.norm() - 1.0) < 1e-14);
  const std::vector<GeodesicRow> rows = geodesic_rows(d, 0.0, 0.0, parse_t_grid("0:0.5:3"));
  // ||d||_HS = 1 bounds the singular values of t d by t.
  for (const GeodesicRow& r : rows) {
    CHECK(std::fabs(r.speed - 1.0) < 1e-8);
    if (r.t < 1.0) CHECK(r.siegel_det > 0.0);
  }
}
