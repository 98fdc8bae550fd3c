// One PASS/FAIL line per acceptance criterion.  Criteria are backed by the
// verify suites plus a few direct end-to-end checks.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include "wpg/commands.hpp"
#include "wpg/verify.hpp"

using namespace wpg;

namespace {

struct Criterion {
  std::string name;
  std::vector<std::string> suites;
};

const std::vector<Criterion> criteria = {
    {"duality-isometry", {"duality.isometry", "duality.round_trip"}},
    {"pairing-triple-equality", {"duality.triple_equality", "quad.monomial_pairing_beta"}},
    {"sup-bound", {"disk.sup_bound", "circle.bergman_closed_form"}},
    {"transform-correctness",
     {"transforms.pde_residual", "transforms.commutation", "transforms.indicator_closed_form", "transforms.cp_probe"}},
    {"beltrami-solver", {"beltrami.fixed_point", "beltrami.continuity"}},
    {"cross-method-a-mu", {"grassmann.cross_method", "beltrami.column_decay", "grassmann.column_decay_fit"}},
    {"curvature-pinching", {"grassmann.curvature_pinching"}},
    {"kahler-potential-expansion", {"grassmann.hessian_metric"}},
    {"geodesic-algebra", {"grassmann.unit_speed", "grassmann.intertwining"}},
    {"pipeline", {"grassmann.isometry_embedding", "beltrami.linear_order"}},
    {"determinism", {"cli.determinism"}},
};

std::string failing_checks(const SuiteResult& s) {
  if (!s.error.empty()) return s.name + ": " + s.error;
  std::string out;
  for (const Check& c : s.checks)
    if (!c.pass) out += s.name + "/" + c.name + " value=" + format_double(c.value) + "; ";
  return out;
}

// psi -> mu_psi -> A_mu -> exp along a geodesic; every produced point must lie
// in the Siegel disc with operator norm < 1.
std::string pipeline_check(const RunConfig& base) {
  RunConfig cfg = base;
  cfg.N = 16;
  std::string out;
  PsiCoefficients a(16), b(16), c(16);
  a.set(2, 0.3);
  b.set(3, cd(0.2, -0.1));
  b.set(5, 0.05);
  c.set(2, cd(0.0, 0.4));
  c.set(4, 0.1);
  c.set(9, cd(-0.02, 0.03));
  for (const PsiCoefficients& psi : {a, b, c}) {
    const EmbedReport e = run_embed(psi, cfg, 0.0);
    if (!e.converged) out += "embed not converged; ";
    if (!e.siegel.member || !(e.siegel.det > 0.0)) out += "embedded point outside Siegel disc; ";
    if (!(e.max_singular_value < 1.0)) out += "singular value >= 1; ";
    if (!(e.cross_method_max_diff < 1e-6)) out += "cross-method diff " + format_double(e.cross_method_max_diff) + "; ";
    const HSMatrix d = geodesic_direction(to_json(psi), cfg);
    for (const GeodesicRow& r : geodesic_rows(d, 0.0, 0.0, parse_t_grid("0:0.25:5"))) {
      if (std::fabs(r.speed - 1.0) > 1e-8) out += "speed " + format_double(r.speed) + "; ";
      // Unit HS norm: singular values of t d stay below 1 for t < 1.
      if (r.t < 1.0 && !(r.siegel_det > 0.0)) out += "geodesic point outside Siegel disc; ";
    }
  }
  return out;
}

}  // namespace

int main() {
  RunConfig cfg;
  const auto t0 = std::chrono::steady_clock::now();
  const VerifyReport first = run_verify(cfg);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::map<std::string, const SuiteResult*> by_name;
  for (const SuiteResult& s : first.suites) by_name[s.name] = &s;

  const VerifyReport second = run_verify(cfg);
  const bool identical =
      report_text(first) == report_text(second) && to_json(first).dump(2) == to_json(second).dump(2);

  bool all = true;
  for (const Criterion& c : criteria) {
    std::string why;
    for (const std::string& s : c.suites) {
      auto it = by_name.find(s);
      if (it == by_name.end())
        why += "missing suite " + s + "; ";
      else if (!it->second->pass())
        why += failing_checks(*it->second);
    }
    if (c.name == "pipeline") {
      try {
        why += pipeline_check(cfg);
      } catch (const std::exception& e) {
        why += std::string("exception: ") + e.what();
      }
    }
    if (c.name == "determinism" && !identical) why += "reports differ between runs; ";
    const bool ok = why.empty();
    all = all && ok;
    std::printf("%s %s%s%s\n", ok ? "PASS" : "FAIL", c.name.c_str(), ok ? "" : "  ", why.c_str());
  }
  std::printf("verify wall time %.2f s\n", secs);
  return all ? 0 : 1;
}
