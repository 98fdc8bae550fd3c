#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <omp.h>

#include "CLI11.hpp"
#include "wpg/commands.hpp"
#include "wpg/errors.hpp"

namespace {

using namespace wpg;

constexpr int kPass = 0, kFail = 1, kUsage = 2;

struct GlobalFlags {
  std::string config;
  std::optional<int> N, m, K;
  std::optional<double> tol;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_dir;
};

// Defaults, then the config file, then explicit flags.
RunConfig resolve(const GlobalFlags& g) {
  RunConfig cfg;
  if (!g.config.empty()) {
    std::ifstream in(g.config);
    if (!in) throw ConfigError("cannot open config file " + g.config);
    json j;
    try {
      in >> j;
    } catch (const json::exception& ex) {
      throw ConfigError("config file " + g.config + " is not valid JSON: " + ex.what());
    }
    cfg = config_from_json(j, cfg);
  }
  if (g.N) cfg.N = *g.N;
  if (g.m) cfg.m = *g.m;
  if (g.K) cfg.K = *g.K;
  if (g.tol) cfg.tol = *g.tol;
  if (g.seed) cfg.seed = *g.seed;
  if (g.out_dir) cfg.out_dir = *g.out_dir;
  return cfg;
}

void apply_thread_cap() {
  const char* env = std::getenv("WPG_THREADS");
  if (!env || !*env) return;
  char* end = nullptr;
  const long n = std::strtol(env, &end, 10);
  if (*end != '\0' || n < 1) throw ConfigError(std::string("WPG_THREADS must be a positive integer (got '") + env + "')");
  omp_set_num_threads(static_cast<int>(std::min<long>(n, omp_get_num_procs())));
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  const std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UnsupportedInput("cannot open " + path);
  try {
    json j;
    in >> j;
    return j;
  } catch (const json::exception& ex) {
    throw UnsupportedInput(path + " is not valid JSON: " + ex.what());
  }
}

int cmd_verify(const RunConfig& cfg, const std::vector<std::string>& suites, const std::string& report_path) {
  RunConfig c = cfg;
  if (!suites.empty()) c.suites = suites;
  c.validate();
  const VerifyReport rep = run_verify(c);
  const std::string path = report_path.empty() ? (std::filesystem::path(c.out_dir) / "verify_report.json").string()
                                               : report_path;
  write_text(path, report_text(rep));
  int failed = 0;
  for (const auto& s : rep.suites) {
    std::printf("%s %s\n", s.pass() ? "PASS" : "FAIL", s.name.c_str());
    if (!s.error.empty()) std::printf("    error: %s\n", s.error.c_str());
    for (const auto& ch : s.checks)
      if (!ch.pass)
        std::printf("    %s = %s (%s %s)\n", ch.name.c_str(), format_double(ch.value).c_str(), ch.relation.c_str(),
                    format_double(ch.tolerance).c_str());
    failed += !s.pass();
  }
  std::printf("%d/%zu suites passed; report: %s\n", static_cast<int>(rep.suites.size()) - failed, rep.suites.size(),
              path.c_str());
  return rep.pass() ? kPass : kFail;
}

int cmd_curvature(const RunConfig& cfg, const std::string& ranks_text, int trials, int dim, const std::string& out) {
  cfg.validate();
  const std::vector<int> ranks = parse_ranks(ranks_text);
  if (trials < 1) throw ConfigError("trials must be >= 1");
  const int top = *std::max_element(ranks.begin(), ranks.end());
  if (dim == 0) dim = std::max(16, top);
  if (top > dim) throw ConfigError("rank " + std::to_string(top) + " exceeds the matrix dimension " + std::to_string(dim));
  const auto rows = curvature_sweep(ranks, trials, cfg.seed, dim);
  write_text(out, curvature_csv(rows));
  for (const auto& r : rows)
    if (!(r.K >= -2.0 - 1e-12 && r.K < -1.5)) return kFail;
  return kPass;
}

int cmd_embed(const RunConfig& cfg, const std::string& psi_path, const std::string& lambda_text, const std::string& out) {
  cfg.validate();
  double lambda = 0.0;
  if (lambda_text != "auto") {
    lambda = parse_complex(lambda_text).real();
    if (!(lambda > 0.0) || parse_complex(lambda_text).imag() != 0.0) throw ConfigError("lambda must be 'auto' or a positive real");
  }
  const EmbedReport r = run_embed(read_psi_file(psi_path, cfg.N), cfg, lambda);
  write_text(out, to_json(r).dump(2) + "\n");
  return r.converged && r.cross_method_max_diff < 1e-6 && r.siegel.member ? kPass : kFail;
}

int cmd_geodesic(const RunConfig& cfg, const std::string& psi_path, const std::string& s0, double theta,
                 const std::string& t_text, const std::string& out) {
  cfg.validate();
  const std::vector<double> ts = parse_t_grid(t_text);
  const HSMatrix psi = geodesic_direction(read_json_file(psi_path), cfg);
  const auto rows = geodesic_rows(psi, parse_complex(s0), theta, ts);
  write_text(out, geodesic_csv(rows));
  for (const auto& r : rows)
    if (!(std::abs(r.speed - 1.0) <= 1e-8)) return kFail;
  return kPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weil-Petersson geometry toolkit: verification suites, curvature, embedding and geodesic tables"};
  app.require_subcommand(1);
  app.fallthrough();
  GlobalFlags g;
  app.add_option("--config", g.config, "JSON config file (CLI flags override it)");
  app.add_option("-N,--truncation", g.N, "series truncation N");
  app.add_option("-m,--radial-order", g.m, "radial quadrature order");
  app.add_option("-K,--angular-cutoff", g.K, "angular cutoff (0 selects 2N+8)");
  app.add_option("--tol", g.tol, "Neumann series tolerance");
  app.add_option("--seed", g.seed, "RNG seed");
  app.add_option("--out-dir", g.out_dir, "output directory");

  auto* verify = app.add_subcommand("verify", "run the property suites and write a JSON report");
  std::vector<std::string> suites;
  std::string report;
  verify->add_option("--suite", suites, "run only these suites (repeatable)");
  verify->add_option("--report", report, "report path (default <out-dir>/verify_report.json)");
  bool list = false;
  verify->add_flag("--list", list, "print suite names and exit");

  auto* curvature = app.add_subcommand("curvature", "sectional curvature sweep as CSV");
  std::string ranks = "1..16", curv_out;
  int trials = 200, dim = 0;
  curvature->add_option("--ranks", ranks, "a..b or comma list")->capture_default_str();
  curvature->add_option("--trials", trials, "trials per rank")->capture_default_str();
  curvature->add_option("--dim", dim, "matrix dimension (default max(16, top rank))");
  curvature->add_option("--out", curv_out, "CSV path (default stdout)");

  auto* embed = app.add_subcommand("embed", "embed a psi file into the Grassmannian, report JSON");
  std::string embed_psi, lambda = "auto", embed_out;
  embed->add_option("--psi", embed_psi, "psi coefficient file")->required();
  embed->add_option("--lambda", lambda, "'auto' or a positive scale")->capture_default_str();
  embed->add_option("--out", embed_out, "JSON path (default stdout)");

  auto* geodesic = app.add_subcommand("geodesic", "pulled-back speed along s0 + t e^{i theta}, CSV");
  std::string geo_psi, s0 = "0", tgrid = "0:0.1:5", geo_out;
  double theta = 0.0;
  geodesic->add_option("--psi", geo_psi, "psi coefficient file or HS matrix JSON")->required();
  geodesic->add_option("--s0", s0, "start point re or re,im")->capture_default_str();
  geodesic->add_option("--theta", theta, "direction angle")->capture_default_str();
  geodesic->add_option("--t", tgrid, "start:step:stop")->capture_default_str();
  geodesic->add_option("--out", geo_out, "CSV path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kPass : kUsage;
  }

  try {
    apply_thread_cap();
    const RunConfig cfg = resolve(g);
    if (verify->parsed()) {
      if (list) {
        for (const auto& s : suite_names()) std::printf("%s\n", s.c_str());
        return kPass;
      }
      return cmd_verify(cfg, suites, report);
    }
    if (curvature->parsed()) return cmd_curvature(cfg, ranks, trials, dim, curv_out);
    if (embed->parsed()) return cmd_embed(cfg, embed_psi, lambda, embed_out);
    if (geodesic->parsed()) return cmd_geodesic(cfg, geo_psi, s0, theta, tgrid, geo_out);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kUsage;
  } catch (const UnsupportedInput& e) {
    std::fprintf(stderr, "input error: %s\n", e.what());
    return kUsage;
  } catch (const NormalizationError& e) {
    std::fprintf(stderr, "normalization error: %s\n", e.what());
    return kUsage;
  } catch (const DomainError& e) {
    std::fprintf(stderr, "input error: %s\n", e.what());
    return kUsage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kFail;
  }
  return kUsage;
}
