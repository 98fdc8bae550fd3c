#include "wpg/commands.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "wpg/errors.hpp"

namespace wpg {

namespace {

double parse_number(const std::string& s, const std::string& what) {
  size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw ConfigError(what + ": '" + s + "' is not a number");
  }
  if (used != s.size() || !std::isfinite(v)) throw ConfigError(what + ": '" + s + "' is not a finite number");
  return v;
}

int parse_int(const std::string& s, const std::string& what) {
  const double v = parse_number(s, what);
  if (v != std::floor(v) || std::fabs(v) > 1e9) throw ConfigError(what + ": '" + s + "' is not an integer");
  return static_cast<int>(v);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, sep)) out.push_back(item);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

}  // namespace

std::vector<int> parse_ranks(const std::string& text) {
  std::vector<int> out;
  const size_t dots = text.find("..");
  if (dots != std::string::npos) {
    const int a = parse_int(text.substr(0, dots), "ranks"), b = parse_int(text.substr(dots + 2), "ranks");
    if (a > b) throw ConfigError("ranks: empty range " + text);
    for (int r = a; r <= b; ++r) out.push_back(r);
  } else {
    for (const auto& s : split(text, ',')) out.push_back(parse_int(s, "ranks"));
  }
  if (out.empty()) throw ConfigError("ranks: nothing selected");
  for (int r : out)
    if (r < 1) throw ConfigError("ranks must be >= 1");
  return out;
}

std::vector<double> parse_t_grid(const std::string& text) {
  const auto parts = split(text, ':');
  if (parts.size() != 3) throw ConfigError("t grid must read start:step:stop");
  const double a = parse_number(parts[0], "t start"), h = parse_number(parts[1], "t step"),
               b = parse_number(parts[2], "t stop");
  if (!(h > 0.0)) throw ConfigError("t step must be positive");
  if (b < a) throw ConfigError("t stop must not precede t start");
  const long count = std::lround(std::floor((b - a) / h + 1e-9)) + 1;
  if (count > 1000000) throw ConfigError("t grid has too many points");
  std::vector<double> ts;
  for (long i = 0; i < count; ++i) ts.push_back(a + static_cast<double>(i) * h);
  return ts;
}

cd parse_complex(const std::string& text) {
  const auto parts = split(text, ',');
  if (parts.size() == 1) return {parse_number(parts[0], "complex value"), 0.0};
  if (parts.size() == 2) return {parse_number(parts[0], "complex value"), parse_number(parts[1], "complex value")};
  throw ConfigError("complex value must read re or re,im");
}

std::string curvature_csv(const std::vector<CurvatureRow>& rows) {
  std::string s = "rank,trial,K,wedge\n";
  for (const auto& r : rows)
    s += std::to_string(r.rank) + "," + std::to_string(r.trial) + "," + format_double(r.K) + "," +
         format_double(r.wedge) + "\n";
  return s;
}

EmbedReport run_embed(const PsiCoefficients& psi, const RunConfig& cfg, double lambda) {
  EmbedReport r;
  r.psi = psi;
  const int N = cfg.N;
  const int top = std::max(N, psi.truncation());
  const GridPtr grid = make_grid(cfg.m, std::max(cfg.angular_cutoff(), 2 * top + 8));
  r.sup_norm = weighted_sup(psi);
  if (lambda <= 0.0) lambda = r.sup_norm > 0.0 ? std::min(1.0, 0.5 / r.sup_norm) : 1.0;
  r.lambda = lambda;
  if (r.sup_norm == 0.0) {
    r.A = r.A_scaled = HSMatrix::zero(N);
  } else {
    if (!(lambda * r.sup_norm < 1.0)) throw ConfigError("lambda * sup norm must be < 1 for the Neumann series");
    const BeltramiCoefficient mu = mu_from_psi(psi.scaled(lambda), grid);
    const SolutionBasis b = basis(mu, N, cfg.tol);
    r.converged = b.converged();
    r.A = a_mu_via_trace(b);
    r.cross_method_max_diff = (r.A.data - a_mu_via_integral(mu, N, cfg.tol).data).cwiseAbs().maxCoeff();
    r.A_scaled = HSMatrix(r.A.data / lambda);
  }
  for (int n = 0; n < r.A.cols(); ++n) {
    r.column_norms.push_back(r.A.data.col(n).norm());
    if (n >= 1) {
      const double w = n * (n + 1.0) * (n + 2.0) * (n + 3.0) * r.A.data.col(n).squaredNorm();
      r.decay_fit_C = std::max(r.decay_fit_C, w);
    }
  }
  r.siegel = siegel_membership(r.A);
  if (r.A.data.size() > 0) r.max_singular_value = Eigen::JacobiSVD<Eigen::MatrixXcd>(r.A.data).singularValues()(0);
  return r;
}

json to_json(const EmbedReport& r) {
  return {{"schema", 1},
          {"psi", to_json(r.psi)},
          {"lambda", r.lambda},
          {"sup_norm", r.sup_norm},
          {"A_mu", to_json(r.A)},
          {"A_mu_over_lambda", to_json(r.A_scaled)},
          {"column_norms", r.column_norms},
          {"cross_method_max_diff", r.cross_method_max_diff},
          {"decay_fit_C", r.decay_fit_C},
          {"siegel_det", r.siegel.det},
          {"siegel_member", r.siegel.member},
          {"max_singular_value", r.max_singular_value},
          {"converged", r.converged}};
}

HSMatrix geodesic_direction(const json& j, const RunConfig& cfg) {
  HSMatrix A;
  if (j.is_object() && j.contains("rows"))
    A = hs_from_json(j);
  else if (j.is_object() && j.contains("A_mu"))
    A = hs_from_json(j.at("A_mu"));
  else
    A = run_embed(psi_from_json(j, cfg.N), cfg, 0.0).A;
  const double n = A.hs_norm();
  if (!(n > 0.0) || !std::isfinite(n)) throw NormalizationError("geodesic: psi has zero HS norm and cannot be normalized");
  A.data /= n;
  return A;
}

std::vector<GeodesicRow> geodesic_rows(const HSMatrix& psi, cd s0, double theta, const std::vector<double>& ts) {
  std::vector<GeodesicRow> rows(ts.size());
  const GeodesicSpec base = GeodesicSpec::make(psi, s0, theta, 0.0);
  for (size_t i = 0; i < ts.size(); ++i) {
    GeodesicSpec g = base;
    g.t = ts[i];
    rows[i].t = ts[i];
    rows[i].speed = geodesic_speed(g);
    rows[i].siegel_det = siegel_membership(HSMatrix(g.s() * psi.data)).det;
  }
  return rows;
}

std::string geodesic_csv(const std::vector<GeodesicRow>& rows) {
  std::string s = "t,speed,siegel_det\n";
  for (const auto& r : rows) s += format_double(r.t) + "," + format_double(r.speed) + "," + format_double(r.siegel_det) + "\n";
  return s;
}

}  // namespace wpg
