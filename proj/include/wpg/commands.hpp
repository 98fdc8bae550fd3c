#ifndef WPG_COMMANDS_HPP
#define WPG_COMMANDS_HPP

#include <string>
#include <vector>

#include "wpg/grassmann.hpp"
#include "wpg/serialize.hpp"
#include "wpg/verify.hpp"

namespace wpg {

// "a..b" (inclusive) or a comma list; throws ConfigError.
std::vector<int> parse_ranks(const std::string& text);
// "start:step:stop" with step > 0, stop >= start; t_i = start + i * step.
std::vector<double> parse_t_grid(const std::string& text);
// "re" or "re,im".
cd parse_complex(const std::string& text);

// rank,trial,K,wedge with a header row.
std::string curvature_csv(const std::vector<CurvatureRow>& rows);

struct EmbedReport {
  PsiCoefficients psi;
  double lambda = 0.0;
  double sup_norm = 0.0;
  HSMatrix A;         // A_{lambda mu_psi}, the point of the Grassmannian
  HSMatrix A_scaled;  // (1/lambda) A_{lambda mu_psi}
  std::vector<double> column_norms;
  double cross_method_max_diff = 0.0;
  // max over n >= 1 of n(n+1)(n+2)(n+3) |column n|^2.
  double decay_fit_C = 0.0;
  SiegelResult siegel;
  double max_singular_value = 0.0;
  bool converged = true;
};

// lambda <= 0 selects min(1, 0.5 / sup_norm).  Truncation cfg.N; the angular
// cutoff grows to hold the whole psi tail.
EmbedReport run_embed(const PsiCoefficients& psi, const RunConfig& cfg, double lambda);
json to_json(const EmbedReport& r);

// HSMatrix JSON ({rows, cols, entries}) is used as given, an embed report
// contributes its A_mu, and psi coefficients are embedded first.  The result is scaled to unit HS norm; a zero operator
// raises NormalizationError.
HSMatrix geodesic_direction(const json& j, const RunConfig& cfg);

struct GeodesicRow {
  double t = 0.0;
  double speed = 0.0;
  double siegel_det = 0.0;  // det(id - T T^*) for T = s(t) psi
};
std::vector<GeodesicRow> geodesic_rows(const HSMatrix& psi, cd s0, double theta, const std::vector<double>& ts);
std::string geodesic_csv(const std::vector<GeodesicRow>& rows);

}  // namespace wpg

#endif
