#ifndef WPG_VERIFY_HPP
#define WPG_VERIFY_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "wpg/serialize.hpp"

namespace wpg {

struct RunConfig {
  int N = 32;       // series truncation
  int m = 64;       // radial order
  int K = 0;        // angular cutoff; 0 selects 2N+8
  double tol = 1e-8;
  std::uint64_t seed = 20240611;
  std::string out_dir = ".";
  std::vector<std::string> suites;  // empty runs every suite

  int angular_cutoff() const { return K > 0 ? K : 2 * N + 8; }
  // Throws ConfigError.
  void validate() const;
};

json to_json(const RunConfig& c);
// Fields present in `j` override `base`; unknown keys are rejected.
RunConfig config_from_json(const json& j, RunConfig base);

struct Check {
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  // "<=", "<", ">=", or "finite" (monitored quantity, tolerance unused).
  std::string relation;
  bool pass = false;
};

struct SuiteResult {
  std::string name;
  std::vector<Check> checks;
  std::string error;  // exception text when the suite aborted
  bool pass() const;
};

struct VerifyReport {
  RunConfig config;
  std::vector<SuiteResult> suites;  // sorted by name
  bool pass() const;
};

// Every suite, sorted; one per documented invariant.
const std::vector<std::string>& suite_names();
SuiteResult run_suite(const std::string& name, const RunConfig& cfg);
// Runs the selected suites on the OpenMP pool.
VerifyReport run_verify(const RunConfig& cfg);

json to_json(const VerifyReport& r);
std::string report_text(const VerifyReport& r);

}  // namespace wpg

#endif
