#include "wpg/serialize.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "wpg/errors.hpp"

namespace wpg {

namespace {

json triples(const std::map<int, cd>& m) {
  json out = json::array();
  for (const auto& [n, c] : m) out.push_back({n, c.real(), c.imag()});
  return out;
}

template <class F>
void read_triples(const json& arr, F&& sink) {
  if (!arr.is_array()) throw UnsupportedInput("expected a list of [n, re, im] triples");
  for (const auto& t : arr) {
    if (!t.is_array() || t.size() != 3 || !t[0].is_number_integer() || !t[1].is_number() || !t[2].is_number())
      throw UnsupportedInput("malformed coefficient triple: " + t.dump());
    sink(t[0].get<int>(), cd(t[1].get<double>(), t[2].get<double>()));
  }
}

}  // namespace

json to_json(const FourierCoefficients& f) { return {{"truncation", f.truncation()}, {"coeffs", triples(f.coeffs())}}; }

json to_json(const PsiCoefficients& psi) { return {{"truncation", psi.truncation()}, {"psi", triples(psi.tail())}}; }

json to_json(const DiskField& f) {
  json modes = json::array();
  for (int k : f.active_modes()) {
    json vals = json::array();
    for (Eigen::Index i = 0; i < f.mode(k)->size(); ++i) vals.push_back({(*f.mode(k))[i].real(), (*f.mode(k))[i].imag()});
    modes.push_back({{"k", k}, {"values", vals}});
  }
  return {{"K", f.K()}, {"radial_nodes", f.grid().x()}, {"modes", modes}, {"exterior", triples(f.exterior())}};
}

json to_json(const HSMatrix& A) {
  json entries = json::array();
  for (int k = 1; k <= A.rows(); ++k)
    for (int n = 0; n < A.cols(); ++n) {
      const cd c = A.at(k, n);
      if (c != cd(0.0)) entries.push_back({k, n, c.real(), c.imag()});
    }
  return {{"rows", A.rows()}, {"cols", A.cols()}, {"entries", entries}};
}

json to_json(const SolutionBasis& b) {
  json entries = json::array();
  for (const BasisEntry& e : b.entries)
    entries.push_back({{"n", e.n},
                       {"depth", e.depth},
                       {"tail_bound", e.tail_bound},
                       {"fixed_point_residual", e.fixed_point_residual},
                       {"converged", e.converged},
                       {"boundary", triples(e.boundary.coeffs())}});
  return {{"tol", b.tol}, {"sup_norm", b.mu.sup_norm}, {"entries", entries}};
}

FourierCoefficients fourier_from_json(const json& j, int truncation) {
  const json& arr = j.is_object() ? j.at("coeffs") : j;
  if (j.is_object() && j.contains("truncation")) truncation = j.at("truncation").get<int>();
  FourierCoefficients f(truncation);
  read_triples(arr, [&](int n, cd c) { f.set(n, c); });
  return f;
}

HSMatrix hs_from_json(const json& j) {
  try {
    const int rows = j.at("rows").get<int>(), cols = j.at("cols").get<int>();
    if (rows < 0 || cols < 0) throw UnsupportedInput("negative HSMatrix shape");
    HSMatrix A(Eigen::MatrixXcd::Zero(rows, cols));
    for (const auto& e : j.at("entries")) {
      const int k = e.at(0).get<int>(), n = e.at(1).get<int>();
      if (k < 1 || k > rows || n < 0 || n >= cols) throw UnsupportedInput("HSMatrix entry out of range");
      A.at(k, n) = cd(e.at(2).get<double>(), e.at(3).get<double>());
    }
    return A;
  } catch (const json::exception& ex) {
    throw UnsupportedInput(std::string("malformed HSMatrix: ") + ex.what());
  }
}

PsiCoefficients psi_from_json(const json& j, int default_truncation) {
  const json* arr = &j;
  int truncation = default_truncation;
  if (j.is_object()) {
    if (!j.contains("psi")) throw UnsupportedInput("psi file: missing \"psi\" list");
    arr = &j.at("psi");
    if (j.contains("truncation")) {
      if (!j.at("truncation").is_number_integer()) throw UnsupportedInput("psi file: truncation must be an integer");
      truncation = j.at("truncation").get<int>();
    }
  }
  int top = 2;
  read_triples(*arr, [&](int n, cd) { top = std::max(top, n); });
  PsiCoefficients psi(std::max(truncation, top));
  read_triples(*arr, [&](int n, cd c) {
    if (n < 2) throw UnsupportedInput("psi file: index " + std::to_string(n) + " is below 2");
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) throw UnsupportedInput("psi file: non-finite coefficient");
    psi.set(n, c);
  });
  return psi;
}

PsiCoefficients read_psi_file(const std::string& path, int default_truncation) {
  std::ifstream in(path);
  if (!in) throw UnsupportedInput("cannot open psi file " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& ex) {
    throw UnsupportedInput("psi file " + path + " is not valid JSON: " + ex.what());
  }
  return psi_from_json(j, default_truncation);
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace wpg
