#ifndef WPG_SERIALIZE_HPP
#define WPG_SERIALIZE_HPP

#include <string>

#include <nlohmann/json.hpp>

#include "wpg/beltrami.hpp"
#include "wpg/circle.hpp"
#include "wpg/disk_field.hpp"
#include "wpg/grassmann.hpp"

namespace wpg {

using json = nlohmann::json;

// Coefficient maps are lists of [n, re, im] triples in ascending n.
json to_json(const FourierCoefficients& f);
json to_json(const PsiCoefficients& psi);
// {K, radial_nodes, modes: [{k, values: [[re, im], ...]}], exterior: [[q, re, im]]}.
json to_json(const DiskField& f);
// {rows, cols, entries: [[k, n, re, im]]} with nonzero entries only.
json to_json(const HSMatrix& A);
json to_json(const SolutionBasis& b);

FourierCoefficients fourier_from_json(const json& j, int truncation);
HSMatrix hs_from_json(const json& j);

// Accepts a bare triple list or {"psi": [...]} and optional "truncation".
// Throws UnsupportedInput on malformed content or indices outside n >= 2.
PsiCoefficients psi_from_json(const json& j, int default_truncation);
PsiCoefficients read_psi_file(const std::string& path, int default_truncation);

// %.17g, the text form used for CSV columns.
std::string format_double(double v);

}  // namespace wpg

#endif
