#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "makeev/bounds.hpp"
#include "makeev/certify.hpp"
#include "makeev/equipart.hpp"
#include "makeev/repbuild.hpp"

// On-disk JSON formats. Parsing is strict: missing or unknown keys and type
// mismatches raise std::invalid_argument naming the offending field.
// Variables, hyperplanes, and pair indices are 1-based in every file.

namespace makeev {

struct SpecFile {
  RepresentationSpec spec;
  int d = 0;
};

// {"k": int, "d": int, "blocks": [
//    {"kind": "equip", "l": int, "vars": [int...], "mult": int}
//  | {"kind": "ortho", "pairs": [[i, j]...], "mult": int} ]}
// mult may be omitted (default 1).
SpecFile parse_spec_file(const nlohmann::json& j);
nlohmann::json spec_file_json(const RepresentationSpec& spec, int d);

// {"d": int, "hyperplanes": [{"a": [num...], "b": num}...]}
// Normals are renormalized on load; deviations over 1e-6 are reported in
// *warnings (one line per hyperplane).
HyperplaneArrangement parse_arrangement(const nlohmann::json& j,
                                        std::vector<std::string>* warnings = nullptr);
nlohmann::json arrangement_json(const HyperplaneArrangement& arrangement);

// {"d": int, "masses": [{"points": [[num...]...], "weights": [num...]}...]}
// weights may be omitted (all 1.0).
std::vector<WeightedPointCloud> parse_masses(const nlohmann::json& j);
nlohmann::json masses_json(const std::vector<WeightedPointCloud>& masses);

nlohmann::json certificate_json(const CertificateResult& result);
nlohmann::json bound_report_json(const BoundReport& report);
nlohmann::json fourier_report_json(const FourierReport& report);

nlohmann::json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const nlohmann::json& j);

}  // namespace makeev
