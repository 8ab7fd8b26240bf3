#pragma once

#include <json.hpp>

#include <string>

#include "weylq/multipliers.hpp"
#include "weylq/qcentral.hpp"

namespace weylq {

using Json = nlohmann::json;

// {"series": "A", "rank": 2, "form": "simply_connected"}
RootSystem parse_group_json(const Json& j, const std::string& ptr);

struct ParsedMeasure {
  RootSystem rs;
  AtomicMeasure measure;
};

// {"group": {...}, "atoms": [{"point": {"kind": "angle", "coords_2pi":
// ["1/4", "0"]}, "weight": {"re": 0.7, "im": 0.0}}, ...]}
// Angle coordinates are exact rationals (fractions of 2*pi) in simple-coroot
// coordinates. Throws schema_error with a JSON-pointer path on violations.
ParsedMeasure parse_measure_json(const Json& j);

// {"N": 3, "q": 0.5, "atoms": [{"nu_re": [..], "nu_im": [..], "mass": 0.4,
// "assert_positive_definite": false}]} with nu coordinates in the
// fundamental-weight basis.
CentralState parse_central_state_json(const Json& j);

Json hm_to_json(const HMDecomposition& hm);
Json gram_to_json(const GramReport& report);
Json fusion_to_json(const RootSystem& rs, const FusionDecomposition& dec);
Json decomposition_to_json(const DecompositionReport& report);

Json complex_to_json(const Cplx& c);

}  // namespace weylq
