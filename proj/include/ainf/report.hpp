#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "ainf/ainfty.hpp"
#include "ainf/homology.hpp"
#include "ainf/pipeline.hpp"

namespace ainf {

using json = nlohmann::json;

// Cells as [source, target, degree, dim] with vertex names, sorted.
json table_json(const DimTable& t, const std::vector<std::string>& vertices);
DimTable table_from_json(const json& j, const std::vector<std::string>& vertices);

json verdict_json(const Verdict& v, const GradedBimodule& space);
// "pass (n ≤ 5)" / "fail (n ≤ 5)"
std::string verdict_line(const Verdict& v);
// One indented line per failure, at most `limit`.
std::string failure_lines(const Verdict& v, const GradedBimodule& space, std::size_t limit = 10);

json report_json(const TheoremReport& r);
TheoremReport report_from_json(const json& j);
std::string report_text(const TheoremReport& r);

}  // namespace ainf
