#pragma once

// JSON form of scenarios and of the objects the reports print.
//
// Scenario file, version 1:
//   { "version": 1, "name": "...", "field": "Q" | "F5", "mode": "tabulated" | "explicit",
//     "n": 2, "components": 2,
//     "strata":    [ { "subset": [0, 1], "components": [ { "hodge": [[p, q, dim], ...] } ] } ],
//     "pullbacks": [ { "from": [], "to": [0], "p": 0, "q": 0, "matrix": [[1]] } ],
//     "points":    ["0", "1", "inf"] }
// Explicit mode takes only "points"; the tables are derived from them.
// Matrix entries are "num/den" strings over Q and integers over F_p.

#include <string>

#include "json.hpp"
#include "logwt/loggeom.hpp"

namespace logwt {

using Json = nlohmann::ordered_json;

/// Throws ScenarioError naming the offending field. Runs validate().
SncdScenario scenario_from_json(const Json& j);
SncdScenario load_scenario(const std::string& path);
Json scenario_to_json(const SncdScenario& s);

Json scalar_to_json(const Field& f, const Scalar& a);
Json matrix_to_json(const Mat& m);
Json complex_to_json(const Complex& c);
/// [[w, m, dim], ...] in key order.
Json table_to_json(const Table& t);
Json dims_to_json(const std::map<int, std::size_t>& d);
/// {"r_max", "pages": [{r, p, q, dim}], "d_ranks": [{r, p, q, rank}]}.
Json pages_to_json(const BiGradedPages& e);

}  // namespace logwt
