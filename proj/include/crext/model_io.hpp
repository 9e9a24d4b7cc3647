#ifndef CREXT_MODEL_IO_HPP
#define CREXT_MODEL_IO_HPP

#include <nlohmann/json_fwd.hpp>

#include "crext/extend.hpp"
#include "crext/spoly.hpp"

namespace crext {

// Model schema:
//   { "n": int, "A": [[[re,im],...]], "B": [[[re,im],...]],
//     "E": [ { "z_exp": [...], "zbar_exp": [...], "coeff": [re,im] } ] }
QuadricModel model_from_json(const nlohmann::json& j);
nlohmann::json model_to_json(const QuadricModel& m);
QuadricModel load_model_file(const std::string& path);

// Polynomial schema: [ { "z_exp", "zbar_exp", "coeff" } ]
CPoly cpoly_from_json(const nlohmann::json& j, int n);
nlohmann::json cpoly_to_json(const CPoly& p);

// (z, s) polynomial schema: [ { "z_exp", "s_exp", "coeff" } ]
SPoly spoly_from_json(const nlohmann::json& j, int n);
nlohmann::json spoly_to_json(const SPoly& p);

// Data schema: { "kind": "poly", "terms": [...] } with terms in (z, zbar), or
// { "kind": "expr", "expr": <expression tree> } over (x_j, y_j, s); the s
// seen by the expression is rho(z) of the supplied model (data lives on M).
BoundaryData data_from_json(const nlohmann::json& j, const QuadricModel& model);
BoundaryData load_data_file(const std::string& path, const QuadricModel& model);

// Points: { "z": [[re,im],...], "s": real }  or a list of such objects.
LeafPoint point_from_json(const nlohmann::json& j);
std::vector<LeafPoint> points_from_json(const nlohmann::json& j);

nlohmann::json parse_json_file(const std::string& path);

}  // namespace crext

#endif
