// JSON reading and writing for scalars, complexes, cubes, rays, models and
// reports. Errors are NovikovError("ParseError", "<path>: <reason>").
#pragma once

#include <json.hpp>
#include <string>

#include "nov/chain.hpp"
#include "nov/cubes.hpp"
#include "nov/morse.hpp"
#include "nov/rays.hpp"

namespace nov {

using Json = nlohmann::json;

// exact scalars: [{num, den, exp_num, exp_den}]; with precision:
// {"terms": [...], "precision": "p/q"}; a string in text form is also read
Json scalar_to_json(const Scalar& x);
Scalar scalar_from_json(const Json& j, const std::string& path = "scalar");

Json rational_to_json(const Rational& q);  // "p/q" or "p"
Rational rational_from_json(const Json& j, const std::string& path);

Json complex_to_json(const ChainComplex& c);
ChainComplex complex_from_json(const Json& j, const std::string& path = "complex");

// [{row, col, scalar}]
Json matrix_to_json(const SMat& m);
SMat matrix_from_json(const Json& j, int rows, int cols, const std::string& path);

Json cube_to_json(const CubeDiagram& c);
CubeDiagram cube_from_json(const Json& j, const std::string& path = "cube");

Json model_to_json(const MorseModel& m);
MorseModel model_from_json(const Json& j, const std::string& path = "model");
// a bundled model name or an inline model
MorseModel model_ref_from_json(const Json& j, const std::string& path);

Json region_to_json(const Region& k);
Region region_from_json(const Json& j, const std::string& path);
Hamiltonian hamiltonian_from_json(const MorseModel& m, const Json& j, const std::string& path);

// {n, prefix: [cube], tail: {kind, payload}}
Json ray_to_json(const Ray& r);
Ray ray_from_json(const Json& j, const std::string& path = "ray");

Json barcode_to_json(const Barcode& b);
Json betti_to_json(const Betti& b);

Json read_json_file(const std::string& path);

}  // namespace nov
