#pragma once

#include <string>

#include <json.hpp>

#include "tdga/augmentations.hpp"
#include "tdga/free_algebra.hpp"
#include "tdga/transverse_dga.hpp"

namespace tdga {

using Json = nlohmann::ordered_json;

// [{"coeff": "<coefficient text>", "word": ["a_1_2", ...]}, ...]
Json to_json(const NcPoly& x);
NcPoly ncpoly_from_json(const Json& j, RingDescriptor ring);

// Row-major array of NcPoly arrays.
Json to_json(const NcMatrix& m);
NcMatrix ncmatrix_from_json(const Json& j, RingDescriptor ring);

// {braid, strands, components, ring: {r, uv_mode}, generators: [{name, degree}],
//  differential: {name: NcPoly}, provenance}
Json to_json(const FilteredDGA& dga);
FilteredDGA dga_from_json(const Json& j);

Json to_json(const UnitTableRow& row);

// Two-space indented dump followed by a newline.
std::string dump(const Json& j);

}  // namespace tdga
