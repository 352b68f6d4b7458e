#pragma once

#include <json.hpp>

#include "puccilab/constructions.hpp"

namespace puccilab {

using Json = nlohmann::json;

// Schema: {dim, breakpoints[], pieces[][{kind, params, coef}]}. Scalar fields
// round-trip bit-exactly (shortest-repr printing reparses to the same double).
Json profile_to_json(const RadialPiecewise& f);
RadialPiecewise profile_from_json(const Json& j);

Json ellipticity_to_json(const EllipticityPair& e);
EllipticityPair ellipticity_from_json(const Json& j);

Json params_to_json(const FamilyParams& params);
FamilyParams params_from_json(Family family, const Json& j);

// Instance = profile + provenance; loading rebuilds through the named
// builder and cross-checks the stored profile scalar-for-scalar.
Json instance_to_json(const ConstructionInstance& inst);
ConstructionInstance instance_from_json(const Json& j);

}  // namespace puccilab
