#pragma once

#include <nlohmann/json.hpp>

#include "kform/decomposition.hpp"
#include "kform/forms.hpp"
#include "kform/numeric.hpp"
#include "kform/spectral.hpp"

namespace kform {

using nlohmann::json;

/// {"axes": [...], "fluxes": [{"axis", "terms": [{"coeff", "dq", "dqt", "field_q", "field_qt"}]}]}
json to_json(const DivergenceDecomposition& d);
/// Same flux layout plus "sign" and "omitted" per flux.
json to_json(const FundamentalForm& f);
json to_json(const DecompositionPlan& p, const AnyOperator& op);
json to_json(const ConstraintVariety& c);
json to_json(const SubstitutedForm& f);
json to_json(const GlobalRelation& g);
json to_json(const IntegralRepresentation& r);
json to_json(const BoundaryResidual& r, const std::vector<std::string>& axes);

/// Inverse of to_json(DivergenceDecomposition); the result is not marked verified.
DivergenceDecomposition decomposition_from_json(const json& j);

}  // namespace kform
