#pragma once

#include <json.hpp>

#include "lj/es_types.hpp"
#include "lj/quant.hpp"
#include "lj/reduce.hpp"
#include "lj/simple.hpp"

namespace lj {

using Json = nlohmann::ordered_json;

Json deriv_to_json(const DerivJPtr& d);
DerivJPtr deriv_from_json(const Json& j);

Json es_deriv_to_json(const DerivESPtr& d);
DerivESPtr es_deriv_from_json(const Json& j);

Json sderiv_to_json(const SDerivPtr& d);
SDerivPtr sderiv_from_json(const Json& j);

Json trace_to_json(const ReductionTrace& tr);

}  // namespace lj
