#pragma once

#include <nlohmann/json.hpp>

#include "dgk/algebra.hpp"

namespace dgk {

// Lossless group-element serialization keyed on the payload kind.
nlohmann::json payload_to_json(const GroupElement& g);
GroupElement element_from_json(const AmbientGroup& group, const nlohmann::json& j);

nlohmann::json groupoid_element_to_json(const GroupoidElement& x);
GroupoidElement groupoid_element_from_json(const AmbientGroup& group,
                                           const nlohmann::json& j);

// Fragment schema: structure tag, closure status, element list, and the
// composability relation as index triples [i, j, product-index].
nlohmann::json fragment_to_json(const Fragment& frag);
std::vector<GroupoidElement> fragment_elements_from_json(const AmbientGroup& group,
                                                         const nlohmann::json& j);

// DOT graph: units as nodes, arrows labeled (h,k) from source to range.
std::string fragment_to_dot(const Fragment& frag);

nlohmann::json conv_to_json(const ConvElement& f);
ConvElement conv_from_json(std::shared_ptr<const Fragment> frag, const nlohmann::json& j);

}  // namespace dgk
