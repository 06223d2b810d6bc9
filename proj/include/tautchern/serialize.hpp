#pragma once

#include <string>

#include <json.hpp>

#include "tautchern/chern.hpp"
#include "tautchern/jacobian.hpp"

namespace tautchern {

using Json = nlohmann::ordered_json;

Json bipartition_to_json(const Bipartition& b);
Bipartition bipartition_from_json(const Json& j);  // rejects sides without the anchor

Json divisor_to_json(const DivisorSpec& d);
DivisorSpec divisor_from_json(const MarkedSpace& space, const Json& j);

Json phi_to_json(const OneNodePolarisation& phi);
OneNodePolarisation phi_from_json(const MarkedSpace& space, const Json& j);

Json graph_to_json(const MarkedSpace& space, const DecoratedGraph& g);
Json taut_class_to_json(const TautClass& c);
Json graded_to_json(const std::map<int, TautClass>& by_degree);

}  // namespace tautchern
