#pragma once
#include <functional>
#include <string>

#include <json.hpp>

#include "monocycle/complex.hpp"
#include "monocycle/presentation.hpp"

namespace monocycle {

using json = nlohmann::ordered_json;

json presentation_to_json(const Presentation& P);
PresPtr presentation_from_json(const json& j);

// objects name their presentation; restricted ones also list their open strata
json morphism_to_json(const Morphism& f);
json object_to_json(const Object& F);
// resolves the presentation by name (builtin or the supplied base), then restricts if needed
using PresResolver = std::function<PresPtr(const std::string& name, const CoeffRing& k)>;
Object object_from_json(const json& j, const PresResolver& resolve);
Morphism morphism_from_json(const json& j, const PresPtr& P);
PresResolver builtin_resolver(const PresPtr& extra = nullptr);

// Graphviz picture: cells as nodes, differential entries as dashed labeled edges
std::string object_to_dot(const Object& F);

std::string read_file(const std::string& path);

}  // namespace monocycle
