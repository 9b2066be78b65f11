#pragma once

#include <istream>
#include <ostream>

#include <json.hpp>

#include "alcove/cone_geometry.hpp"
#include "alcove/path_engine.hpp"

namespace alcove {

// CSV with header "time,value", one row per node.
void write_path_csv(const Path& path, std::ostream& os);
// Reads the CSV above; the times must be uniformly spaced from 0.
Path read_path_csv(std::istream& is);

// {"step": h, "count": n, "values": [...]}
nlohmann::json path_to_json(const Path& path);
Path path_from_json(const nlohmann::json& j);

// {"kind": "affine"|"dihedral", "m": m, "xs": [...]}
nlohmann::json strings_to_json(const StringVector& sv);
StringVector strings_from_json(const nlohmann::json& j);

}  // namespace alcove
