// Copyright 2026 The modspace Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <json.hpp>
#include <span>
#include <string>
#include <vector>

#include "modspace/core/grid.hpp"

namespace modspace {

using json = nlohmann::json;

// Artifact files are one JSON header line ('\n'-terminated) followed by
// little-endian float64 (re, im) pairs. header["count"] holds the number
// of complex values in the payload.
void write_blob(const std::string& path, json header, std::span<const cplx> payload);
std::vector<cplx> read_blob(const std::string& path, json& header);

json grid_to_json(const GridSpec& g);
GridSpec grid_from_json(const json& j);

void write_vector_field(const std::string& path, const VectorField& f);
VectorField read_vector_field(const std::string& path);

}  // namespace modspace
