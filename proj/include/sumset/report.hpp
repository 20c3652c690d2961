#pragma once

#include "sumset/dynamics.hpp"
#include "sumset/search.hpp"
#include "sumset/witness.hpp"

#include <json.hpp>

namespace sumset {

/// Insertion-ordered JSON so identical inputs give byte-identical output.
using Json = nlohmann::ordered_json;

Json to_json(const Configuration& cfg);
Json to_json(const AuditReport& rep);
Json to_json(const ApResult& ap);
Json to_json(const GowersThreshold& g, std::uint64_t N);
Json to_json(const ReturnSet& rs);
Json to_json(const Witness& w, const WitnessParams& p);

/// {"error": {"kind": ..., "message": ...}}
Json error_json(std::string_view kind, std::string_view message);

/// Run-length list [[color, length], ...] of a color sequence.
Json runs_json(std::span<const Color> colors);

}  // namespace sumset
