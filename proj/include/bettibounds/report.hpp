#pragma once

#include <json.hpp>

#include <string>

#include "bettibounds/bounds.hpp"
#include "bettibounds/cubical.hpp"
#include "bettibounds/jobspec.hpp"
#include "bettibounds/verify.hpp"

namespace bettibounds {

using Json = nlohmann::ordered_json;

Json bound_to_json(const Bound& bound);

Json bound_report(const JobSpec& job, const RouteResult& route, std::size_t n);
Json verify_report(const JobSpec& job, const DominationReport& report);

struct ConstructRow {
    std::string label;        // "T" or "Xprime"
    std::string formula_text;
    BettiVector original;
    BettiVector constructed;
    bool equal;
    std::string raster_path;  // where the .cbs file went ("" when not written)
};
Json construct_report(const JobSpec& job, const std::vector<ConstructRow>& rows);

/// Minimal structural schema check; throws std::invalid_argument when a
/// required field is missing or has the wrong shape.
void validate_report(const Json& report);

/// Stamps the timestamp field (kept last so reports are byte-identical
/// modulo this one line) and writes atomically via rename.
void write_report_atomic(const std::string& path, Json report);

std::string render_report(Json report);

}  // namespace bettibounds
