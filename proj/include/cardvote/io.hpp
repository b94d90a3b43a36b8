#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "cardvote/bounds.hpp"
#include "cardvote/properties.hpp"

namespace cardvote {

/// {"m": int, "n": int, "prefs": [[[num, den], ...] per voter]}; adds
/// "relaxed": true when some voter is not normalized. Integers that do not fit
/// in 64 bits are written as decimal strings.
nlohmann::json profile_to_json(const Profile& u);
/// Inverse of profile_to_json. Voters must be normalized unless the document
/// carries "relaxed": true.
Profile profile_from_json(const nlohmann::json& doc);

/// One voter per line, values as "p/q"; '#' starts a comment line.
std::string profile_to_csv(const Profile& u);
Profile profile_from_csv(std::string_view text, bool relaxed = false);

/// Reads a .json or .csv profile file ("-" reads JSON from stdin). A JSON
/// report carrying a "profile" member is unwrapped.
Profile load_profile(const std::string& path, bool relaxed = false);

/// Decimal rendering with `digits` significant digits.
std::string decimal(const Rational& r, int digits = 12);

nlohmann::json rational_json(const Rational& r);
nlohmann::json distribution_to_json(const CandidateDistribution& d);
nlohmann::json report_to_json(const WitnessReport& report);
nlohmann::json reduction_to_json(const ReductionResult& result);
nlohmann::json projection_to_json(const ProjectionResult& result);

}  // namespace cardvote
