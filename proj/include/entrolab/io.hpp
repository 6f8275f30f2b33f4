#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "entrolab/distribution.hpp"
#include "entrolab/entropy.hpp"

namespace entrolab {

using Json = nlohmann::ordered_json;

/// Reads and parses a JSON file; ParseError names the path on failure.
Json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const Json& value);

/// Rational from a JSON string ("1/8", "0.125") or number.
Rational rational_from_json(const Json& value, const std::string& where);

/// {"variables":[{"name":"Y1","alphabet":["0","1"]}],
///  "pmf":[{"outcome":["0"],"p":"1/2"}, ...]}
JointDistribution distribution_from_json(const Json& value, const std::string& where = "distribution");
Json distribution_to_json(const JointDistribution& dist);

/// {"variables":["Y1","Y2"], "entropies":{"Y1":"2","Y1,Y2":"3", ...}}
/// Every nonempty subset must be listed.
EntropyVector entropy_vector_from_json(const Json& value, const std::string& where = "entropies");
Json entropy_vector_to_json(const EntropyVector& h);

}  // namespace entrolab
