#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "lgdeg/lattice.hpp"

namespace lgdeg {

struct ConfigInput {
    PointConfiguration config;
    std::string raw;  // exact input text, hashed for provenance
};

// {"dim": d, "points": [[..], ..], "marks": optional index list}; marks select A.
ConfigInput parse_configuration(const std::string& text);
ConfigInput load_configuration(const std::filesystem::path& path);

// 64-bit FNV-1a as 16 lowercase hex digits.
std::string fnv1a_hex(const std::string& data);

// Integers beyond 53-bit magnitude become decimal strings.
nlohmann::json to_json(const Integer& x);
nlohmann::json to_json(const IntVector& v);
nlohmann::json to_json(const IndexSet& s);
// Reduced rational as "num/den", or an integer when den = 1.
nlohmann::json to_json(const Rational& x);
nlohmann::json to_json(const RatVector& v);

// Writes to a sibling temporary file, then renames over the target.
void write_atomically(const std::filesystem::path& path, const std::string& content);

}  // namespace lgdeg
