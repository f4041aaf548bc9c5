#pragma once

#include <stdexcept>
#include <string>

#include "json.hpp"
#include "tilerect/atam.hpp"

namespace tilerect {

inline constexpr int kFormatVersion = 1;

// Any malformed or inconsistent document.
struct FormatError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Canonical form: sorted keys, records sorted (tiles by name, cells by x,y,z),
// no insignificant whitespace, all six glue records present.
std::string serialize_tas(const TAS& T);
TAS parse_tas(const std::string& text);

struct AssemblyDocument {
    Assembly assembly;
    nlohmann::json provenance;  // null when absent
};
std::string serialize_assembly(const TileSet& ts, const Assembly& a, const nlohmann::json& provenance = nullptr);
AssemblyDocument parse_assembly(const std::string& text, const TileSet& ts);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

}  // namespace tilerect
