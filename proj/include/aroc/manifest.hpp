#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "aroc/io.hpp"
#include "aroc/version.hpp"

namespace aroc {

/// FNV-1a 64-bit digest of a file's bytes, as a hex string. Identifies the
/// input a run was produced from; not collision-resistant.
inline std::string file_digest(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  char buffer[4096];
  while (in.read(buffer, sizeof(buffer)) || in.gcount() > 0) {
    const auto got = static_cast<std::size_t>(in.gcount());
    for (std::size_t i = 0; i < got; ++i) {
      hash ^= static_cast<unsigned char>(buffer[i]);
      hash *= 0x100000001b3ULL;
    }
    if (!in) break;
  }
  char hex[17];
  std::snprintf(hex, sizeof(hex), "%016llx", static_cast<unsigned long long>(hash));
  return std::string(hex);
}

/// A record of one CLI run: the fully resolved configuration plus enough
/// provenance (tool version, input digest, master seed) that re-running it
/// reproduces the outputs byte for byte.
struct RunManifest {
  std::string command;
  nlohmann::json resolved_config;
  std::uint64_t master_seed = 0;
  std::string tool_version = version_string;
  std::string input_digest;  // empty when the run has no input file
};

inline nlohmann::json to_json(const RunManifest& m) {
  return nlohmann::json{{"schema_version", result_schema_version},
                        {"kind", "run_manifest"},
                        {"command", m.command},
                        {"resolved_config", m.resolved_config},
                        {"master_seed", m.master_seed},
                        {"tool_version", m.tool_version},
                        {"input_digest", m.input_digest}};
}

inline void write_manifest(const RunManifest& m, const std::filesystem::path& path) {
  detail::write_text_file(path, to_json(m).dump(2) + "\n");
}

}  // namespace aroc
