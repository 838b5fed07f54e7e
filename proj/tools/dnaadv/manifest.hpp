#pragma once

#include <filesystem>
#include <map>
#include <string>

#include "json.hpp"

namespace dnaadv::cli {

using nlohmann::ordered_json;

/// Lower-case hex SHA-256 of a file's bytes. Throws IoError.
std::string sha256_file(const std::filesystem::path& path);

/// Everything needed to rerun a command: its name, fully resolved options and the
/// digests of the files it read.
struct Manifest {
  std::string command;
  ordered_json config;
  std::map<std::string, std::string> inputs;  // path -> sha256
  std::map<std::string, std::string> outputs;

  void add_input(const std::filesystem::path& path);
  void add_output(const std::filesystem::path& path);

  ordered_json to_json() const;
  static Manifest from_json(const ordered_json& doc);

  void write(const std::filesystem::path& path) const;
  static Manifest read(const std::filesystem::path& path);

  /// Throws InvalidArgument naming the first input whose bytes changed.
  void verify_inputs() const;
};

/// `<dir>/<stem>.manifest.json` for an output file.
std::filesystem::path manifest_path_for(const std::filesystem::path& output);

}  // namespace dnaadv::cli
