#include "manifest.hpp"

#include <openssl/evp.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <memory>

#include "dnaadv/config_io.hpp"
#include "dnaadv/errors.hpp"

namespace dnaadv::cli {

std::string sha256_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read '" + path.string() + "'");
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), &EVP_MD_CTX_free);
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1)
    throw IoError("sha256 initialisation failed");
  std::array<char, 1 << 16> chunk;
  while (in) {
    in.read(chunk.data(), chunk.size());
    if (in.gcount() > 0) EVP_DigestUpdate(ctx.get(), chunk.data(), static_cast<std::size_t>(in.gcount()));
  }
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx.get(), digest, &len);
  std::string hex;
  char byte[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(byte, sizeof byte, "%02x", digest[i]);
    hex += byte;
  }
  return hex;
}

void Manifest::add_input(const std::filesystem::path& path) {
  inputs[path.string()] = sha256_file(path);
}

void Manifest::add_output(const std::filesystem::path& path) {
  outputs[path.string()] = sha256_file(path);
}

ordered_json Manifest::to_json() const {
  ordered_json doc;
  doc["tool"] = "dnaadv";
  doc["version"] = DNAADV_VERSION;
  doc["command"] = command;
  doc["config"] = config;
  doc["inputs"] = inputs;
  doc["outputs"] = outputs;
  return doc;
}

Manifest Manifest::from_json(const ordered_json& doc) {
  Manifest m;
  try {
    m.command = doc.at("command").get<std::string>();
    m.config = doc.at("config");
    m.inputs = doc.value("inputs", std::map<std::string, std::string>{});
    m.outputs = doc.value("outputs", std::map<std::string, std::string>{});
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("malformed manifest: ") + e.what());
  }
  return m;
}

void Manifest::write(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write manifest '" + path.string() + "'");
  out << to_json().dump(2) << '\n';
}

Manifest Manifest::read(const std::filesystem::path& path) {
  const std::string text = read_text_file(path);
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument("manifest '" + path.string() + "' is not JSON: " + e.what());
  }
  return from_json(doc);
}

void Manifest::verify_inputs() const {
  for (const auto& [path, digest] : inputs)
    if (sha256_file(path) != digest)
      throw InvalidArgument("input '" + path + "' changed since the manifest was written");
}

std::filesystem::path manifest_path_for(const std::filesystem::path& output) {
  auto stem = output.filename();
  stem.replace_extension();
  return output.parent_path() / (stem.string() + ".manifest.json");
}

}  // namespace dnaadv::cli
