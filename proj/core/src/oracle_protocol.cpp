#include "dnaadv/oracle_protocol.hpp"

#include <istream>
#include <ostream>

#include "dnaadv/errors.hpp"
#include "json.hpp"

namespace dnaadv::protocol {

using nlohmann::json;

std::string hello_message(std::size_t n_classes) {
  return json{{"type", "hello"}, {"n_classes", n_classes}}.dump();
}

std::string ready_message(std::size_t n_classes) {
  return json{{"type", "ready"}, {"n_classes", n_classes}}.dump();
}

std::string predict_message(std::uint64_t id, std::span<const DnaSequence> batch) {
  json seqs = json::array();
  for (const auto& s : batch) seqs.push_back(s.str());
  return json{{"type", "predict"}, {"id", id}, {"sequences", std::move(seqs)}}.dump();
}

std::string probs_message(std::uint64_t id, const std::vector<ClassProbabilities>& probs) {
  return json{{"type", "probs"}, {"id", id}, {"probs", probs}}.dump();
}

std::string error_message(std::uint64_t id, const std::string& message) {
  return json{{"type", "error"}, {"id", id}, {"message", message}}.dump();
}

std::size_t serve(std::istream& in, std::ostream& out, ClassifierOracle& oracle,
                  const ServeOptions& options) {
  std::size_t answered = 0;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    json msg;
    try {
      msg = json::parse(line);
    } catch (const json::exception&) {
      out << error_message(0, "unparseable request") << '\n' << std::flush;
      continue;
    }
    const std::string type = msg.value("type", "");
    if (type == "hello") {
      out << ready_message(oracle.n_classes()) << '\n' << std::flush;
    } else if (type == "predict") {
      const std::uint64_t id = msg.value("id", std::uint64_t{0});
      try {
        std::vector<DnaSequence> batch;
        for (const auto& s : msg.at("sequences")) batch.push_back(parse_sequence(s.get<std::string>()));
        out << probs_message(id, oracle.predict_proba(batch)) << '\n' << std::flush;
      } catch (const std::exception& e) {
        out << error_message(id, e.what()) << '\n' << std::flush;
      }
      if (++answered == options.max_requests) break;
    } else {
      out << error_message(msg.value("id", std::uint64_t{0}), "unknown message type '" + type + "'")
          << '\n'
          << std::flush;
    }
  }
  return answered;
}

}  // namespace dnaadv::protocol
