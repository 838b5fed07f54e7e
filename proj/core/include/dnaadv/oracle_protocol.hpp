#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "dnaadv/oracle.hpp"

namespace dnaadv::protocol {

// Line-delimited JSON, one object per line:
//   parent -> child  {"type":"hello","n_classes":K}
//   child  -> parent {"type":"ready","n_classes":K}
//   parent -> child  {"type":"predict","id":N,"sequences":["ACGT",...]}
//   child  -> parent {"type":"probs","id":N,"probs":[[p1,...,pK],...]}
//   child  -> parent {"type":"error","id":N,"message":"..."}

std::string hello_message(std::size_t n_classes);
std::string ready_message(std::size_t n_classes);
std::string predict_message(std::uint64_t id, std::span<const DnaSequence> batch);
std::string probs_message(std::uint64_t id, const std::vector<ClassProbabilities>& probs);
std::string error_message(std::uint64_t id, const std::string& message);

struct ServeOptions {
  /// Stop after answering this many predict requests (0 = unlimited).
  std::size_t max_requests = 0;
};

/// Child side: answers requests read from `in` with `oracle` until EOF.
/// Returns the number of predict requests answered.
std::size_t serve(std::istream& in, std::ostream& out, ClassifierOracle& oracle,
                  const ServeOptions& options = {});

}  // namespace dnaadv::protocol
