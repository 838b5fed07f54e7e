#pragma once

#include <chrono>
#include <condition_variable>
#include <cstddef>
#include <cstdint>
#include <future>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <thread>

#include "dnaadv/oracle.hpp"

namespace dnaadv {

struct ExternalOracleOptions {
  /// Bound on the handshake and on each predict round trip.
  std::chrono::milliseconds timeout{60'000};
};

/// A child process (run via /bin/sh -c) speaking the oracle line protocol on its
/// stdin/stdout. Writes are serialised; concurrent callers are matched to responses by
/// request id. A dead, silent or misbehaving child surfaces as OracleFailure.
class ExternalOracle final : public ClassifierOracle {
 public:
  /// Throws SpawnFailure or HandshakeMismatch.
  static std::unique_ptr<ExternalOracle> spawn(const std::string& command, std::size_t n_classes,
                                               ExternalOracleOptions options = {});
  ~ExternalOracle() override;

  int pid() const noexcept { return pid_; }

 protected:
  std::vector<ClassProbabilities> do_predict(std::span<const DnaSequence> batch) override;

 private:
  ExternalOracle(int pid, int fd, std::size_t n_classes, ExternalOracleOptions options);

  void handshake();
  void reader_loop();
  void fail_all(const std::string& why);
  void write_line(const std::string& line);

  int pid_;
  int fd_;
  ExternalOracleOptions options_;

  std::mutex write_mutex_;
  std::mutex state_mutex_;
  std::uint64_t next_id_ = 1;
  std::map<std::uint64_t, std::promise<std::string>> pending_;
  std::string dead_reason_;
  std::string inbox_;
  std::thread reader_;
};

/// Convenience wrapper returning the base interface.
std::unique_ptr<ClassifierOracle> spawn_external_oracle(const std::string& command,
                                                        std::size_t n_classes,
                                                        ExternalOracleOptions options = {});

}  // namespace dnaadv
