#include "dnaadv/external_oracle.hpp"

#include <poll.h>
#include <signal.h>
#include <spawn.h>
#include <sys/socket.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <cstring>

#include "dnaadv/errors.hpp"
#include "dnaadv/oracle_protocol.hpp"
#include "json.hpp"

extern char** environ;

namespace dnaadv {
namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

std::string errno_text() { return std::strerror(errno); }

// Reads one line from fd into `buffer`-backed storage, waiting at most until `deadline`.
// Returns false on EOF.
bool read_line(int fd, std::string& buffer, std::string& line, Clock::time_point deadline) {
  for (;;) {
    const auto nl = buffer.find('\n');
    if (nl != std::string::npos) {
      line = buffer.substr(0, nl);
      buffer.erase(0, nl + 1);
      return true;
    }
    int wait_ms = -1;
    if (deadline != Clock::time_point::max()) {
      const auto left =
          std::chrono::duration_cast<std::chrono::milliseconds>(deadline - Clock::now()).count();
      if (left <= 0) throw OracleFailure("timed out waiting for the oracle");
      wait_ms = static_cast<int>(std::min<long long>(left, 1'000'000));
    }
    pollfd p{fd, POLLIN, 0};
    const int ready = ::poll(&p, 1, wait_ms);
    if (ready < 0) {
      if (errno == EINTR) continue;
      throw OracleFailure("poll: " + errno_text());
    }
    if (ready == 0) continue;
    char chunk[65536];
    const ssize_t n = ::read(fd, chunk, sizeof chunk);
    if (n < 0) {
      if (errno == EINTR) continue;
      return false;
    }
    if (n == 0) return false;
    buffer.append(chunk, static_cast<std::size_t>(n));
  }
}

}  // namespace

std::unique_ptr<ExternalOracle> ExternalOracle::spawn(const std::string& command,
                                                      std::size_t n_classes,
                                                      ExternalOracleOptions options) {
  int sv[2];
  if (::socketpair(AF_UNIX, SOCK_STREAM | SOCK_CLOEXEC, 0, sv) != 0)
    throw SpawnFailure("socketpair: " + errno_text());

  posix_spawn_file_actions_t actions;
  posix_spawn_file_actions_init(&actions);
  posix_spawn_file_actions_adddup2(&actions, sv[1], STDIN_FILENO);
  posix_spawn_file_actions_adddup2(&actions, sv[1], STDOUT_FILENO);

  const char* argv[] = {"/bin/sh", "-c", command.c_str(), nullptr};
  pid_t pid = -1;
  const int rc = ::posix_spawn(&pid, "/bin/sh", &actions, nullptr, const_cast<char* const*>(argv),
                               environ);
  posix_spawn_file_actions_destroy(&actions);
  ::close(sv[1]);
  if (rc != 0) {
    ::close(sv[0]);
    throw SpawnFailure(std::strerror(rc));
  }

  std::unique_ptr<ExternalOracle> oracle(new ExternalOracle(pid, sv[0], n_classes, options));
  oracle->handshake();
  oracle->reader_ = std::thread([o = oracle.get()] { o->reader_loop(); });
  return oracle;
}

ExternalOracle::ExternalOracle(int pid, int fd, std::size_t n_classes,
                               ExternalOracleOptions options)
    : ClassifierOracle(n_classes), pid_(pid), fd_(fd), options_(options) {}

ExternalOracle::~ExternalOracle() {
  ::shutdown(fd_, SHUT_WR);
  int status = 0;
  const auto deadline = Clock::now() + std::chrono::seconds(2);
  bool reaped = false;
  while (Clock::now() < deadline) {
    const pid_t r = ::waitpid(pid_, &status, WNOHANG);
    if (r == pid_ || r < 0) {
      reaped = true;
      break;
    }
    std::this_thread::sleep_for(std::chrono::milliseconds(5));
  }
  if (!reaped) {
    ::kill(pid_, SIGKILL);
    ::waitpid(pid_, &status, 0);
  }
  ::shutdown(fd_, SHUT_RDWR);
  if (reader_.joinable()) reader_.join();
  ::close(fd_);
}

void ExternalOracle::write_line(const std::string& line) {
  std::string framed = line;
  framed.push_back('\n');
  std::size_t sent = 0;
  while (sent < framed.size()) {
    const ssize_t n = ::send(fd_, framed.data() + sent, framed.size() - sent, MSG_NOSIGNAL);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw OracleFailure("write to oracle failed: " + errno_text());
    }
    sent += static_cast<std::size_t>(n);
  }
}

void ExternalOracle::handshake() {
  try {
    write_line(protocol::hello_message(n_classes()));
  } catch (const OracleFailure& e) {
    throw SpawnFailure(e.what());
  }
  std::string line;
  bool got = false;
  try {
    got = read_line(fd_, inbox_, line, Clock::now() + options_.timeout);
  } catch (const OracleFailure& e) {
    throw SpawnFailure(std::string("no handshake reply: ") + e.what());
  }
  if (!got) throw SpawnFailure("oracle process exited before the handshake");
  json msg;
  try {
    msg = json::parse(line);
  } catch (const json::exception&) {
    throw HandshakeMismatch("handshake reply is not JSON: " + line);
  }
  if (msg.value("type", "") != "ready")
    throw HandshakeMismatch("expected a ready message, got: " + line);
  const auto reported = msg.value("n_classes", std::size_t{0});
  if (reported != n_classes())
    throw HandshakeMismatch("oracle reports " + std::to_string(reported) + " classes, expected " +
                            std::to_string(n_classes()));
}

void ExternalOracle::fail_all(const std::string& why) {
  std::lock_guard lock(state_mutex_);
  if (dead_reason_.empty()) dead_reason_ = why;
  for (auto& [id, promise] : pending_)
    promise.set_exception(std::make_exception_ptr(OracleFailure(dead_reason_)));
  pending_.clear();
}

void ExternalOracle::reader_loop() {
  std::string line;
  for (;;) {
    bool got = false;
    try {
      got = read_line(fd_, inbox_, line, Clock::time_point::max());
    } catch (const OracleFailure& e) {
      fail_all(e.what());
      return;
    }
    if (!got) {
      fail_all("oracle process exited");
      return;
    }
    std::uint64_t id = 0;
    try {
      id = json::parse(line).at("id").get<std::uint64_t>();
    } catch (const json::exception&) {
      fail_all("protocol violation: " + line.substr(0, 200));
      return;
    }
    std::lock_guard lock(state_mutex_);
    const auto it = pending_.find(id);
    if (it == pending_.end()) continue;  // late reply to a timed-out request
    it->second.set_value(std::move(line));
    pending_.erase(it);
  }
}

std::vector<ClassProbabilities> ExternalOracle::do_predict(std::span<const DnaSequence> batch) {
  std::future<std::string> reply;
  std::uint64_t id = 0;
  {
    std::lock_guard write_lock(write_mutex_);
    {
      std::lock_guard lock(state_mutex_);
      if (!dead_reason_.empty()) throw OracleFailure(dead_reason_);
      id = next_id_++;
      reply = pending_[id].get_future();
    }
    try {
      write_line(protocol::predict_message(id, batch));
    } catch (...) {
      std::lock_guard lock(state_mutex_);
      pending_.erase(id);
      throw;
    }
  }
  if (reply.wait_for(options_.timeout) != std::future_status::ready) {
    std::lock_guard lock(state_mutex_);
    pending_.erase(id);
    throw OracleFailure("timed out after " + std::to_string(options_.timeout.count()) +
                        " ms waiting for request " + std::to_string(id));
  }
  const std::string line = reply.get();
  try {
    const json msg = json::parse(line);
    const std::string type = msg.at("type").get<std::string>();
    if (type == "error")
      throw OracleFailure("oracle error for request " + std::to_string(id) + ": " +
                          msg.value("message", std::string{}));
    if (type != "probs") throw OracleFailure("unexpected response type '" + type + "'");
    auto probs = msg.at("probs").get<std::vector<ClassProbabilities>>();
    if (probs.size() != batch.size())
      throw OracleFailure("response carries " + std::to_string(probs.size()) +
                          " rows for a batch of " + std::to_string(batch.size()));
    return probs;
  } catch (const json::exception& e) {
    throw OracleFailure(std::string("malformed response: ") + e.what());
  }
}

std::unique_ptr<ClassifierOracle> spawn_external_oracle(const std::string& command,
                                                        std::size_t n_classes,
                                                        ExternalOracleOptions options) {
  return ExternalOracle::spawn(command, n_classes, options);
}

}  // namespace dnaadv
