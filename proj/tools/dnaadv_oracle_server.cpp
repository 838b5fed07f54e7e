// Child-side oracle speaking the line protocol on stdin/stdout. Serves a saved model or
// uniform answers; the failure switches exist to exercise the parent's error handling.

#include <csignal>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <thread>

#include "CLI11.hpp"
#include "dnaadv/errors.hpp"
#include "dnaadv/kmer_model.hpp"
#include "dnaadv/oracle.hpp"
#include "dnaadv/oracle_protocol.hpp"

namespace {

class UniformOracle final : public dnaadv::ClassifierOracle {
 public:
  explicit UniformOracle(std::size_t n) : ClassifierOracle(n) {}

 protected:
  std::vector<dnaadv::ClassProbabilities> do_predict(
      std::span<const dnaadv::DnaSequence> batch) override {
    return std::vector<dnaadv::ClassProbabilities>(
        batch.size(), dnaadv::ClassProbabilities(n_classes(), 1.0 / static_cast<double>(n_classes())));
  }
};


}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dnaadv oracle server: answers predict requests on stdin/stdout"};
  std::string model_path;
  std::size_t uniform = 0;
  std::size_t exit_after = 0;
  std::size_t kill_after = 0;
  std::size_t hang_after = 0;
  std::size_t claim_classes = 0;
  auto* source = app.add_option_group("source");
  source->add_option("--model", model_path, "saved model JSON to serve");
  source->add_option("--uniform", uniform, "answer 1/n for n classes")->check(CLI::Range(2, 1 << 16));
  source->require_option(1);
  app.add_option("--exit-after", exit_after, "exit cleanly after answering N requests");
  app.add_option("--kill-after", kill_after, "SIGKILL itself after answering N requests");
  app.add_option("--hang-after", hang_after, "stop answering, but stay alive, after N requests");
  app.add_option("--claim-classes", claim_classes, "report this class count in the handshake");
  CLI11_PARSE(app, argc, argv);

  std::unique_ptr<dnaadv::ClassifierOracle> oracle;
  try {
    if (!model_path.empty()) {
      oracle = std::make_unique<dnaadv::ModelOracle>(dnaadv::load_model(model_path));
    } else {
      oracle = std::make_unique<UniformOracle>(uniform);
    }
  } catch (const std::exception& e) {
    std::cerr << "dnaadv_oracle_server: " << e.what() << '\n';
    return 1;
  }

  std::ios::sync_with_stdio(false);
  std::string line;
  std::size_t answered = 0;
  const std::size_t limit =
      std::min({exit_after ? exit_after : SIZE_MAX, kill_after ? kill_after : SIZE_MAX,
                hang_after ? hang_after : SIZE_MAX});
  while (std::getline(std::cin, line)) {
    if (line.find("\"hello\"") != std::string::npos && claim_classes != 0) {
      std::cout << dnaadv::protocol::ready_message(claim_classes) << '\n' << std::flush;
      continue;
    }
    // One request at a time through the shared serve loop.
    std::istringstream one(line + '\n');
    answered += dnaadv::protocol::serve(one, std::cout, *oracle);
    if (answered >= limit) break;
  }
  if (answered >= limit) {
    if (kill_after && answered >= kill_after) std::raise(SIGKILL);
    if (hang_after && answered >= hang_after)
      for (;;) std::this_thread::sleep_for(std::chrono::hours(1));
  }
  return 0;
}
