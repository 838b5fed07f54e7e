#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "dnaadv/attack.hpp"
#include "dnaadv/dataset.hpp"
#include "dnaadv/defense.hpp"
#include "dnaadv/kmer_model.hpp"
#include "dnaadv/metrics.hpp"
#include "dnaadv/noise.hpp"
#include "dnaadv/synthetic.hpp"
#include "manifest.hpp"

namespace dnaadv::cli {

namespace fs = std::filesystem;

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitIncomplete = 3;

struct GenDataOptions {
  SyntheticSpec spec = SyntheticSpec::benchmark();
  SplitSpec split;
  fs::path out;
};

struct TrainOptions {
  fs::path data;
  int k = 3;
  TrainConfig train;
  fs::path out;
};

struct AttackOptions {
  fs::path model;          // empty when an external oracle is used
  std::string oracle_cmd;  // shell command speaking the oracle protocol
  double oracle_timeout_s = 60.0;
  fs::path data;
  std::string split = "test";
  AttackKind kind = AttackKind::Nucleotide;
  GridAxis axis = GridAxis::Epsilon;
  std::vector<double> grid;  // empty: 0.1..0.5 for epsilon, 10..50 for iterations
  AttackConfig attack;
  std::size_t threads = 1;
  fs::path out;
};

struct AdvTrainOptions {
  fs::path data;
  AdvTrainConfig config;
  fs::path out;
  fs::path log;  // empty: <out stem>.log.csv
};

struct NoiseOptions {
  fs::path model;
  fs::path data;
  std::string split = "test";
  ErrorModel error_model;
  fs::path out;
};

ordered_json to_json(const GenDataOptions& o);
ordered_json to_json(const TrainOptions& o);
ordered_json to_json(const AttackOptions& o);
ordered_json to_json(const AdvTrainOptions& o);
ordered_json to_json(const NoiseOptions& o);

GenDataOptions gen_data_options_from_json(const ordered_json& doc);
TrainOptions train_options_from_json(const ordered_json& doc);
AttackOptions attack_options_from_json(const ordered_json& doc);
AdvTrainOptions adv_train_options_from_json(const ordered_json& doc);
NoiseOptions noise_options_from_json(const ordered_json& doc);

// Each command writes its outputs and manifest, prints one JSON summary line on stdout
// and returns an exit code.
int run_gen_data(const GenDataOptions& o);
int run_train(const TrainOptions& o);
int run_attack(const AttackOptions& o);
int run_adv_train(const AdvTrainOptions& o);
int run_noise(const NoiseOptions& o);

/// Reruns the command a manifest describes. `out` and `threads` override the recorded
/// values when given.
int run_replay(const fs::path& manifest, const std::optional<fs::path>& out,
               std::optional<std::size_t> threads);

/// --threads, else DNAADV_THREADS, else the machine's parallelism.
std::size_t resolve_threads(std::optional<std::size_t> flag);

}  // namespace dnaadv::cli
