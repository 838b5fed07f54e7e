#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include "dnaadv/attack.hpp"
#include "dnaadv/dataset.hpp"
#include "dnaadv/kmer_model.hpp"

namespace dnaadv {

struct AdvTrainConfig {
  TrainConfig base;
  AttackConfig attack;
  AttackKind kind = AttackKind::Nucleotide;
  int k = 3;
  double mix_ratio = 1.0;   ///< adversarial examples per clean example, in (0,4]
  bool regenerate = true;   ///< re-attack the evolving model before every epoch
  std::size_t threads = 1;

  void validate() const;
};

struct EpochLog {
  std::size_t epoch = 0;  // 1-based
  double clean_loss = 0.0;
  double adv_loss = 0.0;
  double clean_acc = 0.0;
};

struct AdversarialTrainingResult {
  LinearKmerModel model;
  std::vector<EpochLog> log;
  /// Adversarial half of the final epoch's mixture; ids are "<source id>#adv<n>".
  std::vector<LabeledRecord> last_adversarial;
};

/// Every epoch trains on the clean set followed by floor(mix_ratio * n) adversarial
/// examples, each labelled with its source's true label. With `regenerate`, the
/// adversarial examples are re-made against the current model before each epoch.
/// Otherwise they are made once, against a model trained normally with `base`, and
/// a fresh zero-initialised model is trained on the fixed mixture.
AdversarialTrainingResult adversarial_train(const LabeledDataset& ds, const AdvTrainConfig& cfg);

/// Source record indices for the adversarial half: floor(mix) full passes over the
/// dataset plus a seeded subset for the fractional part, each pass in dataset order.
std::vector<std::size_t> adversarial_sources(std::size_t n, double mix_ratio, std::uint64_t seed);

/// CSV: epoch,clean_loss,adv_loss,clean_acc
std::string training_log_csv(const std::vector<EpochLog>& log);
void write_training_log(const std::vector<EpochLog>& log, const std::filesystem::path& path);

}  // namespace dnaadv
