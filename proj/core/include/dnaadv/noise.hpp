#pragma once

#include <cstddef>
#include <cstdint>

#include "dnaadv/dataset.hpp"
#include "dnaadv/oracle.hpp"
#include "dnaadv/sequence.hpp"

namespace dnaadv {

/// Per-base sequencing error probabilities.
struct ErrorModel {
  double sub_rate = 0.0;
  double ins_rate = 0.0;
  double del_rate = 0.0;
  std::uint64_t seed = 13;

  /// Each rate in [0, 0.5] and their sum at most 1. Throws InvalidArgument.
  void validate() const;
};

/// One left-to-right pass drawing a single event per input base: substitution (uniform
/// over the three other bases), deletion, insertion of a uniform base before the current
/// one (which is then kept), or nothing. Seeded by em.seed. Throws EmptyResult.
DnaSequence corrupt(const DnaSequence& seq, const ErrorModel& em);

struct NoiseEvaluation {
  double clean_accuracy = 0.0;
  double noisy_accuracy = 0.0;
  std::size_t samples = 0;
  double mean_length_change = 0.0;
};

/// Corrupts every record once (seed derived from em.seed and the record id) and
/// scores the oracle on clean and corrupted inputs.
NoiseEvaluation evaluate_under_noise(ClassifierOracle& oracle, const LabeledDataset& test_set,
                                     const ErrorModel& em);

}  // namespace dnaadv
