#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "dnaadv/dataset.hpp"

namespace dnaadv {

struct PlantedMotif {
  std::string motif;
  double probability = 1.0;

  friend bool operator==(const PlantedMotif&, const PlantedMotif&) = default;
};

/// Parameters of the motif-planted benchmark generator.
struct SyntheticSpec {
  std::size_t n_classes = 2;
  std::size_t seq_len = 300;
  std::vector<std::vector<PlantedMotif>> motifs_per_class;  // one list per class
  std::size_t samples_per_class = 250;
  double background_gc = 0.5;
  std::uint64_t seed = 13;

  /// Throws InvalidArgument, InvalidSymbol or MotifTooLong.
  void validate() const;

  /// The two-class, 300 nt benchmark used by the CLI defaults and the acceptance suite.
  static SyntheticSpec benchmark();

  friend bool operator==(const SyntheticSpec&, const SyntheticSpec&) = default;
};

/// Background bases are i.i.d. with P(G)=P(C)=gc/2 and P(A)=P(T)=(1-gc)/2. Each motif of
/// the sample's class is then planted with its probability, in list order, at a uniform
/// start among those that do not overlap an earlier planted motif (skipped if none).
/// A record containing a motif that only other classes plant is redrawn, so motif
/// presence separates the classes exactly (InvalidArgument after 10,000 redraws).
/// Records are interleaved by class: sample 0 of every class, then sample 1, ...
LabeledDataset generate_synthetic(const SyntheticSpec& spec);

}  // namespace dnaadv
