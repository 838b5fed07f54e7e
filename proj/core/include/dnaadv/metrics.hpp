#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dnaadv/attack.hpp"
#include "dnaadv/sequence.hpp"

namespace dnaadv {

/// Sample Pearson correlation, clamped to [-1,1]. nullopt when either variance is zero.
/// Throws LengthMismatch or TooFewPoints (fewer than two pairs).
std::optional<double> pearson(std::span<const double> xs, std::span<const double> ys);

/// Pearson correlation of paired GC percentages.
std::optional<double> gc_correlation(std::span<const DnaSequence> originals,
                                     std::span<const DnaSequence> adversarials);

/// Fraction whose final prediction equals the true label. Throws InvalidArgument if empty.
double accuracy(std::span<const AttackOutcome> outcomes);
/// Fraction of initially-correct samples that the attack flipped. Throws NoCorrectBaseline.
double success_rate(std::span<const AttackOutcome> outcomes);

enum class GridAxis { Epsilon, Iterations };

std::string_view to_string(GridAxis axis) noexcept;
GridAxis parse_grid_axis(std::string_view name);

struct SampleRecord {
  double grid_value = 0.0;
  std::string id;
  std::size_t true_label = 0;
  std::size_t original_prediction = 0;
  std::size_t final_prediction = 0;
  bool success = false;
  std::uint64_t queries = 0;
  std::size_t edits = 0;
  std::size_t hamming = 0;
  double gc_original = 0.0;
  double gc_adversarial = 0.0;
  double final_true_prob = 0.0;
};

struct CampaignRow {
  double grid_value = 0.0;
  double clean_acc = 0.0;
  double attacked_acc = 0.0;
  std::optional<double> success_rate;  ///< empty when no sample was initially correct
  double mean_queries = 0.0;
  std::optional<double> gc_pearson;    ///< empty when a GC variance is zero
};

struct CampaignMetadata {
  AttackKind kind = AttackKind::Nucleotide;
  GridAxis axis = GridAxis::Epsilon;
  double fixed_value = 0.0;
  std::uint64_t seed = 0;
  std::string victim_id;
};

/// Rows are ordered by grid value. An aborted campaign keeps the rows it finished and is
/// flagged incomplete.
struct CampaignReport {
  CampaignMetadata metadata;
  std::vector<CampaignRow> rows;
  std::vector<SampleRecord> samples;
  bool complete = true;
  std::string incomplete_reason;
};

/// Summarises one grid value's outcomes into a report row.
CampaignRow summarize(double grid_value, std::span<const AttackOutcome> outcomes);

}  // namespace dnaadv
