#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dnaadv/dataset.hpp"
#include "dnaadv/rng.hpp"
#include "dnaadv/sequence.hpp"

namespace dnaadv {

/// Overlapping k-mer frequency features over a 4^k vocabulary. k-mers are indexed
/// base-4 with the first base most significant and A<C<G<T.
class KmerFeaturizer {
 public:
  static constexpr int kMinK = 1;
  static constexpr int kMaxK = 8;

  /// Throws InvalidArgument unless 1 <= k <= 8.
  explicit KmerFeaturizer(int k);

  int k() const noexcept { return k_; }
  std::size_t dimension() const noexcept { return std::size_t{1} << (2 * k_); }

  /// Counts of the L-k+1 overlapping windows, L1-normalised. Throws SequenceTooShort.
  std::vector<double> featurize(const DnaSequence& seq) const;
  void featurize_into(std::string_view bases, std::span<double> out) const;

 private:
  int k_;
};

struct TrainConfig {
  double learning_rate = 0.1;
  std::size_t epochs = 30;
  std::size_t batch_size = 16;
  double l2 = 1e-4;
  std::uint64_t seed = 13;

  void validate() const;
};

/// A featurised training example.
struct Example {
  std::vector<double> features;
  std::size_t label = 0;
};

/// Multinomial logistic regression on k-mer frequencies. Weights are stored row-major,
/// one row of 4^k entries per class, and initialised to zero.
///
/// The weights act on frequencies multiplied by feature_scale() = 4^k, so a uniform
/// composition reads as all-ones: logit_c = bias_c + 4^k * dot(W_c, featurize(seq)).
/// Raw frequencies are O(4^-k) and leave plain gradient descent badly conditioned.
class LinearKmerModel {
 public:
  LinearKmerModel(int k, std::vector<std::string> class_names);
  LinearKmerModel(int k, std::vector<std::string> class_names, std::vector<double> weights,
                  std::vector<double> bias);

  const KmerFeaturizer& featurizer() const noexcept { return featurizer_; }
  int k() const noexcept { return featurizer_.k(); }
  std::size_t n_classes() const noexcept { return class_names_.size(); }
  std::size_t n_features() const noexcept { return featurizer_.dimension(); }
  double feature_scale() const noexcept { return static_cast<double>(featurizer_.dimension()); }
  const std::vector<std::string>& class_names() const noexcept { return class_names_; }

  std::span<const double> weights() const noexcept { return weights_; }
  std::span<double> weights() noexcept { return weights_; }
  std::span<const double> bias() const noexcept { return bias_; }
  std::span<double> bias() noexcept { return bias_; }

  /// Per-epoch mean training objective (cross-entropy + L2), filled by training.
  const std::vector<double>& epoch_losses() const noexcept { return epoch_losses_; }
  std::vector<double>& epoch_losses() noexcept { return epoch_losses_; }
  double final_train_loss() const noexcept;

  void probabilities(std::span<const double> features, std::span<double> out) const;
  std::vector<double> predict_proba(const DnaSequence& seq) const;

 private:
  KmerFeaturizer featurizer_;
  std::vector<std::string> class_names_;
  std::vector<double> weights_;
  std::vector<double> bias_;
  std::vector<double> epoch_losses_;
};

struct Gradient {
  std::vector<double> weights;
  std::vector<double> bias;
};

struct LossAndGradient {
  double loss = 0.0;
  Gradient gradient;
};

/// Mean softmax cross-entropy over the batch plus (l2 / 2) * ||W||^2 (bias unpenalised),
/// with its analytic gradient. Throws InvalidArgument on an empty batch.
LossAndGradient loss_and_gradient(const LinearKmerModel& model, std::span<const Example> batch,
                                  double l2);
double objective(const LinearKmerModel& model, std::span<const Example> batch, double l2);

std::vector<Example> featurize_dataset(const KmerFeaturizer& f, const LabeledDataset& ds);

/// One pass of minibatch gradient descent over a shuffled copy of the example order.
void train_epoch(LinearKmerModel& model, std::span<const Example> examples,
                 const TrainConfig& cfg, Rng& shuffle_rng);

/// Zero-initialised minibatch training; the shuffle stream is seeded from cfg.seed.
/// Throws DegenerateDataset when fewer than two classes are populated.
LinearKmerModel train(const LabeledDataset& ds, int k, const TrainConfig& cfg);

double accuracy(const LinearKmerModel& model, const LabeledDataset& ds);

inline constexpr int kModelFormatVersion = 1;

/// JSON {format_version, k, class_names, bias, weights}. Doubles round-trip exactly.
std::string model_to_json(const LinearKmerModel& model);
LinearKmerModel model_from_json(std::string_view text);
void save_model(const LinearKmerModel& model, const std::filesystem::path& path);
/// Throws SerializationError or VersionMismatch.
LinearKmerModel load_model(const std::filesystem::path& path);

}  // namespace dnaadv
