#pragma once

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "dnaadv/kmer_model.hpp"
#include "dnaadv/sequence.hpp"

namespace dnaadv {

/// One probability per class; entries in [0,1] summing to 1 within 1e-6.
using ClassProbabilities = std::vector<double>;

/// Throws OracleFailure if `probs` violates the ClassProbabilities invariants.
void check_probabilities(std::span<const double> probs, std::size_t n_classes);

std::size_t argmax(std::span<const double> probs) noexcept;

/// log p[label] - log(sum of the other entries). Monotone in p[label] but keeps its
/// resolution when p[label] rounds to 1, so searches never stall on a saturated oracle.
double true_class_log_odds(std::span<const double> probs, std::size_t label) noexcept;

/// Black-box sequence classifier. Every answer is validated at this boundary and the
/// query counter grows by exactly the number of sequences submitted.
class ClassifierOracle {
 public:
  virtual ~ClassifierOracle() = default;
  ClassifierOracle(const ClassifierOracle&) = delete;
  ClassifierOracle& operator=(const ClassifierOracle&) = delete;

  std::size_t n_classes() const noexcept { return n_classes_; }
  std::uint64_t queries() const noexcept { return queries_.load(std::memory_order_relaxed); }

  std::vector<ClassProbabilities> predict_proba(std::span<const DnaSequence> batch);
  ClassProbabilities predict_proba(const DnaSequence& seq);

 protected:
  explicit ClassifierOracle(std::size_t n_classes);

  virtual std::vector<ClassProbabilities> do_predict(std::span<const DnaSequence> batch) = 0;

 private:
  std::size_t n_classes_;
  std::atomic<std::uint64_t> queries_{0};
};

/// In-process oracle over a trained LinearKmerModel. Thread-safe.
class ModelOracle final : public ClassifierOracle {
 public:
  explicit ModelOracle(std::shared_ptr<const LinearKmerModel> model);
  explicit ModelOracle(LinearKmerModel model);

  const LinearKmerModel& model() const noexcept { return *model_; }

 protected:
  std::vector<ClassProbabilities> do_predict(std::span<const DnaSequence> batch) override;

 private:
  std::shared_ptr<const LinearKmerModel> model_;
};

}  // namespace dnaadv
