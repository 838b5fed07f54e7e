#include "dnaadv/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dnaadv/errors.hpp"

namespace dnaadv {

void check_probabilities(std::span<const double> probs, std::size_t n_classes) {
  if (probs.size() != n_classes)
    throw OracleFailure("expected " + std::to_string(n_classes) + " probabilities, got " +
                        std::to_string(probs.size()));
  double sum = 0.0;
  for (double p : probs) {
    if (!std::isfinite(p) || p < 0.0 || p > 1.0)
      throw OracleFailure("probability outside [0,1]: " + std::to_string(p));
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-6)
    throw OracleFailure("probabilities sum to " + std::to_string(sum));
}

std::size_t argmax(std::span<const double> probs) noexcept {
  return static_cast<std::size_t>(std::max_element(probs.begin(), probs.end()) - probs.begin());
}

double true_class_log_odds(std::span<const double> probs, std::size_t label) noexcept {
  double rest = 0.0;
  for (std::size_t j = 0; j < probs.size(); ++j)
    if (j != label) rest += probs[j];
  return std::log(probs[label]) - std::log(rest);
}

ClassifierOracle::ClassifierOracle(std::size_t n_classes) : n_classes_(n_classes) {
  if (n_classes < 2) throw InvalidArgument("an oracle needs at least two classes");
}

std::vector<ClassProbabilities> ClassifierOracle::predict_proba(
    std::span<const DnaSequence> batch) {
  if (batch.empty()) return {};
  queries_.fetch_add(batch.size(), std::memory_order_relaxed);
  auto out = do_predict(batch);
  if (out.size() != batch.size())
    throw OracleFailure("expected " + std::to_string(batch.size()) + " answers, got " +
                        std::to_string(out.size()));
  for (const auto& p : out) check_probabilities(p, n_classes_);
  return out;
}

ClassProbabilities ClassifierOracle::predict_proba(const DnaSequence& seq) {
  return std::move(predict_proba(std::span<const DnaSequence>(&seq, 1)).front());
}

ModelOracle::ModelOracle(std::shared_ptr<const LinearKmerModel> model)
    : ClassifierOracle(model->n_classes()), model_(std::move(model)) {}

ModelOracle::ModelOracle(LinearKmerModel model)
    : ModelOracle(std::make_shared<const LinearKmerModel>(std::move(model))) {}

std::vector<ClassProbabilities> ModelOracle::do_predict(std::span<const DnaSequence> batch) {
  std::vector<ClassProbabilities> out;
  out.reserve(batch.size());
  std::vector<double> x(model_->n_features());
  for (const auto& seq : batch) {
    model_->featurizer().featurize_into(seq.view(), x);
    ClassProbabilities p(model_->n_classes());
    model_->probabilities(x, p);
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace dnaadv
