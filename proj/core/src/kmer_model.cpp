#include "dnaadv/kmer_model.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "dnaadv/errors.hpp"
#include "json.hpp"

namespace dnaadv {
namespace {

using nlohmann::json;

void softmax_inplace(std::span<double> z) {
  const double m = *std::max_element(z.begin(), z.end());
  double sum = 0.0;
  for (double& v : z) {
    v = std::exp(v - m);
    sum += v;
  }
  for (double& v : z) v /= sum;
}

bool all_finite(std::span<const double> xs) {
  return std::all_of(xs.begin(), xs.end(), [](double v) { return std::isfinite(v); });
}

// Accumulates the mean data gradient over `batch` into grad (which must be zeroed) and
// returns the mean cross-entropy.
double accumulate_data_gradient(const LinearKmerModel& model, std::span<const Example> batch,
                                std::span<const std::size_t> order, Gradient& grad) {
  const std::size_t n_cls = model.n_classes();
  const std::size_t dim = model.n_features();
  const auto w = model.weights();
  const auto b = model.bias();
  const double scale = model.feature_scale();
  std::vector<double> z(n_cls);
  double loss = 0.0;
  const double inv_n = 1.0 / static_cast<double>(order.size());
  for (std::size_t idx : order) {
    const Example& ex = batch[idx];
    for (std::size_t c = 0; c < n_cls; ++c) {
      double acc = b[c];
      const double* row = w.data() + c * dim;
      double dot = 0.0;
      for (std::size_t j = 0; j < dim; ++j) dot += row[j] * ex.features[j];
      z[c] = acc + scale * dot;
    }
    const double m = *std::max_element(z.begin(), z.end());
    double sum = 0.0;
    for (double v : z) sum += std::exp(v - m);
    loss += (m + std::log(sum) - z[ex.label]) * inv_n;
    for (std::size_t c = 0; c < n_cls; ++c) {
      const double p = std::exp(z[c] - m) / sum;
      const double delta = (p - (c == ex.label ? 1.0 : 0.0)) * inv_n;
      grad.bias[c] += delta;
      double* grow = grad.weights.data() + c * dim;
      for (std::size_t j = 0; j < dim; ++j) grow[j] += delta * scale * ex.features[j];
    }
  }
  return loss;
}

double l2_penalty(const LinearKmerModel& model, double l2) {
  double sq = 0.0;
  for (double v : model.weights()) sq += v * v;
  return 0.5 * l2 * sq;
}

std::vector<std::size_t> iota_indices(std::size_t n) {
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  return idx;
}

}  // namespace

KmerFeaturizer::KmerFeaturizer(int k) : k_(k) {
  if (k < kMinK || k > kMaxK)
    throw InvalidArgument("k out of range: " + std::to_string(k) + " (allowed 1..8)");
}

std::vector<double> KmerFeaturizer::featurize(const DnaSequence& seq) const {
  std::vector<double> out(dimension());
  featurize_into(seq.view(), out);
  return out;
}

void KmerFeaturizer::featurize_into(std::string_view bases, std::span<double> out) const {
  const auto k = static_cast<std::size_t>(k_);
  if (bases.size() < k) throw SequenceTooShort(bases.size(), k);
  std::fill(out.begin(), out.end(), 0.0);
  const std::size_t mask = dimension() - 1;
  std::size_t code = 0;
  for (std::size_t i = 0; i < bases.size(); ++i) {
    code = ((code << 2) | static_cast<std::size_t>(base_index(bases[i]))) & mask;
    if (i + 1 >= k) out[code] += 1.0;
  }
  const double windows = static_cast<double>(bases.size() - k + 1);
  for (double& v : out) v /= windows;
}

void TrainConfig::validate() const {
  // A zero step is accepted so that training can be run as a no-op.
  if (!(learning_rate >= 0.0) || !std::isfinite(learning_rate))
    throw InvalidArgument("learning_rate must be non-negative");
  if (epochs < 1) throw InvalidArgument("epochs must be at least 1");
  if (batch_size < 1) throw InvalidArgument("batch_size must be at least 1");
  if (!(l2 >= 0.0) || !std::isfinite(l2)) throw InvalidArgument("l2 must be non-negative");
}

LinearKmerModel::LinearKmerModel(int k, std::vector<std::string> class_names)
    : featurizer_(k), class_names_(std::move(class_names)) {
  if (class_names_.size() < 2) throw InvalidArgument("a model needs at least two classes");
  weights_.assign(class_names_.size() * featurizer_.dimension(), 0.0);
  bias_.assign(class_names_.size(), 0.0);
}

LinearKmerModel::LinearKmerModel(int k, std::vector<std::string> class_names,
                                 std::vector<double> weights, std::vector<double> bias)
    : LinearKmerModel(k, std::move(class_names)) {
  if (weights.size() != weights_.size() || bias.size() != bias_.size())
    throw InvalidArgument("parameter dimensions do not match k and class count");
  if (!all_finite(weights) || !all_finite(bias))
    throw InvalidArgument("model parameters must be finite");
  weights_ = std::move(weights);
  bias_ = std::move(bias);
}

double LinearKmerModel::final_train_loss() const noexcept {
  return epoch_losses_.empty() ? std::nan("") : epoch_losses_.back();
}

void LinearKmerModel::probabilities(std::span<const double> features,
                                    std::span<double> out) const {
  const std::size_t dim = n_features();
  const double scale = feature_scale();
  for (std::size_t c = 0; c < n_classes(); ++c) {
    const double* row = weights_.data() + c * dim;
    double dot = 0.0;
    for (std::size_t j = 0; j < dim; ++j) dot += row[j] * features[j];
    out[c] = bias_[c] + scale * dot;
  }
  softmax_inplace(out);
}

std::vector<double> LinearKmerModel::predict_proba(const DnaSequence& seq) const {
  const auto x = featurizer_.featurize(seq);
  std::vector<double> p(n_classes());
  probabilities(x, p);
  return p;
}

LossAndGradient loss_and_gradient(const LinearKmerModel& model, std::span<const Example> batch,
                                  double l2) {
  if (batch.empty()) throw InvalidArgument("loss_and_gradient needs a nonempty batch");
  LossAndGradient out;
  out.gradient.weights.assign(model.weights().size(), 0.0);
  out.gradient.bias.assign(model.n_classes(), 0.0);
  const auto order = iota_indices(batch.size());
  out.loss = accumulate_data_gradient(model, batch, order, out.gradient) + l2_penalty(model, l2);
  const auto w = model.weights();
  for (std::size_t i = 0; i < w.size(); ++i) out.gradient.weights[i] += l2 * w[i];
  return out;
}

double objective(const LinearKmerModel& model, std::span<const Example> batch, double l2) {
  return loss_and_gradient(model, batch, l2).loss;
}

std::vector<Example> featurize_dataset(const KmerFeaturizer& f, const LabeledDataset& ds) {
  std::vector<Example> out;
  out.reserve(ds.size());
  for (const auto& r : ds.records()) out.push_back({f.featurize(r.seq), r.label});
  return out;
}

void train_epoch(LinearKmerModel& model, std::span<const Example> examples,
                 const TrainConfig& cfg, Rng& shuffle_rng) {
  auto order = iota_indices(examples.size());
  std::shuffle(order.begin(), order.end(), shuffle_rng);
  Gradient grad;
  auto w = model.weights();
  auto b = model.bias();
  for (std::size_t start = 0; start < order.size(); start += cfg.batch_size) {
    const std::size_t stop = std::min(order.size(), start + cfg.batch_size);
    grad.weights.assign(w.size(), 0.0);
    grad.bias.assign(b.size(), 0.0);
    accumulate_data_gradient(model, examples,
                             std::span<const std::size_t>(order).subspan(start, stop - start),
                             grad);
    for (std::size_t i = 0; i < w.size(); ++i)
      w[i] -= cfg.learning_rate * (grad.weights[i] + cfg.l2 * w[i]);
    for (std::size_t c = 0; c < b.size(); ++c) b[c] -= cfg.learning_rate * grad.bias[c];
  }
}

LinearKmerModel train(const LabeledDataset& ds, int k, const TrainConfig& cfg) {
  cfg.validate();
  std::vector<bool> populated(ds.classes().size());
  for (const auto& r : ds.records()) populated[r.label] = true;
  if (std::count(populated.begin(), populated.end(), true) < 2)
    throw DegenerateDataset("training needs records from at least two classes");

  LinearKmerModel model(k, ds.classes());
  const auto examples = featurize_dataset(model.featurizer(), ds);
  Rng rng(cfg.seed);
  for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
    train_epoch(model, examples, cfg, rng);
    model.epoch_losses().push_back(objective(model, examples, cfg.l2));
  }
  return model;
}

double accuracy(const LinearKmerModel& model, const LabeledDataset& ds) {
  if (ds.empty()) throw InvalidArgument("accuracy of an empty dataset");
  std::size_t correct = 0;
  for (const auto& r : ds.records()) {
    const auto p = model.predict_proba(r.seq);
    correct += static_cast<std::size_t>(std::max_element(p.begin(), p.end()) - p.begin()) == r.label;
  }
  return static_cast<double>(correct) / static_cast<double>(ds.size());
}

std::string model_to_json(const LinearKmerModel& model) {
  json doc;
  doc["format_version"] = kModelFormatVersion;
  doc["k"] = model.k();
  doc["class_names"] = model.class_names();
  doc["bias"] = std::vector<double>(model.bias().begin(), model.bias().end());
  doc["weights"] = std::vector<double>(model.weights().begin(), model.weights().end());
  if (!model.epoch_losses().empty()) doc["final_train_loss"] = model.final_train_loss();
  return doc.dump() + "\n";
}

LinearKmerModel model_from_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw SerializationError(std::string("model file is not valid JSON: ") + e.what());
  }
  try {
    if (!doc.is_object() || !doc.contains("format_version"))
      throw SerializationError("model file lacks format_version");
    const int version = doc.at("format_version").get<int>();
    if (version != kModelFormatVersion)
      throw VersionMismatch("unsupported model format_version " + std::to_string(version));
    LinearKmerModel model(doc.at("k").get<int>(),
                          doc.at("class_names").get<std::vector<std::string>>(),
                          doc.at("weights").get<std::vector<double>>(),
                          doc.at("bias").get<std::vector<double>>());
    if (doc.contains("final_train_loss"))
      model.epoch_losses().push_back(doc["final_train_loss"].get<double>());
    return model;
  } catch (const json::exception& e) {
    throw SerializationError(std::string("malformed model file: ") + e.what());
  } catch (const InvalidArgument& e) {
    throw SerializationError(std::string("inconsistent model file: ") + e.what());
  }
}

void save_model(const LinearKmerModel& model, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  out << model_to_json(model);
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

LinearKmerModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SerializationError("cannot open model file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return model_from_json(buf.str());
}

}  // namespace dnaadv
