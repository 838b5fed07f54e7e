#include "dnaadv/defense.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>

#include "dnaadv/campaign.hpp"
#include "dnaadv/errors.hpp"
#include "dnaadv/oracle.hpp"
#include "dnaadv/report.hpp"
#include "dnaadv/rng.hpp"

namespace dnaadv {
namespace {

constexpr std::uint64_t kSourceStream = 0x736f75726365ULL;  // "source"

// Attacks each source record against `model`; the adversarial copy keeps the true label.
std::vector<LabeledRecord> make_adversarial(const LinearKmerModel& model, const LabeledDataset& ds,
                                            std::span<const std::size_t> sources,
                                            const AdvTrainConfig& cfg, std::uint64_t epoch_key) {
  ModelOracle oracle(std::make_shared<const LinearKmerModel>(model));
  std::vector<std::optional<LabeledRecord>> out(sources.size());
  parallel_for(sources.size(), cfg.threads, [&](std::size_t i) {
    const auto& src = ds[sources[i]];
    AttackConfig own = cfg.attack;
    own.seed = derive_seed(derive_seed(cfg.attack.seed, epoch_key), src.id + "#" + std::to_string(i));
    const auto outcome = run_attack(cfg.kind, oracle, src.seq, src.label, own);
    out[i] = LabeledRecord{src.id + "#adv" + std::to_string(i), outcome.adversarial, src.label};
  });
  std::vector<LabeledRecord> records;
  records.reserve(out.size());
  for (auto& r : out) records.push_back(std::move(*r));
  return records;
}

std::vector<Example> featurize_records(const KmerFeaturizer& f, std::span<const LabeledRecord> rs) {
  std::vector<Example> out;
  out.reserve(rs.size());
  for (const auto& r : rs) out.push_back({f.featurize(r.seq), r.label});
  return out;
}

double example_accuracy(const LinearKmerModel& model, std::span<const Example> examples) {
  std::size_t correct = 0;
  std::vector<double> p(model.n_classes());
  for (const auto& ex : examples) {
    model.probabilities(ex.features, p);
    correct += argmax(p) == ex.label;
  }
  return static_cast<double>(correct) / static_cast<double>(examples.size());
}

}  // namespace

void AdvTrainConfig::validate() const {
  base.validate();
  attack.validate();
  KmerFeaturizer check(k);
  if (!(mix_ratio > 0.0 && mix_ratio <= 4.0)) throw InvalidArgument("mix_ratio must lie in (0,4]");
}

std::vector<std::size_t> adversarial_sources(std::size_t n, double mix_ratio, std::uint64_t seed) {
  const auto total = static_cast<std::size_t>(std::floor(mix_ratio * static_cast<double>(n) + 1e-9));
  std::vector<std::size_t> out;
  out.reserve(total);
  while (out.size() + n <= total)
    for (std::size_t i = 0; i < n; ++i) out.push_back(i);
  const std::size_t rest = total - out.size();
  if (rest > 0) {
    std::vector<std::size_t> all(n);
    std::iota(all.begin(), all.end(), std::size_t{0});
    Rng rng(derive_seed(seed, kSourceStream));
    std::sample(all.begin(), all.end(), std::back_inserter(out), rest, rng);
  }
  return out;
}

AdversarialTrainingResult adversarial_train(const LabeledDataset& ds, const AdvTrainConfig& cfg) {
  cfg.validate();
  if (ds.empty()) throw InvalidArgument("adversarial training needs a nonempty dataset");

  const KmerFeaturizer featurizer(cfg.k);
  const auto clean = featurize_dataset(featurizer, ds);
  const auto sources = adversarial_sources(ds.size(), cfg.mix_ratio, cfg.attack.seed);

  std::vector<LabeledRecord> adversarial;
  std::vector<Example> mixture;
  auto rebuild_mixture = [&] {
    mixture = clean;
    const auto adv = featurize_records(featurizer, adversarial);
    mixture.insert(mixture.end(), adv.begin(), adv.end());
  };

  if (!cfg.regenerate) {
    const LinearKmerModel reference = train(ds, cfg.k, cfg.base);
    adversarial = make_adversarial(reference, ds, sources, cfg, 0);
    rebuild_mixture();
  }

  AdversarialTrainingResult result{LinearKmerModel(cfg.k, ds.classes()), {}, {}};
  LinearKmerModel& model = result.model;
  Rng shuffle_rng(cfg.base.seed);
  for (std::size_t epoch = 1; epoch <= cfg.base.epochs; ++epoch) {
    if (cfg.regenerate) {
      adversarial = make_adversarial(model, ds, sources, cfg, epoch);
      rebuild_mixture();
    }
    train_epoch(model, mixture, cfg.base, shuffle_rng);
    model.epoch_losses().push_back(objective(model, mixture, cfg.base.l2));

    const std::span<const Example> adv_part = std::span<const Example>(mixture).subspan(clean.size());
    EpochLog entry;
    entry.epoch = epoch;
    entry.clean_loss = objective(model, clean, cfg.base.l2);
    entry.adv_loss = adv_part.empty() ? 0.0 : objective(model, adv_part, cfg.base.l2);
    entry.clean_acc = example_accuracy(model, clean);
    result.log.push_back(entry);
  }
  result.last_adversarial = std::move(adversarial);
  return result;
}

std::string training_log_csv(const std::vector<EpochLog>& log) {
  std::string out = "epoch,clean_loss,adv_loss,clean_acc\n";
  for (const auto& e : log)
    out += std::to_string(e.epoch) + ',' + format_fixed6(e.clean_loss) + ',' +
           format_fixed6(e.adv_loss) + ',' + format_fixed6(e.clean_acc) + '\n';
  return out;
}

void write_training_log(const std::vector<EpochLog>& log, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write training log '" + path.string() + "'");
  out << training_log_csv(log);
}

}  // namespace dnaadv
