#include "dnaadv/synthetic.hpp"

#include <cstdio>
#include <random>

#include "dnaadv/errors.hpp"
#include "dnaadv/rng.hpp"

namespace dnaadv {
namespace {

constexpr std::size_t kMaxRedraws = 10000;

std::string class_name(std::size_t k, std::size_t n_classes) {
  const int width = static_cast<int>(std::to_string(n_classes - 1).size());
  char buf[32];
  std::snprintf(buf, sizeof buf, "class%0*zu", width, k);
  return buf;
}

char draw_background(Rng& rng, double gc) {
  const double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
  if (u < gc / 2) return 'G';
  if (u < gc) return 'C';
  if (u < gc + (1.0 - gc) / 2) return 'A';
  return 'T';
}

}  // namespace

void SyntheticSpec::validate() const {
  if (n_classes < 2) throw InvalidArgument("n_classes must be at least 2");
  if (seq_len == 0) throw InvalidArgument("seq_len must be positive");
  if (samples_per_class == 0) throw InvalidArgument("samples_per_class must be positive");
  if (!(background_gc >= 0.0 && background_gc <= 1.0))
    throw InvalidArgument("background_gc must lie in [0,1]");
  if (motifs_per_class.size() > n_classes)
    throw InvalidArgument("motifs_per_class has more entries than classes");
  for (const auto& motifs : motifs_per_class) {
    for (const auto& m : motifs) {
      const DnaSequence checked(m.motif);  // alphabet check
      if (checked.view() != m.motif) throw InvalidArgument("motifs must be uppercase");
      if (m.motif.size() >= seq_len)
        throw MotifTooLong("motif '" + m.motif + "' is not shorter than seq_len");
      if (!(m.probability >= 0.0 && m.probability <= 1.0))
        throw InvalidArgument("plant probability must lie in [0,1]");
    }
  }
}

SyntheticSpec SyntheticSpec::benchmark() {
  SyntheticSpec spec;
  // Class 1 carries twenty copies of a purine-rich hexamer; class 0 is pure background.
  spec.motifs_per_class = {{}, std::vector<PlantedMotif>(20, PlantedMotif{"AGGAGG", 1.0})};
  spec.samples_per_class = 200;
  return spec;
}

LabeledDataset generate_synthetic(const SyntheticSpec& spec) {
  spec.validate();
  Rng rng(spec.seed);
  std::bernoulli_distribution coin;

  std::vector<std::string> classes;
  for (std::size_t k = 0; k < spec.n_classes; ++k) classes.push_back(class_name(k, spec.n_classes));

  std::vector<LabeledRecord> records;
  records.reserve(spec.n_classes * spec.samples_per_class);
  std::string bases(spec.seq_len, 'A');
  std::vector<bool> occupied(spec.seq_len);
  std::vector<std::size_t> starts;

  // Motifs planted for some other class but never for k. A class-k record that shows one
  // by chance is redrawn so that motif presence identifies the class exactly.
  std::vector<std::vector<std::string>> foreign(spec.n_classes);
  for (std::size_t k = 0; k < spec.n_classes; ++k)
    for (std::size_t other = 0; other < spec.motifs_per_class.size(); ++other)
      for (const auto& m : spec.motifs_per_class[other]) {
        bool own = false;
        if (k < spec.motifs_per_class.size())
          for (const auto& mine : spec.motifs_per_class[k]) own = own || mine.motif == m.motif;
        if (!own && m.probability > 0.0) foreign[k].push_back(m.motif);
      }

  auto draw_record = [&](std::size_t k) {
    for (char& b : bases) b = draw_background(rng, spec.background_gc);
    std::fill(occupied.begin(), occupied.end(), false);
    if (k >= spec.motifs_per_class.size()) return;
    for (const auto& m : spec.motifs_per_class[k]) {
      if (!coin(rng, std::bernoulli_distribution::param_type(m.probability))) continue;
      starts.clear();
      for (std::size_t s = 0; s + m.motif.size() <= spec.seq_len; ++s) {
        bool free = true;
        for (std::size_t j = 0; j < m.motif.size() && free; ++j) free = !occupied[s + j];
        if (free) starts.push_back(s);
      }
      if (starts.empty()) continue;
      const std::size_t s =
          starts[std::uniform_int_distribution<std::size_t>(0, starts.size() - 1)(rng)];
      for (std::size_t j = 0; j < m.motif.size(); ++j) {
        bases[s + j] = m.motif[j];
        occupied[s + j] = true;
      }
    }
  };
  auto has_foreign = [&](std::size_t k) {
    for (const auto& m : foreign[k])
      if (bases.find(m) != std::string::npos) return true;
    return false;
  };

  for (std::size_t i = 0; i < spec.samples_per_class; ++i) {
    for (std::size_t k = 0; k < spec.n_classes; ++k) {
      std::size_t attempts = 0;
      do {
        if (++attempts > kMaxRedraws)
          throw InvalidArgument("cannot draw a " + classes[k] +
                                " record free of other classes' motifs");
        draw_record(k);
      } while (has_foreign(k));
      char id[64];
      std::snprintf(id, sizeof id, "%s_%05zu", classes[k].c_str(), i);
      records.push_back({id, DnaSequence(bases), k});
    }
  }
  return LabeledDataset(std::move(records), std::move(classes));
}

}  // namespace dnaadv
