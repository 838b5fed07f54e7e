#include "dnaadv/noise.hpp"

#include <random>

#include "dnaadv/errors.hpp"
#include "dnaadv/rng.hpp"

namespace dnaadv {

void ErrorModel::validate() const {
  for (double r : {sub_rate, ins_rate, del_rate})
    if (!(r >= 0.0 && r <= 0.5)) throw InvalidArgument("error rates must lie in [0, 0.5]");
  if (sub_rate + ins_rate + del_rate > 1.0) throw InvalidArgument("error rates sum above 1");
}

DnaSequence corrupt(const DnaSequence& seq, const ErrorModel& em) {
  em.validate();
  Rng rng(em.seed);
  std::uniform_real_distribution<double> event(0.0, 1.0);
  std::uniform_int_distribution<int> base(0, 3);
  std::uniform_int_distribution<int> other(1, 3);

  std::string out;
  out.reserve(seq.size() + seq.size() / 8);
  for (char c : seq.view()) {
    const double u = event(rng);
    if (u < em.sub_rate) {
      out.push_back(kBases[static_cast<std::size_t>((base_index(c) + other(rng)) % 4)]);
    } else if (u < em.sub_rate + em.del_rate) {
      continue;
    } else if (u < em.sub_rate + em.del_rate + em.ins_rate) {
      out.push_back(kBases[static_cast<std::size_t>(base(rng))]);
      out.push_back(c);
    } else {
      out.push_back(c);
    }
  }
  if (out.empty()) throw EmptyResult();
  return DnaSequence(out);
}

NoiseEvaluation evaluate_under_noise(ClassifierOracle& oracle, const LabeledDataset& test_set,
                                     const ErrorModel& em) {
  em.validate();
  if (test_set.empty()) throw InvalidArgument("noise evaluation needs a nonempty test set");
  std::vector<DnaSequence> clean, noisy;
  clean.reserve(test_set.size());
  noisy.reserve(test_set.size());
  double length_change = 0.0;
  for (const auto& r : test_set.records()) {
    ErrorModel own = em;
    own.seed = derive_seed(em.seed, r.id);
    clean.push_back(r.seq);
    noisy.push_back(corrupt(r.seq, own));
    length_change += static_cast<double>(noisy.back().size()) - static_cast<double>(r.seq.size());
  }
  const auto p_clean = oracle.predict_proba(clean);
  const auto p_noisy = oracle.predict_proba(noisy);
  std::size_t hit_clean = 0, hit_noisy = 0;
  for (std::size_t i = 0; i < test_set.size(); ++i) {
    hit_clean += argmax(p_clean[i]) == test_set[i].label;
    hit_noisy += argmax(p_noisy[i]) == test_set[i].label;
  }
  const double n = static_cast<double>(test_set.size());
  return {hit_clean / n, hit_noisy / n, test_set.size(), length_change / n};
}

}  // namespace dnaadv
