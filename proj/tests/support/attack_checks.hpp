#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "dnaadv/attack.hpp"
#include "dnaadv/genetic_code.hpp"
#include "dnaadv/kmer_model.hpp"
#include "dnaadv/oracle.hpp"
#include "dnaadv/rng.hpp"
#include "toy_oracles.hpp"

namespace dnaadv::testing {

inline DnaSequence random_dna(Rng& rng, std::size_t len) {
  std::string s(len, 'A');
  for (char& c : s) c = "ACGT"[std::uniform_int_distribution<int>(0, 3)(rng)];
  return DnaSequence(s);
}

/// k-mer model with N(0, scale) weights and biases.
inline LinearKmerModel random_model(std::uint64_t seed, int k, std::size_t n_classes,
                                    double scale = 1.0) {
  Rng rng(seed);
  std::vector<std::string> names;
  for (std::size_t c = 0; c < n_classes; ++c) names.push_back("c" + std::to_string(c));
  LinearKmerModel m(k, names);
  std::normal_distribution<double> normal(0.0, scale);
  for (double& w : m.weights()) w = normal(rng);
  for (double& b : m.bias()) b = normal(rng);
  return m;
}

/// Two-class oracle whose score only counts G and C, so most candidates tie.
inline std::unique_ptr<ClassifierOracle> tie_heavy_oracle() {
  return std::make_unique<ScoreOracle>([](const DnaSequence& s) {
    double gc = 0;
    for (char c : s.view()) gc += (c == 'G' || c == 'C');
    return 0.3 * gc - 0.15 * static_cast<double>(s.size());
  });
}

inline double log_odds_of(ClassifierOracle& oracle, const DnaSequence& seq, std::size_t label) {
  return true_class_log_odds(oracle.predict_proba(seq), label);
}

/// Compares the first greedy step (all candidates, one round, ample budget) with the
/// exhaustive single-edit minimiser. Returns a description of the first mismatch.
inline std::optional<std::string> first_step_mismatch(ClassifierOracle& oracle,
                                                      const DnaSequence& seq, std::size_t label,
                                                      EditUnit unit, int frame = 0) {
  const auto brute = brute_force_best_single_edit(oracle, seq, label, unit, frame);
  AttackConfig cfg;
  cfg.epsilon = 1.0;
  cfg.iterations = 1;
  cfg.max_queries = 1'000'000;
  cfg.candidate_sample = 0;
  cfg.frame = frame;
  const auto kind = unit == EditUnit::Nucleotide ? AttackKind::Nucleotide : AttackKind::Codon;
  const auto out = run_attack(kind, oracle, seq, label, cfg);
  const bool original_correct = argmax(oracle.predict_proba(seq)) == label;
  const bool improves = log_odds_of(oracle, brute.variant, label) < log_odds_of(oracle, seq, label);
  std::ostringstream why;
  if (!original_correct) {
    if (!out.edits.empty()) why << "edited an already misclassified input";
  } else if (improves) {
    if (out.edits.size() != 1 || out.adversarial != brute.variant)
      why << "greedy chose " << out.adversarial.str() << ", brute force " << brute.variant.str();
  } else if (!out.edits.empty()) {
    why << "greedy edited although no candidate improves";
  }
  if (why.str().empty()) return std::nullopt;
  return seq.str() + ": " + why.str();
}

struct FuzzReport {
  std::size_t trials = 0;
  std::size_t failures = 0;
  std::string first_failure;
};

/// Budget, length, alphabet, alignment, translation and replay checks over random
/// (sequence, epsilon, seed) triples against a fixed random 3-mer model.
inline FuzzReport budget_closure_fuzz(AttackKind kind, std::size_t trials, std::uint64_t seed) {
  ModelOracle oracle(random_model(seed, 3, 2, 0.5));
  Rng rng(seed);
  FuzzReport report;
  for (std::size_t t = 0; t < trials; ++t) {
    const std::size_t len = std::uniform_int_distribution<std::size_t>(12, 90)(rng);
    const DnaSequence seq = random_dna(rng, len);
    AttackConfig cfg;
    cfg.epsilon = 0.1 * static_cast<double>(std::uniform_int_distribution<int>(1, 5)(rng));
    cfg.seed = rng();
    cfg.iterations = std::uniform_int_distribution<std::size_t>(1, 25)(rng);
    cfg.candidate_sample = std::uniform_int_distribution<std::size_t>(0, 4)(rng);
    cfg.max_queries = 5000;
    cfg.frame = std::uniform_int_distribution<int>(0, 2)(rng);
    const std::size_t label = std::uniform_int_distribution<std::size_t>(0, 1)(rng);
    const auto out = run_attack(kind, oracle, seq, label, cfg);

    std::ostringstream why;
    const auto& adv = out.adversarial;
    if (adv.size() != seq.size()) why << "length changed; ";
    for (char c : adv.view())
      if (c != 'A' && c != 'C' && c != 'G' && c != 'T') why << "symbol " << c << "; ";
    if (replay_edits(seq, out.edits) != adv) why << "replay differs; ";
    if (out.queries > cfg.max_queries) why << "query cap exceeded; ";

    const auto f = static_cast<std::size_t>(cfg.frame);
    const std::size_t n_codons = (len - f) / 3;
    std::set<std::size_t> units;
    for (const auto& e : out.edits) {
      if (kind == AttackKind::Nucleotide) {
        units.insert(e.position);
      } else {
        if (e.position < f || (e.position - f) % 3 != 0 ||
            e.position + e.after.size() > f + 3 * n_codons)
          why << "misaligned edit at " << e.position << "; ";
        for (std::size_t p = e.position; p < e.position + e.after.size(); p += 3)
          units.insert((p - f) / 3);
      }
    }
    if (kind == AttackKind::Nucleotide && units.size() > edit_budget(cfg.epsilon, len))
      why << units.size() << " positions edited, budget " << edit_budget(cfg.epsilon, len) << "; ";
    if (kind == AttackKind::Codon && units.size() > edit_budget(cfg.epsilon, n_codons))
      why << units.size() << " codons edited, budget " << edit_budget(cfg.epsilon, n_codons) << "; ";
    if (kind != AttackKind::Nucleotide) {
      if (adv.view().substr(0, f) != seq.view().substr(0, f) ||
          adv.view().substr(f + 3 * n_codons) != seq.view().substr(f + 3 * n_codons))
        why << "prefix or tail touched; ";
    }
    if (kind == AttackKind::Backtranslation &&
        translate(adv, cfg.frame) != translate(seq, cfg.frame))
      why << "translation changed; ";

    ++report.trials;
    if (!why.str().empty()) {
      if (report.failures++ == 0) report.first_failure = seq.str() + ": " + why.str();
    }
  }
  return report;
}

/// Per-codon additive score. Because codons contribute independently, one greedy
/// synonym round reaches the exhaustive optimum over all synonym combinations.
struct AdditiveCodonScore {
  std::vector<double> table;  // 64 entries, by codon index

  explicit AdditiveCodonScore(std::uint64_t seed) : table(Codon::kCount) {
    Rng rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (double& v : table) v = u(rng);
  }
  double operator()(const DnaSequence& s) const {
    double total = -40.0;  // keeps class 0 predicted throughout
    for (std::size_t p = 0; p + 3 <= s.size(); p += 3) total += table[Codon(s.view().substr(p, 3)).index()];
    return total;
  }
};

/// Lowest class-0 log-odds over every synonymous rewrite of `seq` (frame 0).
inline double exhaustive_synonym_minimum(const DnaSequence& seq, const AdditiveCodonScore& score) {
  const auto split = codons_of(seq, 0);
  std::vector<std::vector<Codon>> families;
  for (const auto& c : split.codons) families.push_back(synonymous_codons(c));
  std::vector<std::size_t> pick(families.size(), 0);
  double best = std::numeric_limits<double>::infinity();
  while (true) {
    std::string s;
    for (std::size_t i = 0; i < families.size(); ++i) s += families[i][pick[i]].str();
    s += split.tail;
    const double p1 = 1.0 / (1.0 + std::exp(-score(DnaSequence(s))));
    best = std::min(best, true_class_log_odds(std::vector<double>{1.0 - p1, p1}, 0));
    std::size_t i = 0;
    while (i < pick.size() && ++pick[i] == families[i].size()) pick[i++] = 0;
    if (i == pick.size()) break;
  }
  return best;
}

}  // namespace dnaadv::testing
