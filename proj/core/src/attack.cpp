#include "dnaadv/attack.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <set>

#include "dnaadv/errors.hpp"
#include "dnaadv/genetic_code.hpp"
#include "dnaadv/rng.hpp"

namespace dnaadv {
namespace {

// Substitution units of a sequence: unit u spans [offset + u * width, ... + width).
struct UnitLayout {
  std::size_t offset = 0;
  std::size_t width = 1;
  std::size_t count = 0;

  std::size_t start(std::size_t unit) const noexcept { return offset + unit * width; }
};

// Replacements for a unit's current content, in alphabetical order.
std::vector<std::string> alternatives(std::string_view current) {
  std::vector<std::string> out;
  if (current.size() == 1) {
    for (char b : kBases)
      if (b != current[0]) out.emplace_back(1, b);
  } else {
    for (std::size_t i = 0; i < Codon::kCount; ++i) {
      const Codon c = Codon::from_index(i);
      if (c.view() != current) out.push_back(c.str());
    }
  }
  return out;
}

// Mutable state shared by all three searches.
class Search {
 public:
  Search(ClassifierOracle& oracle, const DnaSequence& seq, std::size_t true_label,
         const AttackConfig& cfg)
      : oracle_(oracle), cfg_(cfg), outcome_(seq) {
    outcome_.true_label = true_label;
    if (true_label >= oracle.n_classes())
      throw InvalidArgument("true label " + std::to_string(true_label) + " out of range");
    const auto probs = query_one(seq);
    outcome_.original_prediction = argmax(probs);
    outcome_.final_prediction = outcome_.original_prediction;
    outcome_.original_true_prob = probs[true_label];
    outcome_.final_true_prob = probs[true_label];
    score_ = true_class_log_odds(probs, true_label);
  }

  bool fooled() const noexcept { return outcome_.final_prediction != outcome_.true_label; }
  std::size_t remaining_queries() const noexcept {
    return outcome_.queries >= cfg_.max_queries ? 0 : cfg_.max_queries - outcome_.queries;
  }
  const DnaSequence& current() const noexcept { return outcome_.adversarial; }
  // Search objective: the true-class log-odds, which orders candidates exactly as the
  // true-class probability does.
  double current_score() const noexcept { return score_; }

  std::vector<ClassProbabilities> query(std::span<const DnaSequence> batch) {
    outcome_.queries += batch.size();
    return oracle_.predict_proba(batch);
  }

  // Index of the first strict minimiser of the objective over `variants`.
  struct Best {
    std::size_t index = 0;
    double score = 0.0;
    ClassProbabilities probs;
  };
  Best best_of(std::span<const DnaSequence> variants) {
    auto answers = query(variants);
    std::size_t best = 0;
    double best_score = true_class_log_odds(answers[0], outcome_.true_label);
    for (std::size_t i = 1; i < answers.size(); ++i) {
      const double s = true_class_log_odds(answers[i], outcome_.true_label);
      if (s < best_score) {
        best = i;
        best_score = s;
      }
    }
    return {best, best_score, std::move(answers[best])};
  }

  void accept(std::size_t position, std::string_view after, const Best& best) {
    const ClassProbabilities& probs = best.probs;
    score_ = best.score;
    Edit e;
    e.position = position;
    e.before = std::string(outcome_.adversarial.view().substr(position, after.size()));
    e.after = std::string(after);
    e.true_prob_after = probs[outcome_.true_label];
    outcome_.adversarial = outcome_.adversarial.with_replacement(position, after);
    outcome_.final_prediction = argmax(probs);
    outcome_.final_true_prob = e.true_prob_after;
    outcome_.edits.push_back(std::move(e));
  }

  void begin_round() { ++outcome_.iterations_run; }

  AttackOutcome finish() && {
    outcome_.success = outcome_.original_prediction == outcome_.true_label &&
                       outcome_.final_prediction != outcome_.true_label;
    return std::move(outcome_);
  }

 private:
  ClassProbabilities query_one(const DnaSequence& seq) {
    ++outcome_.queries;
    return oracle_.predict_proba(seq);
  }

  ClassifierOracle& oracle_;
  const AttackConfig& cfg_;
  AttackOutcome outcome_;
  double score_ = 0.0;
};

AttackOutcome greedy_substitution(ClassifierOracle& oracle, const DnaSequence& seq,
                                  std::size_t true_label, const AttackConfig& cfg,
                                  const UnitLayout& layout) {
  cfg.validate();
  Search search(oracle, seq, true_label, cfg);
  Rng rng(cfg.seed);
  const std::size_t budget = edit_budget(cfg.epsilon, layout.count);
  std::set<std::size_t> edited;
  std::vector<std::size_t> eligible;
  std::vector<std::size_t> units;
  std::vector<DnaSequence> variants;
  std::vector<std::pair<std::size_t, std::string>> moves;

  for (std::size_t round = 0; round < cfg.iterations; ++round) {
    if (search.fooled() || budget == 0 || search.remaining_queries() == 0) break;
    search.begin_round();

    eligible.clear();
    if (edited.size() < budget) {
      for (std::size_t u = 0; u < layout.count; ++u) eligible.push_back(u);
    } else {
      eligible.assign(edited.begin(), edited.end());
    }
    const bool sampled = cfg.candidate_sample > 0 && cfg.candidate_sample < eligible.size();
    if (sampled) {
      units.clear();
      std::sample(eligible.begin(), eligible.end(), std::back_inserter(units),
                  cfg.candidate_sample, rng);
    } else {
      units = eligible;
    }

    moves.clear();
    variants.clear();
    const std::size_t cap = search.remaining_queries();
    bool truncated = false;
    for (std::size_t u : units) {
      const std::size_t pos = layout.start(u);
      for (auto& alt : alternatives(search.current().view().substr(pos, layout.width))) {
        if (variants.size() == cap) {
          truncated = true;
          break;
        }
        variants.push_back(search.current().with_replacement(pos, alt));
        moves.emplace_back(u, std::move(alt));
      }
      if (truncated) break;
    }
    if (variants.empty()) break;

    auto best = search.best_of(variants);
    if (best.score < search.current_score()) {
      const auto& [unit, replacement] = moves[best.index];
      search.accept(layout.start(unit), replacement, best);
      edited.insert(unit);
    } else if (!sampled && !truncated) {
      break;  // converged: every eligible candidate was tried
    }
    if (truncated) break;
  }
  return std::move(search).finish();
}

UnitLayout codon_layout(const DnaSequence& seq, int frame) {
  if (frame < 0 || frame > 2) throw InvalidArgument("reading frame must be 0, 1 or 2");
  const auto f = static_cast<std::size_t>(frame);
  const std::size_t n = seq.size() > f ? (seq.size() - f) / 3 : 0;
  if (n == 0) throw NoCodons();
  return {f, 3, n};
}

AttackOutcome greedy_backtranslation(ClassifierOracle& oracle, const DnaSequence& seq,
                                     std::size_t true_label, const AttackConfig& cfg,
                                     const UnitLayout& layout) {
  Search search(oracle, seq, true_label, cfg);
  Rng rng(cfg.seed);
  std::vector<std::size_t> order(layout.count);
  std::vector<DnaSequence> variants;
  std::vector<Codon> options;

  for (std::size_t round = 0; round < cfg.iterations; ++round) {
    if (search.fooled() || search.remaining_queries() == 0) break;
    search.begin_round();
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::shuffle(order.begin(), order.end(), rng);

    bool improved = false;
    bool stop = false;
    for (std::size_t u : order) {
      const std::size_t pos = layout.start(u);
      const Codon current(search.current().view().substr(pos, 3));
      options.clear();
      for (const Codon& c : synonymous_codons(current))
        if (c != current) options.push_back(c);
      if (options.empty()) continue;

      const std::size_t cap = search.remaining_queries();
      if (cap == 0) {
        stop = true;
        break;
      }
      const bool truncated = options.size() > cap;
      if (truncated) options.erase(options.begin() + static_cast<std::ptrdiff_t>(cap), options.end());
      variants.clear();
      for (const Codon& c : options) variants.push_back(search.current().with_replacement(pos, c.view()));

      auto best = search.best_of(variants);
      if (best.score < search.current_score()) {
        search.accept(pos, options[best.index].view(), best);
        improved = true;
      }
      if (search.fooled() || truncated) {
        stop = true;
        break;
      }
    }
    if (stop || !improved) break;  // a silent round would repeat identically
  }
  return std::move(search).finish();
}

AttackOutcome resampling_backtranslation(ClassifierOracle& oracle, const DnaSequence& seq,
                                         std::size_t true_label, const AttackConfig& cfg,
                                         const UnitLayout& layout) {
  Search search(oracle, seq, true_label, cfg);
  Rng rng(cfg.seed);
  for (std::size_t round = 0; round < cfg.iterations; ++round) {
    if (search.fooled() || search.remaining_queries() == 0) break;
    search.begin_round();
    std::string proposal = search.current().str();
    for (std::size_t u = 0; u < layout.count; ++u) {
      const std::size_t pos = layout.start(u);
      const auto family = synonymous_codons(Codon(std::string_view(proposal).substr(pos, 3)));
      const auto pick = std::uniform_int_distribution<std::size_t>(0, family.size() - 1)(rng);
      proposal.replace(pos, 3, family[pick].view());
    }
    const std::string_view now = search.current().view();
    const auto first = std::mismatch(now.begin(), now.end(), proposal.begin()).first - now.begin();
    if (static_cast<std::size_t>(first) == now.size()) continue;
    const auto last = now.size() - static_cast<std::size_t>(
        std::mismatch(now.rbegin(), now.rend(), proposal.rbegin()).first - now.rbegin());
    const DnaSequence candidate(proposal);
    auto best = search.best_of(std::span<const DnaSequence>(&candidate, 1));
    if (best.score < search.current_score()) {
      const auto start = static_cast<std::size_t>(first);
      search.accept(start, std::string_view(proposal).substr(start, last - start), best);
    }
  }
  return std::move(search).finish();
}

}  // namespace

std::string_view to_string(AttackKind kind) noexcept {
  switch (kind) {
    case AttackKind::Nucleotide: return "nucleotide";
    case AttackKind::Codon: return "codon";
    case AttackKind::Backtranslation: return "backtranslation";
  }
  return "unknown";
}

AttackKind parse_attack_kind(std::string_view name) {
  for (auto k : {AttackKind::Nucleotide, AttackKind::Codon, AttackKind::Backtranslation})
    if (to_string(k) == name) return k;
  throw InvalidArgument("unknown attack kind '" + std::string(name) + "'");
}

std::string_view to_string(BacktranslationMode mode) noexcept {
  return mode == BacktranslationMode::Greedy ? "greedy" : "random_resample";
}

BacktranslationMode parse_backtranslation_mode(std::string_view name) {
  if (name == "greedy") return BacktranslationMode::Greedy;
  if (name == "random_resample") return BacktranslationMode::RandomResample;
  throw InvalidArgument("unknown backtranslation mode '" + std::string(name) + "'");
}

void AttackConfig::validate() const {
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) throw InvalidArgument("epsilon must lie in [0,1]");
  if (iterations < 1) throw InvalidArgument("iterations must be at least 1");
  if (max_queries < 1) throw InvalidArgument("max_queries must be at least 1");
  if (frame < 0 || frame > 2) throw InvalidArgument("reading frame must be 0, 1 or 2");
}

std::size_t edit_budget(double epsilon, std::size_t units) noexcept {
  return static_cast<std::size_t>(std::floor(epsilon * static_cast<double>(units) + 1e-9));
}

DnaSequence replay_edits(const DnaSequence& original, std::span<const Edit> edits) {
  DnaSequence seq = original;
  for (const auto& e : edits) {
    if (e.before.size() != e.after.size() || e.position + e.before.size() > seq.size() ||
        seq.view().substr(e.position, e.before.size()) != e.before)
      throw InvalidArgument("edit does not apply at position " + std::to_string(e.position));
    seq = seq.with_replacement(e.position, e.after);
  }
  return seq;
}

AttackOutcome nucleotide_attack(ClassifierOracle& oracle, const DnaSequence& seq,
                                std::size_t true_label, const AttackConfig& cfg) {
  return greedy_substitution(oracle, seq, true_label, cfg, UnitLayout{0, 1, seq.size()});
}

AttackOutcome codon_attack(ClassifierOracle& oracle, const DnaSequence& seq,
                           std::size_t true_label, const AttackConfig& cfg) {
  cfg.validate();
  return greedy_substitution(oracle, seq, true_label, cfg, codon_layout(seq, cfg.frame));
}

AttackOutcome backtranslation_attack(ClassifierOracle& oracle, const DnaSequence& seq,
                                     std::size_t true_label, const AttackConfig& cfg) {
  cfg.validate();
  const auto layout = codon_layout(seq, cfg.frame);
  return cfg.backtranslation_mode == BacktranslationMode::Greedy
             ? greedy_backtranslation(oracle, seq, true_label, cfg, layout)
             : resampling_backtranslation(oracle, seq, true_label, cfg, layout);
}

AttackOutcome run_attack(AttackKind kind, ClassifierOracle& oracle, const DnaSequence& seq,
                         std::size_t true_label, const AttackConfig& cfg) {
  switch (kind) {
    case AttackKind::Nucleotide: return nucleotide_attack(oracle, seq, true_label, cfg);
    case AttackKind::Codon: return codon_attack(oracle, seq, true_label, cfg);
    case AttackKind::Backtranslation: return backtranslation_attack(oracle, seq, true_label, cfg);
  }
  throw InvalidArgument("unknown attack kind");
}

SingleEditResult brute_force_best_single_edit(ClassifierOracle& oracle, const DnaSequence& seq,
                                              std::size_t true_label, EditUnit unit,
                                              int frame) {
  if (seq.size() > kBruteForceMaxLength) throw SequenceTooLong(seq.size(), kBruteForceMaxLength);
  if (true_label >= oracle.n_classes()) throw InvalidArgument("true label out of range");

  std::size_t offset = 0;
  std::size_t width = 1;
  std::size_t units = seq.size();
  if (unit == EditUnit::Codon) {
    const auto split = codons_of(seq, frame);
    if (split.codons.empty()) throw NoCodons();
    offset = split.prefix.size();
    width = 3;
    units = split.codons.size();
  }

  std::optional<SingleEditResult> best;
  double best_score = 0.0;
  std::size_t queried = 0;
  for (std::size_t u = 0; u < units; ++u) {
    const std::size_t pos = offset + u * width;
    const std::size_t n_words = width == 1 ? 4 : Codon::kCount;
    for (std::size_t w = 0; w < n_words; ++w) {
      const std::string word = width == 1 ? std::string(1, kBases[w]) : Codon::from_index(w).str();
      if (seq.view().substr(pos, width) == word) continue;
      DnaSequence variant = seq.with_replacement(pos, word);
      const auto probs = oracle.predict_proba(variant);
      const double score = true_class_log_odds(probs, true_label);
      ++queried;
      if (!best || score < best_score) {
        best = SingleEditResult{std::move(variant), probs[true_label], pos, 0};
        best_score = score;
      }
    }
  }
  best->variants_queried = queried;
  return std::move(*best);
}

}  // namespace dnaadv
