#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dnaadv/oracle.hpp"
#include "dnaadv/sequence.hpp"

namespace dnaadv {

enum class AttackKind { Nucleotide, Codon, Backtranslation };

std::string_view to_string(AttackKind kind) noexcept;
/// Accepts "nucleotide", "codon", "backtranslation". Throws InvalidArgument.
AttackKind parse_attack_kind(std::string_view name);

enum class BacktranslationMode {
  Greedy,          ///< per codon, the best strictly-improving synonym
  RandomResample,  ///< per round, resample every codon uniformly; keep if improved
};

std::string_view to_string(BacktranslationMode mode) noexcept;
BacktranslationMode parse_backtranslation_mode(std::string_view name);

struct AttackConfig {
  double epsilon = 0.1;             ///< fraction of units that may differ, in [0,1]
  std::size_t iterations = 10;      ///< search rounds
  std::size_t max_queries = 5000;   ///< oracle calls per sample, initial prediction included
  std::size_t candidate_sample = 0; ///< units examined per round, 0 = all
  std::uint64_t seed = 13;
  int frame = 0;                    ///< reading frame for codon-level attacks
  BacktranslationMode backtranslation_mode = BacktranslationMode::Greedy;

  void validate() const;
};

/// floor(epsilon * units), robust to products that land just under an integer.
std::size_t edit_budget(double epsilon, std::size_t units) noexcept;

/// Replacement of `before` by `after` at nucleotide offset `position`.
struct Edit {
  std::size_t position = 0;
  std::string before;
  std::string after;
  double true_prob_after = 0.0;  ///< true-class probability once this edit is applied

  friend bool operator==(const Edit&, const Edit&) = default;
};

struct AttackOutcome {
  explicit AttackOutcome(const DnaSequence& seq) : original(seq), adversarial(seq) {}

  DnaSequence original;
  DnaSequence adversarial;
  std::size_t true_label = 0;
  std::size_t original_prediction = 0;
  std::size_t final_prediction = 0;
  bool success = false;  ///< initially correct and finally wrong
  std::uint64_t queries = 0;
  std::size_t iterations_run = 0;
  std::vector<Edit> edits;
  double original_true_prob = 0.0;
  double final_true_prob = 0.0;

  friend bool operator==(const AttackOutcome&, const AttackOutcome&) = default;
};

/// Applies `edits` in order. Throws InvalidArgument if an edit's `before` does not match.
DnaSequence replay_edits(const DnaSequence& original, std::span<const Edit> edits);

/// Greedy best-improvement single-base substitution search. Each round enumerates
/// (position, base) candidates in position then A<C<G<T order, queries them all and
/// applies the one with the lowest true-class probability if it is strictly lower than
/// the current one. Probabilities are compared through true_class_log_odds, which orders
/// them identically without rounding to 1. With candidate_sample > 0 a round looks at
/// that many seeded random positions instead. At most edit_budget(epsilon, L) distinct
/// positions are ever edited; once that many are, only they stay eligible.
/// Stops on misclassification, on a full round without improvement, or at max_queries
/// (a round cut short by the cap still applies its best candidate so far).
AttackOutcome nucleotide_attack(ClassifierOracle& oracle, const DnaSequence& seq,
                                std::size_t true_label, const AttackConfig& cfg);

/// As nucleotide_attack over the codons of cfg.frame, replacing a whole codon with any of
/// the 63 others. Prefix and tail bases are never touched. Throws NoCodons.
AttackOutcome codon_attack(ClassifierOracle& oracle, const DnaSequence& seq,
                           std::size_t true_label, const AttackConfig& cfg);

/// Synonymous-codon search: translate(adversarial, frame) always equals
/// translate(original, frame). epsilon and candidate_sample are ignored. Throws NoCodons.
AttackOutcome backtranslation_attack(ClassifierOracle& oracle, const DnaSequence& seq,
                                     std::size_t true_label, const AttackConfig& cfg);

AttackOutcome run_attack(AttackKind kind, ClassifierOracle& oracle, const DnaSequence& seq,
                         std::size_t true_label, const AttackConfig& cfg);

enum class EditUnit { Nucleotide, Codon };

struct SingleEditResult {
  DnaSequence variant;
  double true_prob = 0.0;
  std::size_t position = 0;  ///< nucleotide offset of the edited unit
  std::size_t variants_queried = 0;
};

inline constexpr std::size_t kBruteForceMaxLength = 64;

/// Exhaustive minimiser of the true-class probability (compared as log-odds) over every
/// single-unit substitution. Ties go to the lowest position, then the alphabetically first
/// replacement. Throws SequenceTooLong above 64 nt and NoCodons for a codon unit
/// without codons.
SingleEditResult brute_force_best_single_edit(ClassifierOracle& oracle, const DnaSequence& seq,
                                              std::size_t true_label, EditUnit unit,
                                              int frame = 0);

}  // namespace dnaadv
