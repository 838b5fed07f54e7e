#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

namespace dnaadv {

inline constexpr std::string_view kBases = "ACGT";

/// Index of an uppercase base in A,C,G,T order, or -1.
constexpr int base_index(char base) noexcept {
  switch (base) {
    case 'A': return 0;
    case 'C': return 1;
    case 'G': return 2;
    case 'T': return 3;
    default: return -1;
  }
}

enum class AmbiguityMode { Reject, Randomize };

/// How parse_sequence treats IUPAC ambiguity codes (N, R, Y, ...).
struct AmbiguityPolicy {
  AmbiguityMode mode = AmbiguityMode::Reject;
  std::uint64_t seed = 0;

  static AmbiguityPolicy reject() { return {}; }
  static AmbiguityPolicy randomize(std::uint64_t seed) { return {AmbiguityMode::Randomize, seed}; }
};

/// A non-empty, uppercase sequence over {A,C,G,T}. Immutable.
class DnaSequence {
 public:
  /// Strict constructor: accepts only A/C/G/T in either case.
  explicit DnaSequence(std::string_view bases);

  std::size_t size() const noexcept { return bases_.size(); }
  char operator[](std::size_t i) const noexcept { return bases_[i]; }
  std::string_view view() const noexcept { return bases_; }
  const std::string& str() const noexcept { return bases_; }

  /// Copy with `replacement` written over [position, position + replacement.size()).
  DnaSequence with_replacement(std::size_t position, std::string_view replacement) const;

  friend bool operator==(const DnaSequence&, const DnaSequence&) = default;

 private:
  struct Trusted {};
  DnaSequence(Trusted, std::string bases) : bases_(std::move(bases)) {}

  std::string bases_;

  friend DnaSequence parse_sequence(std::string_view, const AmbiguityPolicy&);
};

/// Parses free text into a sequence. Whitespace is dropped, case is folded.
/// Throws EmptySequence or InvalidSymbol (position counts non-whitespace symbols).
DnaSequence parse_sequence(std::string_view text, const AmbiguityPolicy& policy = {});

/// GC% = 100 * (G + C) / length.
double gc_content(const DnaSequence& seq) noexcept;

/// Number of differing positions. Throws LengthMismatch.
std::size_t hamming(const DnaSequence& a, const DnaSequence& b);

}  // namespace dnaadv
