#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dnaadv/sequence.hpp"

namespace dnaadv {

/// One of the 64 DNA triplets. Indexed 0..63 in A<C<G<T lexicographic order.
class Codon {
 public:
  static constexpr std::size_t kCount = 64;

  /// Throws InvalidArgument unless `triplet` is exactly three of A/C/G/T.
  explicit Codon(std::string_view triplet);
  static Codon from_index(std::size_t index);

  std::size_t index() const noexcept;
  std::string_view view() const noexcept { return {bases_.data(), 3}; }
  std::string str() const { return std::string(view()); }

  friend bool operator==(const Codon&, const Codon&) = default;
  friend auto operator<=>(const Codon& a, const Codon& b) noexcept { return a.bases_ <=> b.bases_; }

 private:
  Codon() = default;
  std::array<char, 3> bases_{};
};

/// One of the 20 standard amino acids, or STOP. Stored as the one-letter code ('*' = STOP).
class AminoAcid {
 public:
  static constexpr std::size_t kAlphabetSize = 21;
  static constexpr char kStopCode = '*';

  /// Throws InvalidArgument for anything outside the 21-symbol alphabet.
  explicit AminoAcid(char one_letter);

  char code() const noexcept { return code_; }
  bool is_stop() const noexcept { return code_ == kStopCode; }
  std::string_view three_letter() const noexcept;

  friend bool operator==(const AminoAcid&, const AminoAcid&) = default;

 private:
  char code_;
};

/// A total codon -> amino-acid table together with its inverse.
class GeneticCode {
 public:
  /// NCBI translation table 1.
  static const GeneticCode& standard();

  AminoAcid translate(const Codon& codon) const noexcept { return table_[codon.index()]; }

  /// Every codon encoding `aa`, in codon index order. Never empty.
  std::span<const Codon> codons_for(AminoAcid aa) const;

 private:
  explicit GeneticCode(std::string_view amino_acids_by_index);

  std::vector<AminoAcid> table_;
  std::vector<std::vector<Codon>> inverse_;  // indexed like kAminoAcids
};

/// Result of cutting a sequence into codons at a reading frame.
/// prefix + codons + tail reproduces the sequence.
struct CodonSplit {
  std::string prefix;
  std::vector<Codon> codons;
  std::string tail;
};

/// Throws InvalidArgument unless frame is 0, 1 or 2.
CodonSplit codons_of(const DnaSequence& seq, int frame = 0);

/// STOP codons are emitted as symbols; translation does not terminate on them.
std::vector<AminoAcid> translate(const DnaSequence& seq, int frame = 0);

std::string to_one_letter(std::span<const AminoAcid> protein);

/// Codons synonymous with `codon` under the standard code, `codon` included.
std::vector<Codon> synonymous_codons(const Codon& codon);

}  // namespace dnaadv
