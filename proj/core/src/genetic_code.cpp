#include "dnaadv/genetic_code.hpp"

#include <algorithm>

#include "dnaadv/errors.hpp"

namespace dnaadv {
namespace {

constexpr std::string_view kAminoAcids = "ACDEFGHIKLMNPQRSTVWY*";

constexpr std::array<std::string_view, 21> kThreeLetter = {
    "Ala", "Cys", "Asp", "Glu", "Phe", "Gly", "His", "Ile", "Lys", "Leu", "Met",
    "Asn", "Pro", "Gln", "Arg", "Ser", "Thr", "Val", "Trp", "Tyr", "Stop"};

// Table 1 in codon-index order (AAA, AAC, AAG, AAT, ACA, ..., TTT).
constexpr std::string_view kStandardTable =
    "KNKNTTTTRSRSIIMI"
    "QHQHPPPPRRRRLLLL"
    "EDEDAAAAGGGGVVVV"
    "*Y*YSSSS*CWCLFLF";

std::size_t amino_slot(char code) {
  const auto pos = kAminoAcids.find(code);
  if (pos == std::string_view::npos) throw InvalidArgument("unknown amino acid code");
  return pos;
}

}  // namespace

Codon::Codon(std::string_view triplet) {
  if (triplet.size() != 3) throw InvalidArgument("codon must have exactly 3 bases");
  for (std::size_t i = 0; i < 3; ++i) {
    if (base_index(triplet[i]) < 0) throw InvalidSymbol(i, triplet[i]);
    bases_[i] = triplet[i];
  }
}

Codon Codon::from_index(std::size_t index) {
  if (index >= kCount) throw InvalidArgument("codon index out of range");
  Codon c;
  c.bases_ = {kBases[index / 16], kBases[(index / 4) % 4], kBases[index % 4]};
  return c;
}

std::size_t Codon::index() const noexcept {
  return static_cast<std::size_t>(base_index(bases_[0]) * 16 + base_index(bases_[1]) * 4 +
                                  base_index(bases_[2]));
}

AminoAcid::AminoAcid(char one_letter) : code_(one_letter) { amino_slot(one_letter); }

std::string_view AminoAcid::three_letter() const noexcept {
  return kThreeLetter[kAminoAcids.find(code_)];
}

GeneticCode::GeneticCode(std::string_view amino_acids_by_index) : inverse_(kAminoAcids.size()) {
  table_.reserve(Codon::kCount);
  for (std::size_t i = 0; i < Codon::kCount; ++i) {
    const AminoAcid aa(amino_acids_by_index[i]);
    table_.push_back(aa);
    inverse_[amino_slot(aa.code())].push_back(Codon::from_index(i));
  }
}

const GeneticCode& GeneticCode::standard() {
  static const GeneticCode code(kStandardTable);
  return code;
}

std::span<const Codon> GeneticCode::codons_for(AminoAcid aa) const {
  return inverse_[amino_slot(aa.code())];
}

CodonSplit codons_of(const DnaSequence& seq, int frame) {
  if (frame < 0 || frame > 2) throw InvalidArgument("reading frame must be 0, 1 or 2");
  const std::string_view s = seq.view();
  const std::size_t offset = std::min<std::size_t>(static_cast<std::size_t>(frame), s.size());
  CodonSplit split;
  split.prefix = std::string(s.substr(0, offset));
  const std::size_t n = (s.size() - offset) / 3;
  split.codons.reserve(n);
  for (std::size_t i = 0; i < n; ++i) split.codons.emplace_back(s.substr(offset + 3 * i, 3));
  split.tail = std::string(s.substr(offset + 3 * n));
  return split;
}

std::vector<AminoAcid> translate(const DnaSequence& seq, int frame) {
  const auto& code = GeneticCode::standard();
  std::vector<AminoAcid> protein;
  for (const Codon& c : codons_of(seq, frame).codons) protein.push_back(code.translate(c));
  return protein;
}

std::string to_one_letter(std::span<const AminoAcid> protein) {
  std::string out;
  out.reserve(protein.size());
  for (const auto& aa : protein) out.push_back(aa.code());
  return out;
}

std::vector<Codon> synonymous_codons(const Codon& codon) {
  const auto& code = GeneticCode::standard();
  const auto family = code.codons_for(code.translate(codon));
  return {family.begin(), family.end()};
}

}  // namespace dnaadv
