#include "dnaadv/sequence.hpp"

#include <algorithm>
#include <cctype>
#include <random>

#include "dnaadv/errors.hpp"
#include "dnaadv/rng.hpp"

namespace dnaadv {
namespace {

char fold(char c) noexcept { return static_cast<char>(std::toupper(static_cast<unsigned char>(c))); }

std::string_view iupac_expansion(char upper) noexcept {
  switch (upper) {
    case 'R': return "AG";
    case 'Y': return "CT";
    case 'S': return "CG";
    case 'W': return "AT";
    case 'K': return "GT";
    case 'M': return "AC";
    case 'B': return "CGT";
    case 'D': return "AGT";
    case 'H': return "ACT";
    case 'V': return "ACG";
    case 'N': return "ACGT";
    default: return {};
  }
}

}  // namespace

DnaSequence::DnaSequence(std::string_view bases) {
  if (bases.empty()) throw EmptySequence();
  bases_.reserve(bases.size());
  for (std::size_t i = 0; i < bases.size(); ++i) {
    const char c = fold(bases[i]);
    if (base_index(c) < 0) throw InvalidSymbol(i, bases[i]);
    bases_.push_back(c);
  }
}

DnaSequence DnaSequence::with_replacement(std::size_t position,
                                          std::string_view replacement) const {
  if (position + replacement.size() > bases_.size())
    throw InvalidArgument("replacement runs past the end of the sequence");
  for (std::size_t i = 0; i < replacement.size(); ++i)
    if (base_index(replacement[i]) < 0) throw InvalidSymbol(position + i, replacement[i]);
  std::string copy = bases_;
  copy.replace(position, replacement.size(), replacement);
  return DnaSequence(Trusted{}, std::move(copy));
}

DnaSequence parse_sequence(std::string_view text, const AmbiguityPolicy& policy) {
  std::string out;
  out.reserve(text.size());
  Rng rng(policy.seed);
  for (char raw : text) {
    if (std::isspace(static_cast<unsigned char>(raw))) continue;
    const char c = fold(raw);
    if (base_index(c) >= 0) {
      out.push_back(c);
      continue;
    }
    const std::string_view choices = iupac_expansion(c);
    if (policy.mode == AmbiguityMode::Reject || choices.empty())
      throw InvalidSymbol(out.size(), raw);
    std::uniform_int_distribution<std::size_t> pick(0, choices.size() - 1);
    out.push_back(choices[pick(rng)]);
  }
  if (out.empty()) throw EmptySequence();
  return DnaSequence(DnaSequence::Trusted{}, std::move(out));
}

double gc_content(const DnaSequence& seq) noexcept {
  const auto gc = std::count_if(seq.view().begin(), seq.view().end(),
                                [](char c) { return c == 'G' || c == 'C'; });
  return 100.0 * static_cast<double>(gc) / static_cast<double>(seq.size());
}

std::size_t hamming(const DnaSequence& a, const DnaSequence& b) {
  if (a.size() != b.size()) throw LengthMismatch(a.size(), b.size());
  std::size_t d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d += a[i] != b[i];
  return d;
}

}  // namespace dnaadv
