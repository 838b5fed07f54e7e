#include <gtest/gtest.h>

#include <random>

#include "dnaadv/errors.hpp"
#include "dnaadv/sequence.hpp"

namespace dnaadv {
namespace {

std::string random_bases(std::mt19937_64& rng, std::size_t n) {
  std::string s(n, 'A');
  for (char& c : s) c = kBases[rng() % 4];
  return s;
}

double at_content(const DnaSequence& seq) {
  std::size_t at = 0;
  for (char c : seq.view()) at += (c == 'A' || c == 'T');
  return 100.0 * static_cast<double>(at) / static_cast<double>(seq.size());
}

TEST(DnaSequence, FoldsCase) {
  EXPECT_EQ(DnaSequence("acgT").str(), "ACGT");
}

TEST(DnaSequence, RejectsEmptyAndForeignSymbols) {
  EXPECT_THROW(DnaSequence(""), EmptySequence);
  try {
    DnaSequence("ACXT");
    FAIL();
  } catch (const InvalidSymbol& e) {
    EXPECT_EQ(e.position(), 2u);
    EXPECT_EQ(e.symbol(), 'X');
  }
  EXPECT_THROW(DnaSequence("AC GT"), InvalidSymbol);
}

TEST(ParseSequence, DropsWhitespaceAndCountsSymbolsOnly) {
  EXPECT_EQ(parse_sequence(" ac\ngt\t\r").str(), "ACGT");
  try {
    parse_sequence("AC\nGT Z");
    FAIL();
  } catch (const InvalidSymbol& e) {
    EXPECT_EQ(e.position(), 4u);
  }
  EXPECT_THROW(parse_sequence(" \n "), EmptySequence);
}

TEST(ParseSequence, AmbiguityCodes) {
  EXPECT_THROW(parse_sequence("ACNT"), InvalidSymbol);
  const auto a = parse_sequence("NNNNRYSWKMBDHV", AmbiguityPolicy::randomize(7));
  const auto b = parse_sequence("NNNNRYSWKMBDHV", AmbiguityPolicy::randomize(7));
  EXPECT_EQ(a, b);
  // Each code resolves inside its IUPAC set.
  const std::string codes = "RYSWKMBDHV";
  const std::vector<std::string> sets = {"AG", "CT", "CG", "AT", "GT", "AC",
                                         "CGT", "AGT", "ACT", "ACG"};
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto s = parse_sequence(codes, AmbiguityPolicy::randomize(seed));
    for (std::size_t i = 0; i < codes.size(); ++i)
      EXPECT_NE(sets[i].find(s[i]), std::string::npos) << codes[i] << " -> " << s[i];
  }
}

TEST(GcContent, Examples) {
  EXPECT_DOUBLE_EQ(gc_content(DnaSequence("GGCC")), 100.0);
  EXPECT_DOUBLE_EQ(gc_content(DnaSequence("ATAT")), 0.0);
  EXPECT_DOUBLE_EQ(gc_content(DnaSequence("ACGT")), 50.0);
}

TEST(GcContent, ComplementsAtContentExactly) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 2000; ++trial) {
    const DnaSequence s(random_bases(rng, 1 + rng() % 3000));
    const double gc = gc_content(s);
    EXPECT_GE(gc, 0.0);
    EXPECT_LE(gc, 100.0);
    EXPECT_EQ(gc + at_content(s), 100.0);
  }
}

TEST(Hamming, IsAMetric) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + rng() % 64;
    const DnaSequence a(random_bases(rng, n)), b(random_bases(rng, n)), c(random_bases(rng, n));
    EXPECT_EQ(hamming(a, a), 0u);
    EXPECT_EQ(hamming(a, b), hamming(b, a));
    EXPECT_LE(hamming(a, c), hamming(a, b) + hamming(b, c));
    if (a != b) EXPECT_GT(hamming(a, b), 0u);
  }
  EXPECT_THROW(hamming(DnaSequence("ACG"), DnaSequence("AC")), LengthMismatch);
}

TEST(DnaSequence, WithReplacement) {
  const DnaSequence s("AAAAAA");
  EXPECT_EQ(s.with_replacement(2, "CGT").str(), "AACGTA");
  EXPECT_EQ(s.str(), "AAAAAA");
  EXPECT_THROW(s.with_replacement(4, "CGT"), InvalidArgument);
  EXPECT_THROW(s.with_replacement(0, "N"), InvalidSymbol);
}

}  // namespace
}  // namespace dnaadv
