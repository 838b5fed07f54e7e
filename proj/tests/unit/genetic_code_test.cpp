#include <gtest/gtest.h>

#include <map>
#include <random>
#include <set>

#include "dnaadv/errors.hpp"
#include "dnaadv/genetic_code.hpp"

namespace dnaadv {
namespace {

// NCBI translation table 1 as published: bases in T,C,A,G order, first base slowest.
std::map<std::string, char> ncbi_table1() {
  const std::string aas = "FFLLSSSSYY**CC*WLLLLPPPPHHQQRRRRIIIMTTTTNNKKSSRRVVVVAAAADDEEGGGG";
  const std::string order = "TCAG";
  std::map<std::string, char> t;
  std::size_t i = 0;
  for (char a : order)
    for (char b : order)
      for (char c : order) t[std::string{a, b, c}] = aas[i++];
  return t;
}

TEST(GeneticCode, MatchesPublishedTable) {
  const auto reference = ncbi_table1();
  const auto& code = GeneticCode::standard();
  ASSERT_EQ(reference.size(), 64u);
  for (const auto& [triplet, aa] : reference)
    EXPECT_EQ(code.translate(Codon(triplet)).code(), aa) << triplet;
}

TEST(GeneticCode, Examples) {
  const auto& code = GeneticCode::standard();
  EXPECT_EQ(code.translate(Codon("ATG")).three_letter(), "Met");
  EXPECT_TRUE(code.translate(Codon("TAA")).is_stop());
  EXPECT_TRUE(code.translate(Codon("TAG")).is_stop());
  EXPECT_TRUE(code.translate(Codon("TGA")).is_stop());
  EXPECT_EQ(code.codons_for(AminoAcid('L')).size(), 6u);
  EXPECT_EQ(code.codons_for(AminoAcid('W')).size(), 1u);
}

TEST(Codon, IndexRoundTrip) {
  for (std::size_t i = 0; i < Codon::kCount; ++i) EXPECT_EQ(Codon::from_index(i).index(), i);
  EXPECT_EQ(Codon("AAA").index(), 0u);
  EXPECT_EQ(Codon("TTT").index(), 63u);
  EXPECT_THROW(Codon("AC"), InvalidArgument);
  EXPECT_THROW(Codon("ACN"), InvalidSymbol);
  EXPECT_THROW(Codon::from_index(64), InvalidArgument);
}

TEST(GeneticCode, InverseCoversEveryCodonOnce) {
  const auto& code = GeneticCode::standard();
  std::multiset<std::size_t> seen;
  for (char aa : std::string("ACDEFGHIKLMNPQRSTVWY*"))
    for (const Codon& c : code.codons_for(AminoAcid(aa))) {
      EXPECT_EQ(code.translate(c).code(), aa);
      seen.insert(c.index());
    }
  EXPECT_EQ(seen.size(), 64u);
  for (std::size_t i = 0; i < 64; ++i) EXPECT_EQ(seen.count(i), 1u);
}

TEST(Synonyms, ClosedAndSelfContaining) {
  const auto& code = GeneticCode::standard();
  for (std::size_t i = 0; i < Codon::kCount; ++i) {
    const Codon c = Codon::from_index(i);
    const auto family = synonymous_codons(c);
    EXPECT_NE(std::find(family.begin(), family.end(), c), family.end());
    for (const Codon& s : family) {
      EXPECT_EQ(code.translate(s), code.translate(c));
      EXPECT_EQ(synonymous_codons(s), family);
    }
  }
  EXPECT_EQ(synonymous_codons(Codon("ATG")).size(), 1u);
}

TEST(CodonsOf, SplitsAtFrame) {
  const DnaSequence s("GATGGCCT");
  const auto f1 = codons_of(s, 1);
  EXPECT_EQ(f1.prefix, "G");
  ASSERT_EQ(f1.codons.size(), 2u);
  EXPECT_EQ(f1.codons[0].str(), "ATG");
  EXPECT_EQ(f1.codons[1].str(), "GCC");
  EXPECT_EQ(f1.tail, "T");
  EXPECT_THROW(codons_of(s, 3), InvalidArgument);
  EXPECT_THROW(codons_of(s, -1), InvalidArgument);
  EXPECT_TRUE(codons_of(DnaSequence("AC"), 0).codons.empty());
}

TEST(CodonsOf, ReassemblesForEveryFrame) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    std::string bases(1 + rng() % 40, 'A');
    for (char& c : bases) c = kBases[rng() % 4];
    const DnaSequence s(bases);
    for (int frame = 0; frame < 3; ++frame) {
      const auto split = codons_of(s, frame);
      std::string joined = split.prefix;
      for (const auto& c : split.codons) joined += c.view();
      joined += split.tail;
      EXPECT_EQ(joined, bases);
      EXPECT_LT(split.tail.size(), 3u);
      EXPECT_EQ(split.prefix.size(), std::min<std::size_t>(frame, bases.size()));
    }
  }
}

TEST(Translate, ReadsThroughStops) {
  EXPECT_EQ(to_one_letter(translate(DnaSequence("ATGTAAGGC"))), "M*G");
  EXPECT_EQ(to_one_letter(translate(DnaSequence("CATGTAAGGC"), 1)), "M*G");
  EXPECT_EQ(to_one_letter(translate(DnaSequence("AT"))), "");
}

}  // namespace
}  // namespace dnaadv
