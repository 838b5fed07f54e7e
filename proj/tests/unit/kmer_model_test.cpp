#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "dnaadv/errors.hpp"
#include "dnaadv/kmer_model.hpp"
#include "dnaadv/oracle.hpp"
#include "dnaadv/synthetic.hpp"
#include "gradcheck.hpp"

namespace dnaadv {
namespace {

TEST(Featurizer, Examples) {
  EXPECT_EQ(KmerFeaturizer(1).featurize(DnaSequence("AACG")),
            (std::vector<double>{0.5, 0.25, 0.25, 0.0}));
  const auto aa = KmerFeaturizer(2).featurize(DnaSequence("AAAA"));
  EXPECT_EQ(aa[0], 1.0);
  for (std::size_t i = 1; i < aa.size(); ++i) EXPECT_EQ(aa[i], 0.0);
  EXPECT_THROW(KmerFeaturizer(3).featurize(DnaSequence("AC")), SequenceTooShort);
  EXPECT_THROW(KmerFeaturizer(0), InvalidArgument);
  EXPECT_THROW(KmerFeaturizer(9), InvalidArgument);
}

TEST(Featurizer, IndexOrderAndNormalisation) {
  // "TGA" has index 3*16 + 2*4 + 0 = 56.
  const auto f = KmerFeaturizer(3).featurize(DnaSequence("TGA"));
  EXPECT_EQ(f[56], 1.0);
  Rng rng(5);
  for (int k = 1; k <= 4; ++k) {
    std::string s(37, 'A');
    for (char& c : s) c = "ACGT"[rng() % 4];
    const auto v = KmerFeaturizer(k).featurize(DnaSequence(s));
    double sum = 0.0;
    for (double x : v) {
      sum += x;
      // Every entry is a multiple of 1 / (L - k + 1).
      const double scaled = x * (37 - k + 1);
      EXPECT_NEAR(scaled, std::round(scaled), 1e-9);
    }
    EXPECT_NEAR(sum, 1.0, 1e-12);
  }
}

TEST(Model, ZeroWeightsGiveUniform) {
  LinearKmerModel m(3, {"a", "b", "c"});
  for (double p : m.predict_proba(DnaSequence("ACGTACGT"))) EXPECT_DOUBLE_EQ(p, 1.0 / 3.0);
  const std::vector<Example> batch = {{m.featurizer().featurize(DnaSequence("ACGT")), 1}};
  LinearKmerModel two(2, {"a", "b"});
  const std::vector<Example> b2 = {{two.featurizer().featurize(DnaSequence("ACGT")), 1}};
  EXPECT_NEAR(loss_and_gradient(two, b2, 0.0).loss, std::log(2.0), 1e-15);
  EXPECT_THROW(loss_and_gradient(two, {}, 0.0), InvalidArgument);
}

TEST(Model, LogitsUseScaledFrequencies) {
  LinearKmerModel m(1, {"a", "b"});
  m.weights()[0] = 1.0;  // class a, base A
  m.bias()[1] = 0.5;
  // "AACC": frequency of A is 0.5, scaled by 4.
  const auto p = m.predict_proba(DnaSequence("AACC"));
  EXPECT_NEAR(p[0], 1.0 / (1.0 + std::exp(0.5 - 2.0)), 1e-15);
}

TEST(Model, Validation) {
  EXPECT_THROW(LinearKmerModel(2, {"only"}), InvalidArgument);
  EXPECT_THROW(LinearKmerModel(1, {"a", "b"}, std::vector<double>(7), {0, 0}), InvalidArgument);
  std::vector<double> w(8, 0.0);
  w[3] = std::nan("");
  EXPECT_THROW(LinearKmerModel(1, {"a", "b"}, w, {0, 0}), InvalidArgument);
}

TEST(Gradient, MatchesFiniteDifferences) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto draw = testing::random_gradcheck_draw(seed);
    EXPECT_LE(testing::max_gradient_error(draw), 1e-5) << "seed " << seed;
  }
}

TEST(Gradient, PurePenaltyAtZeroDataGradient) {
  // Equal weight rows give uniform predictions; two copies of one input with opposite
  // labels then cancel the data term exactly.
  LinearKmerModel m(2, {"a", "b"});
  Rng rng(3);
  std::normal_distribution<double> normal;
  for (std::size_t j = 0; j < m.n_features(); ++j) {
    const double w = normal(rng);
    m.weights()[j] = w;
    m.weights()[m.n_features() + j] = w;
  }
  const auto x = m.featurizer().featurize(DnaSequence("ACGTTGCA"));
  const std::vector<Example> batch = {{x, 0}, {x, 1}};
  const double l2 = 0.37;
  const auto g = loss_and_gradient(m, batch, l2).gradient;
  for (std::size_t i = 0; i < g.weights.size(); ++i) EXPECT_EQ(g.weights[i], l2 * m.weights()[i]);
  for (double b : g.bias) EXPECT_EQ(b, 0.0);
}

SyntheticSpec tataat_spec() {
  SyntheticSpec spec;
  spec.seq_len = 100;
  spec.motifs_per_class = {{}, {{"TATAAT", 1.0}}};
  spec.samples_per_class = 50;
  return spec;
}

TEST(Train, LossNonIncreasingFullBatch) {
  auto spec = tataat_spec();
  spec.samples_per_class = 5;
  const auto ds = generate_synthetic(spec);
  TrainConfig cfg;
  cfg.learning_rate = 1e-3;
  cfg.batch_size = ds.size();
  cfg.epochs = 50;
  const auto m = train(ds, 3, cfg);
  const auto& losses = m.epoch_losses();
  ASSERT_EQ(losses.size(), 50u);
  for (std::size_t i = 1; i < losses.size(); ++i) EXPECT_LE(losses[i], losses[i - 1]);
  EXPECT_LT(losses.back(), std::log(2.0));
}

TEST(Train, ZeroStepLeavesInitialisation) {
  const LabeledDataset ds({{"a", DnaSequence("ACGTAC"), 0}, {"b", DnaSequence("TTTGGA"), 1}},
                          {"x", "y"});
  TrainConfig cfg;
  cfg.learning_rate = 0.0;
  cfg.epochs = 1;
  const auto m = train(ds, 3, cfg);
  for (double w : m.weights()) EXPECT_EQ(w, 0.0);
  for (double b : m.bias()) EXPECT_EQ(b, 0.0);
}

TEST(Train, Deterministic) {
  const auto ds = generate_synthetic(tataat_spec());
  TrainConfig cfg;
  cfg.epochs = 5;
  const auto a = train(ds, 3, cfg);
  const auto b = train(ds, 3, cfg);
  ASSERT_EQ(a.weights().size(), b.weights().size());
  for (std::size_t i = 0; i < a.weights().size(); ++i) EXPECT_EQ(a.weights()[i], b.weights()[i]);
  for (std::size_t i = 0; i < a.bias().size(); ++i) EXPECT_EQ(a.bias()[i], b.bias()[i]);
}

TEST(Train, RejectsSingleClassAndBadConfig) {
  const LabeledDataset ds({{"a", DnaSequence("ACGTAC"), 0}, {"b", DnaSequence("TTTGGA"), 0}},
                          {"x", "y"});
  EXPECT_THROW(train(ds, 3, TrainConfig{}), DegenerateDataset);
  TrainConfig bad;
  bad.epochs = 0;
  EXPECT_THROW(bad.validate(), InvalidArgument);
  bad = TrainConfig{};
  bad.learning_rate = -1.0;
  EXPECT_THROW(bad.validate(), InvalidArgument);
}

TEST(Train, SingleMotifLearnedAboveChance) {
  // A lone planted hexamer moves only a handful of the 3-mer frequencies, so a linear
  // model on 3-mers cannot separate the classes exactly. It must still beat chance
  // clearly on held-out data.
  const auto ds = generate_synthetic(tataat_spec());
  TrainConfig cfg;
  cfg.epochs = 20;
  const auto m = train(ds, 3, cfg);
  auto held = tataat_spec();
  held.seed = 14;
  held.samples_per_class = 500;
  EXPECT_GE(accuracy(m, generate_synthetic(held)), 0.6);
}

TEST(Train, BenchmarkMotifBearingSequencesClassified) {
  const auto ds = generate_synthetic(SyntheticSpec::benchmark());
  const auto m = train(ds, 3, TrainConfig{});
  auto held = SyntheticSpec::benchmark();
  held.seed += 1;
  held.samples_per_class = 50;
  const auto test = generate_synthetic(held);
  EXPECT_GE(accuracy(m, test), 0.95);
  ModelOracle oracle(m);
  for (const auto& r : test.records())
    if (r.label == 1) EXPECT_EQ(argmax(oracle.predict_proba(r.seq)), 1u) << r.id;
}

class ModelFiles : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() / "dnaadv_model_test";
    std::filesystem::create_directories(dir_);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }
  std::filesystem::path dir_;
};

TEST_F(ModelFiles, RoundTripIsBitExact) {
  const auto draw = testing::random_gradcheck_draw(77);
  const auto path = dir_ / "m.json";
  save_model(draw.model, path);
  const auto back = load_model(path);
  EXPECT_EQ(back.k(), draw.model.k());
  EXPECT_EQ(back.class_names(), draw.model.class_names());
  for (std::size_t i = 0; i < back.weights().size(); ++i)
    EXPECT_EQ(back.weights()[i], draw.model.weights()[i]);
  Rng rng(8);
  for (int t = 0; t < 20; ++t) {
    std::string s(30, 'A');
    for (char& c : s) c = "ACGT"[rng() % 4];
    EXPECT_EQ(back.predict_proba(DnaSequence(s)), draw.model.predict_proba(DnaSequence(s)));
  }
}

TEST_F(ModelFiles, TruncatedAndVersion) {
  const auto path = dir_ / "m.json";
  const auto text = model_to_json(testing::random_gradcheck_draw(5).model);
  {
    std::ofstream(path) << text.substr(0, text.size() / 2);
  }
  EXPECT_THROW(load_model(path), SerializationError);
  auto doc = text;
  const auto at = doc.find("\"format_version\":1");
  ASSERT_NE(at, std::string::npos);
  doc.replace(at, 18, "\"format_version\":99");
  EXPECT_THROW(model_from_json(doc), VersionMismatch);
  EXPECT_THROW(load_model(dir_ / "missing.json"), SerializationError);
}

TEST(Oracle, QueryCounterCountsSequences) {
  ModelOracle oracle(LinearKmerModel(2, {"a", "b"}));
  std::vector<DnaSequence> batch(8, DnaSequence("ACGTACGT"));
  const auto out = oracle.predict_proba(batch);
  EXPECT_EQ(out.size(), 8u);
  EXPECT_EQ(oracle.queries(), 8u);
  oracle.predict_proba(DnaSequence("ACGT"));
  EXPECT_EQ(oracle.queries(), 9u);
  EXPECT_THROW(oracle.predict_proba(DnaSequence("A")), SequenceTooShort);
}

TEST(Oracle, ProbabilityValidation) {
  EXPECT_NO_THROW(check_probabilities(std::vector<double>{0.25, 0.75}, 2));
  EXPECT_THROW(check_probabilities(std::vector<double>{0.5}, 2), OracleFailure);
  EXPECT_THROW(check_probabilities(std::vector<double>{0.5, 0.6}, 2), OracleFailure);
  EXPECT_THROW(check_probabilities(std::vector<double>{-0.1, 1.1}, 2), OracleFailure);
  EXPECT_THROW(check_probabilities(std::vector<double>{std::nan(""), 1.0}, 2), OracleFailure);
}

TEST(Oracle, LogOddsOrdersLikeProbability) {
  const std::vector<double> a{0.2, 0.8}, b{0.3, 0.7};
  EXPECT_LT(true_class_log_odds(a, 0), true_class_log_odds(b, 0));
  EXPECT_NEAR(true_class_log_odds(std::vector<double>{0.5, 0.25, 0.25}, 0), 0.0, 1e-15);
  // Distinguishes probabilities that both round to 1.
  const std::vector<double> c{1.0, 1e-20}, d{1.0, 1e-25};
  EXPECT_LT(true_class_log_odds(c, 0), true_class_log_odds(d, 0));
}

}  // namespace
}  // namespace dnaadv
