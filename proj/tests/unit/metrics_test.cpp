#include <gtest/gtest.h>

#include <atomic>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "attack_checks.hpp"
#include "dnaadv/campaign.hpp"
#include "dnaadv/errors.hpp"
#include "dnaadv/metrics.hpp"
#include "dnaadv/report.hpp"
#include "dnaadv/synthetic.hpp"
#include "json.hpp"
#include "toy_oracles.hpp"

namespace dnaadv {
namespace {

using V = std::vector<double>;

TEST(Pearson, Examples) {
  EXPECT_DOUBLE_EQ(*pearson(V{1, 2, 3}, V{1, 2, 3}), 1.0);
  EXPECT_DOUBLE_EQ(*pearson(V{1, 2, 3}, V{3, 2, 1}), -1.0);
  EXPECT_FALSE(pearson(V{1, 1, 1}, V{1, 2, 3}));
  EXPECT_THROW(pearson(V{1, 2}, V{1, 2, 3}), LengthMismatch);
  EXPECT_THROW(pearson(V{1}, V{1}), TooFewPoints);
}

TEST(Pearson, MatchesTextbookFormula) {
  const V x{2.0, 4.5, 1.0, 7.25, 3.0}, y{1.0, 3.0, 0.5, 4.0, 2.75};
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) mx += x[i] / 5, my += y[i] / 5;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  EXPECT_NEAR(*pearson(x, y), sxy / std::sqrt(sxx * syy), 1e-14);
}

TEST(Pearson, SymmetryAndAffineInvariance) {
  Rng rng(6);
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> scale(0.1, 10.0), shift(-50.0, 50.0);
  for (int t = 0; t < 200; ++t) {
    V x(3 + t % 20), y(x.size());
    for (auto& v : x) v = normal(rng);
    for (auto& v : y) v = normal(rng);
    const double r = *pearson(x, y);
    EXPECT_EQ(r, *pearson(y, x));
    EXPECT_GE(r, -1.0);
    EXPECT_LE(r, 1.0);
    const double a = scale(rng), b = shift(rng);
    V xa = x;
    for (auto& v : xa) v = a * v + b;
    EXPECT_NEAR(*pearson(xa, y), r, 1e-12);
  }
}

TEST(GcCorrelation, IdenticalPairsGiveOne) {
  std::vector<DnaSequence> seqs{DnaSequence("GGCA"), DnaSequence("ATAT"), DnaSequence("GCGA")};
  EXPECT_DOUBLE_EQ(*gc_correlation(seqs, seqs), 1.0);
  std::vector<DnaSequence> flipped{DnaSequence("ATAT"), DnaSequence("GGCA"), DnaSequence("GCGA")};
  EXPECT_LT(*gc_correlation(seqs, flipped), 1.0);
}

AttackOutcome outcome(std::size_t label, std::size_t before, std::size_t after) {
  AttackOutcome o(DnaSequence("ACGT"));
  o.true_label = label;
  o.original_prediction = before;
  o.final_prediction = after;
  o.success = before == label && after != label;
  return o;
}

TEST(Rates, Definitions) {
  std::vector<AttackOutcome> outs;
  for (int i = 0; i < 45; ++i) outs.push_back(outcome(0, 0, 1));  // flipped
  for (int i = 0; i < 45; ++i) outs.push_back(outcome(0, 0, 0));  // held
  for (int i = 0; i < 10; ++i) outs.push_back(outcome(0, 1, 1));  // wrong throughout
  EXPECT_DOUBLE_EQ(success_rate(outs), 0.5);
  EXPECT_DOUBLE_EQ(accuracy(outs), 0.45);
  const auto row = summarize(0.3, outs);
  EXPECT_DOUBLE_EQ(row.clean_acc, 0.9);
  EXPECT_DOUBLE_EQ(row.attacked_acc, 0.45);
  EXPECT_DOUBLE_EQ(*row.success_rate, 0.5);
  // Attacked accuracy equals clean accuracy minus flips over N here.
  EXPECT_DOUBLE_EQ(row.attacked_acc, row.clean_acc - 45.0 / 100.0);

  std::vector<AttackOutcome> untouched(5, outcome(1, 1, 1));
  EXPECT_DOUBLE_EQ(success_rate(untouched), 0.0);
  std::vector<AttackOutcome> wrong(5, outcome(1, 0, 0));
  EXPECT_THROW(success_rate(wrong), NoCorrectBaseline);
  EXPECT_FALSE(summarize(0.1, wrong).success_rate);
  EXPECT_THROW(accuracy(std::vector<AttackOutcome>{}), InvalidArgument);
}

TEST(Axis, Parse) {
  EXPECT_EQ(parse_grid_axis("epsilon"), GridAxis::Epsilon);
  EXPECT_EQ(parse_grid_axis(to_string(GridAxis::Iterations)), GridAxis::Iterations);
  EXPECT_THROW(parse_grid_axis("eps"), InvalidArgument);
}

CampaignReport sample_report() {
  CampaignReport r;
  r.metadata = {AttackKind::Codon, GridAxis::Epsilon, 10, 13, "victim"};
  r.rows.push_back({0.1, 1.0, 0.75, 0.25, 123.5, 0.987654321});
  r.rows.push_back({0.2, 1.0, 0.5, std::nullopt, 10.0, std::nullopt});
  return r;
}

TEST(Report, CsvSchemaAndFormatting) {
  EXPECT_EQ(format_fixed6(1.0 / 3.0), "0.333333");
  EXPECT_EQ(format_fixed6(-1e-9), "0.000000");
  EXPECT_EQ(report_to_csv(sample_report()),
            "grid_value,clean_acc,attacked_acc,success_rate,mean_queries,gc_pearson\n"
            "0.100000,1.000000,0.750000,0.250000,123.500000,0.987654\n"
            "0.200000,1.000000,0.500000,,10.000000,\n");
  auto incomplete = sample_report();
  incomplete.complete = false;
  incomplete.incomplete_reason = "oracle died";
  EXPECT_EQ(report_to_csv(incomplete).rfind("# INCOMPLETE\ngrid_value,", 0), 0u);
}

TEST(Report, JsonMirrorsFields) {
  const auto doc = nlohmann::json::parse(report_to_json(sample_report()));
  EXPECT_EQ(doc["metadata"]["attack_kind"], "codon");
  EXPECT_EQ(doc["metadata"]["grid_axis"], "epsilon");
  EXPECT_EQ(doc["metadata"]["victim_id"], "victim");
  EXPECT_TRUE(doc["complete"].get<bool>());
  EXPECT_EQ(doc["rows"].size(), 2u);
  EXPECT_TRUE(doc["rows"][1]["gc_pearson"].is_null());
  EXPECT_TRUE(doc["rows"][1]["success_rate"].is_null());
  EXPECT_EQ(doc["rows"][0]["gc_pearson"].get<double>(), 0.987654321);
}

TEST(Report, EmitWritesBytes) {
  const auto path = std::filesystem::temp_directory_path() / "dnaadv_report_test.csv";
  emit_report(sample_report(), path, ReportFormat::Csv);
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  EXPECT_EQ(ss.str(), report_to_csv(sample_report()));
  std::filesystem::remove(path);
  EXPECT_THROW(emit_report(sample_report(), "/nonexistent/dir/x.csv", ReportFormat::Csv), IoError);
}

LabeledDataset small_test_set() {
  SyntheticSpec spec = SyntheticSpec::benchmark();
  spec.seq_len = 90;
  spec.motifs_per_class = {{}, std::vector<PlantedMotif>(5, PlantedMotif{"AGGAGG", 1.0})};
  spec.samples_per_class = 12;
  return generate_synthetic(spec);
}

TEST(Grid, Validation) {
  CampaignGrid g{AttackKind::Backtranslation, GridAxis::Epsilon, {0.1}, 10};
  EXPECT_THROW(g.validate(), InvalidArgument);
  g = {AttackKind::Nucleotide, GridAxis::Epsilon, {0.2, 0.1}, 10};
  EXPECT_THROW(g.validate(), InvalidArgument);
  g = {AttackKind::Nucleotide, GridAxis::Iterations, {1, 2.5}, 0.1};
  EXPECT_THROW(g.validate(), InvalidArgument);
  g = {AttackKind::Nucleotide, GridAxis::Epsilon, {}, 10};
  EXPECT_THROW(g.validate(), InvalidArgument);
  g = {AttackKind::Codon, GridAxis::Iterations, {5, 10}, 0.3};
  const auto cfg = g.config_at(AttackConfig{}, 10);
  EXPECT_EQ(cfg.iterations, 10u);
  EXPECT_DOUBLE_EQ(cfg.epsilon, 0.3);
}

TEST(Campaign, ZeroEpsilonRowEqualsClean) {
  const auto ds = small_test_set();
  ModelOracle oracle(train(ds, 3, TrainConfig{}));
  const auto r = run_campaign(oracle, ds, {AttackKind::Nucleotide, GridAxis::Epsilon, {0.0, 0.2}, 20},
                              AttackConfig{});
  ASSERT_EQ(r.rows.size(), 2u);
  EXPECT_TRUE(r.complete);
  EXPECT_EQ(r.rows[0].attacked_acc, r.rows[0].clean_acc);
  EXPECT_DOUBLE_EQ(*r.rows[0].success_rate, 0.0);
  EXPECT_DOUBLE_EQ(*r.rows[0].gc_pearson, 1.0);
  EXPECT_EQ(r.samples.size(), 2 * ds.size());
  for (const auto& row : r.rows) {
    EXPECT_GE(row.attacked_acc, 0.0);
    EXPECT_LE(row.attacked_acc, row.clean_acc);
  }
}

TEST(Campaign, IdenticalAcrossThreadCounts) {
  const auto ds = small_test_set();
  ModelOracle oracle(train(ds, 3, TrainConfig{}));
  AttackConfig base;
  base.candidate_sample = 3;
  for (auto kind : {AttackKind::Nucleotide, AttackKind::Codon, AttackKind::Backtranslation}) {
    const CampaignGrid grid{kind, GridAxis::Iterations, {5, 20}, 0.3};
    const auto one = run_campaign(oracle, ds, grid, base, {1, "v"});
    const auto four = run_campaign(oracle, ds, grid, base, {4, "v"});
    EXPECT_EQ(report_to_csv(one), report_to_csv(four));
    EXPECT_EQ(report_to_json(one), report_to_json(four));
  }
}

TEST(Campaign, MoreIterationsNeverRaiseTrueProbability) {
  const auto ds = small_test_set();
  ModelOracle oracle(train(ds, 3, TrainConfig{}));
  const auto r = run_campaign(oracle, ds, {AttackKind::Nucleotide, GridAxis::Iterations, {4, 8}, 0.2},
                              AttackConfig{});
  for (std::size_t i = 0; i < ds.size(); ++i)
    EXPECT_LE(r.samples[ds.size() + i].final_true_prob, r.samples[i].final_true_prob);
}

// Delegates to a model until a query budget runs out, then fails like a dead process.
class DyingOracle final : public ClassifierOracle {
 public:
  DyingOracle(LinearKmerModel m, std::uint64_t lifetime)
      : ClassifierOracle(m.n_classes()), inner_(std::move(m)), left_(lifetime) {}

 protected:
  std::vector<ClassProbabilities> do_predict(std::span<const DnaSequence> batch) override {
    if (left_.fetch_sub(static_cast<std::int64_t>(batch.size())) < static_cast<std::int64_t>(batch.size()))
      throw OracleFailure("oracle process exited");
    return inner_.predict_proba(batch);
  }

 private:
  ModelOracle inner_;
  std::atomic<std::int64_t> left_;
};

TEST(Campaign, OracleFailureKeepsFinishedRows) {
  const auto ds = small_test_set();
  const auto model = train(ds, 3, TrainConfig{});
  ModelOracle healthy(model);
  const CampaignGrid grid{AttackKind::Nucleotide, GridAxis::Epsilon, {0.0, 0.1, 0.2}, 5};
  const auto full = run_campaign(healthy, ds, grid, AttackConfig{});
  DyingOracle dying(model, ds.size() + 50);  // the zero-budget row needs one query per sample
  const auto partial = run_campaign(dying, ds, grid, AttackConfig{}, {2, ""});
  EXPECT_FALSE(partial.complete);
  EXPECT_NE(partial.incomplete_reason.find("exited"), std::string::npos);
  ASSERT_EQ(partial.rows.size(), 1u);
  EXPECT_EQ(partial.rows[0].attacked_acc, full.rows[0].attacked_acc);
}

TEST(ParallelFor, RunsEveryIndexAndPropagates) {
  std::vector<std::atomic<int>> hits(100);
  parallel_for(100, 4, [&](std::size_t i) { ++hits[i]; });
  for (auto& h : hits) EXPECT_EQ(h.load(), 1);
  EXPECT_THROW(parallel_for(50, 3,
                            [](std::size_t i) {
                              if (i == 7) throw InvalidArgument("boom");
                            }),
               InvalidArgument);
}

}  // namespace
}  // namespace dnaadv
