#include <benchmark/benchmark.h>

#include <random>
#include <string>

#include "dnaadv/attack.hpp"
#include "dnaadv/kmer_model.hpp"
#include "dnaadv/noise.hpp"
#include "dnaadv/oracle.hpp"
#include "dnaadv/rng.hpp"
#include "dnaadv/synthetic.hpp"

namespace {

using namespace dnaadv;

DnaSequence random_dna(std::size_t len, std::uint64_t seed) {
  Rng rng(seed);
  std::string s(len, 'A');
  for (char& c : s) c = "ACGT"[std::uniform_int_distribution<int>(0, 3)(rng)];
  return DnaSequence(s);
}

const LinearKmerModel& benchmark_model() {
  static const LinearKmerModel model = train(generate_synthetic(SyntheticSpec::benchmark()), 3, {});
  return model;
}

void BM_Featurize(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  const KmerFeaturizer f(k);
  const auto seq = random_dna(300, 1);
  for (auto _ : state) benchmark::DoNotOptimize(f.featurize(seq));
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_Featurize)->DenseRange(1, 6);

void BM_PredictBatch(benchmark::State& state) {
  ModelOracle oracle(benchmark_model());
  std::vector<DnaSequence> batch;
  for (std::int64_t i = 0; i < state.range(0); ++i) batch.push_back(random_dna(300, 10 + i));
  for (auto _ : state) benchmark::DoNotOptimize(oracle.predict_proba(batch));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_PredictBatch)->Arg(1)->Arg(64)->Arg(900);

void BM_Attack(benchmark::State& state) {
  const auto kind = static_cast<AttackKind>(state.range(0));
  ModelOracle oracle(benchmark_model());
  auto records = generate_synthetic(SyntheticSpec::benchmark()).records();
  const auto& rec = records.back();  // motif-bearing class-1 record
  AttackConfig cfg;
  cfg.epsilon = 0.3;
  cfg.iterations = 30;
  cfg.candidate_sample = 1;
  for (auto _ : state) benchmark::DoNotOptimize(run_attack(kind, oracle, rec.seq, rec.label, cfg));
  state.SetLabel(std::string(to_string(kind)));
}
BENCHMARK(BM_Attack)
    ->Arg(static_cast<int>(AttackKind::Nucleotide))
    ->Arg(static_cast<int>(AttackKind::Codon))
    ->Arg(static_cast<int>(AttackKind::Backtranslation))
    ->Unit(benchmark::kMillisecond);

void BM_Corrupt(benchmark::State& state) {
  const auto seq = random_dna(10'000, 3);
  ErrorModel em{0.01, 0.005, 0.005, 13};
  for (auto _ : state) benchmark::DoNotOptimize(corrupt(seq, em));
  state.SetBytesProcessed(state.iterations() * 10'000);
}
BENCHMARK(BM_Corrupt);

}  // namespace

BENCHMARK_MAIN();
