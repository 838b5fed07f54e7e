#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "commands.hpp"
#include "dnaadv/config_io.hpp"
#include "dnaadv/errors.hpp"

namespace {

using namespace dnaadv;
using namespace dnaadv::cli;

std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) throw InvalidArgument("bad grid value '" + item + "'");
    out.push_back(v);
  }
  if (out.empty()) throw InvalidArgument("empty grid");
  return out;
}

// Applies `value` when its flag was given on the command line.
template <class T, class U>
void override_if(const CLI::Option* flag, T& target, const U& value) {
  if (flag->count() > 0) target = static_cast<T>(value);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dnaadv: adversarial attacks and defenses for DNA sequence classifiers"};
  app.require_subcommand(1);
  app.set_version_flag("--version", DNAADV_VERSION);

  std::optional<std::size_t> threads_flag;
  const auto add_threads = [&](CLI::App* cmd) {
    cmd->add_option("--threads", threads_flag, "worker threads (default: $DNAADV_THREADS or all cores)");
  };

  // gen-data
  auto* gen = app.add_subcommand("gen-data", "generate the synthetic benchmark and split it");
  std::string gen_spec, gen_split, gen_out;
  gen->add_option("--spec", gen_spec, "synthetic spec JSON (default: built-in benchmark)");
  gen->add_option("--split", gen_split, "split spec JSON");
  gen->add_option("--out", gen_out, "output directory")->required();

  // train
  auto* trn = app.add_subcommand("train", "train the k-mer victim on <data>/train");
  std::string trn_data, trn_config, trn_out;
  int trn_k = 3;
  double trn_lr = 0;
  std::size_t trn_epochs = 0;
  std::uint64_t trn_seed = 0;
  trn->add_option("--data", trn_data, "dataset directory")->required();
  trn->add_option("--k", trn_k, "k-mer length (1..8)")->capture_default_str();
  trn->add_option("--config", trn_config, "training config JSON");
  auto* trn_lr_opt = trn->add_option("--lr", trn_lr, "learning rate");
  auto* trn_epochs_opt = trn->add_option("--epochs", trn_epochs, "epochs");
  auto* trn_seed_opt = trn->add_option("--seed", trn_seed, "shuffle seed");
  trn->add_option("--out", trn_out, "model file")->required();

  // attack
  auto* atk = app.add_subcommand("attack", "run an attack campaign over a parameter grid");
  std::string atk_model, atk_cmd, atk_data, atk_split = "test", atk_kind = "nucleotide",
                         atk_axis = "epsilon", atk_grid, atk_config, atk_out, atk_mode;
  double atk_eps = 0, atk_timeout = 60;
  std::size_t atk_iters = 0, atk_maxq = 0, atk_sample = 0;
  std::uint64_t atk_seed = 0;
  int atk_frame = 0;
  auto* victim = atk->add_option_group("victim");
  victim->add_option("--model", atk_model, "saved model file");
  victim->add_option("--oracle-cmd", atk_cmd, "shell command of an external oracle");
  victim->require_option(1);
  atk->add_option("--oracle-timeout", atk_timeout, "seconds per external oracle round trip")
      ->capture_default_str();
  atk->add_option("--data", atk_data, "dataset directory")->required();
  atk->add_option("--split", atk_split, "split to attack")->capture_default_str();
  atk->add_option("--kind", atk_kind, "nucleotide | codon | backtranslation")->capture_default_str();
  atk->add_option("--grid-axis", atk_axis, "epsilon | iterations")->capture_default_str();
  atk->add_option("--grid", atk_grid, "comma-separated grid values");
  atk->add_option("--config", atk_config, "attack config JSON");
  auto* atk_eps_opt = atk->add_option("--epsilon", atk_eps, "budget (fixed value on the iterations axis)");
  auto* atk_iters_opt = atk->add_option("--iterations", atk_iters, "rounds (fixed value on the epsilon axis)");
  auto* atk_maxq_opt = atk->add_option("--max-queries", atk_maxq, "oracle calls per sample");
  auto* atk_sample_opt = atk->add_option("--candidate-sample", atk_sample, "units examined per round, 0 = all");
  auto* atk_seed_opt = atk->add_option("--seed", atk_seed, "campaign seed");
  auto* atk_frame_opt = atk->add_option("--frame", atk_frame, "reading frame for codon-level attacks");
  auto* atk_mode_opt = atk->add_option("--bt-mode", atk_mode, "greedy | random_resample");
  atk->add_option("--out", atk_out, "report file (.csv or .json)")->required();
  add_threads(atk);

  // advtrain
  auto* adv = app.add_subcommand("advtrain", "adversarially train the victim on <data>/train");
  std::string adv_data, adv_config, adv_out, adv_log;
  adv->add_option("--data", adv_data, "dataset directory")->required();
  adv->add_option("--attack-config", adv_config, "adversarial training config JSON");
  adv->add_option("--out", adv_out, "model file")->required();
  adv->add_option("--log", adv_log, "training log CSV (default: <model>.log.csv)");
  add_threads(adv);

  // noise
  auto* noi = app.add_subcommand("noise", "accuracy under simulated sequencing errors");
  std::string noi_model, noi_data, noi_split = "test", noi_em, noi_out;
  noi->add_option("--model", noi_model, "saved model file")->required();
  noi->add_option("--data", noi_data, "dataset directory")->required();
  noi->add_option("--split", noi_split, "split to evaluate")->capture_default_str();
  noi->add_option("--error-model", noi_em, "error model JSON")->required();
  noi->add_option("--out", noi_out, "report JSON")->required();

  // replay
  auto* rep = app.add_subcommand("replay", "rerun the command recorded in a manifest");
  std::string rep_manifest;
  std::optional<std::string> rep_out;
  rep->add_option("--manifest", rep_manifest, "manifest JSON")->required();
  rep->add_option("--out", rep_out, "write outputs here instead of the recorded path");
  add_threads(rep);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (gen->parsed()) {
      GenDataOptions o;
      if (!gen_spec.empty()) o.spec = synthetic_spec_from_json(read_text_file(gen_spec), o.spec);
      if (!gen_split.empty()) o.split = split_spec_from_json(read_text_file(gen_split), o.split);
      o.out = gen_out;
      return run_gen_data(o);
    }
    if (trn->parsed()) {
      TrainOptions o;
      o.data = trn_data;
      o.k = trn_k;
      if (!trn_config.empty()) o.train = train_config_from_json(read_text_file(trn_config));
      override_if(trn_lr_opt, o.train.learning_rate, trn_lr);
      override_if(trn_epochs_opt, o.train.epochs, trn_epochs);
      override_if(trn_seed_opt, o.train.seed, trn_seed);
      o.train.validate();
      o.out = trn_out;
      return run_train(o);
    }
    if (atk->parsed()) {
      AttackOptions o;
      o.model = atk_model;
      o.oracle_cmd = atk_cmd;
      o.oracle_timeout_s = atk_timeout;
      o.data = atk_data;
      o.split = atk_split;
      o.kind = parse_attack_kind(atk_kind);
      o.axis = parse_grid_axis(atk_axis);
      if (!atk_grid.empty()) o.grid = parse_grid(atk_grid);
      if (!atk_config.empty()) o.attack = attack_config_from_json(read_text_file(atk_config));
      override_if(atk_eps_opt, o.attack.epsilon, atk_eps);
      override_if(atk_iters_opt, o.attack.iterations, atk_iters);
      override_if(atk_maxq_opt, o.attack.max_queries, atk_maxq);
      override_if(atk_sample_opt, o.attack.candidate_sample, atk_sample);
      override_if(atk_seed_opt, o.attack.seed, atk_seed);
      override_if(atk_frame_opt, o.attack.frame, atk_frame);
      if (atk_mode_opt->count() > 0) o.attack.backtranslation_mode = parse_backtranslation_mode(atk_mode);
      o.threads = resolve_threads(threads_flag);
      o.out = atk_out;
      return run_attack(o);
    }
    if (adv->parsed()) {
      AdvTrainOptions o;
      o.data = adv_data;
      if (!adv_config.empty()) o.config = adv_train_config_from_json(read_text_file(adv_config));
      o.config.threads = resolve_threads(threads_flag);
      o.out = adv_out;
      o.log = adv_log;
      return run_adv_train(o);
    }
    if (noi->parsed()) {
      NoiseOptions o;
      o.model = noi_model;
      o.data = noi_data;
      o.split = noi_split;
      o.error_model = error_model_from_json(read_text_file(noi_em));
      o.out = noi_out;
      return run_noise(o);
    }
    if (rep->parsed()) {
      std::optional<std::filesystem::path> out;
      if (rep_out) out = *rep_out;
      return run_replay(rep_manifest, out, threads_flag);
    }
  } catch (const InvalidArgument& e) {
    std::cerr << "dnaadv: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "dnaadv: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}
