#include "commands.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>

#include "dnaadv/campaign.hpp"
#include "dnaadv/config_io.hpp"
#include "dnaadv/errors.hpp"
#include "dnaadv/external_oracle.hpp"
#include "dnaadv/report.hpp"

namespace dnaadv::cli {
namespace {

ordered_json parse(const std::string& text) { return ordered_json::parse(text); }

template <class T>
T field(const ordered_json& doc, const char* key) {
  try {
    return doc.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("manifest config field '") + key + "': " + e.what());
  }
}

std::string sub_text(const ordered_json& doc, const char* key) {
  if (!doc.contains(key)) throw InvalidArgument(std::string("manifest config lacks '") + key + "'");
  return doc.at(key).dump();
}

void print_summary(const ordered_json& summary) { std::cout << summary.dump() << '\n' << std::flush; }

void add_split_inputs(Manifest& m, const fs::path& dir, const std::string& split) {
  m.add_input(dir / (split + ".fasta"));
  m.add_input(dir / (split + ".tsv"));
}

void ensure_parent(const fs::path& out) {
  if (out.has_parent_path()) fs::create_directories(out.parent_path());
}

std::vector<double> default_grid(GridAxis axis) {
  if (axis == GridAxis::Epsilon) return {0.1, 0.2, 0.3, 0.4, 0.5};
  return {10, 20, 30, 40, 50};
}

ordered_json row_json(const CampaignRow& r) {
  auto opt = [](const std::optional<double>& v) { return v ? ordered_json(*v) : ordered_json(nullptr); };
  return {{"grid_value", r.grid_value},       {"clean_acc", r.clean_acc},
          {"attacked_acc", r.attacked_acc},   {"success_rate", opt(r.success_rate)},
          {"mean_queries", r.mean_queries},   {"gc_pearson", opt(r.gc_pearson)}};
}

}  // namespace

std::size_t resolve_threads(std::optional<std::size_t> flag) {
  if (flag && *flag > 0) return *flag;
  if (const char* env = std::getenv("DNAADV_THREADS")) {
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return v;
    std::cerr << "dnaadv: ignoring DNAADV_THREADS='" << env << "'\n";
  }
  return default_thread_count();
}

// ---- option (de)serialisation -------------------------------------------------------

ordered_json to_json(const GenDataOptions& o) {
  return {{"spec", parse(dnaadv::to_json(o.spec))},
          {"split", parse(dnaadv::to_json(o.split))},
          {"out", o.out.string()}};
}

GenDataOptions gen_data_options_from_json(const ordered_json& doc) {
  GenDataOptions o;
  o.spec = synthetic_spec_from_json(sub_text(doc, "spec"), o.spec);
  o.split = split_spec_from_json(sub_text(doc, "split"), o.split);
  o.out = field<std::string>(doc, "out");
  return o;
}

ordered_json to_json(const TrainOptions& o) {
  return {{"data", o.data.string()},
          {"k", o.k},
          {"train", parse(dnaadv::to_json(o.train))},
          {"out", o.out.string()}};
}

TrainOptions train_options_from_json(const ordered_json& doc) {
  TrainOptions o;
  o.data = field<std::string>(doc, "data");
  o.k = field<int>(doc, "k");
  o.train = train_config_from_json(sub_text(doc, "train"));
  o.out = field<std::string>(doc, "out");
  return o;
}

ordered_json to_json(const AttackOptions& o) {
  return {{"model", o.model.string()},
          {"oracle_cmd", o.oracle_cmd},
          {"oracle_timeout_s", o.oracle_timeout_s},
          {"data", o.data.string()},
          {"split", o.split},
          {"kind", to_string(o.kind)},
          {"grid_axis", to_string(o.axis)},
          {"grid", o.grid},
          {"attack", parse(dnaadv::to_json(o.attack))},
          {"threads", o.threads},
          {"out", o.out.string()}};
}

AttackOptions attack_options_from_json(const ordered_json& doc) {
  AttackOptions o;
  o.model = field<std::string>(doc, "model");
  o.oracle_cmd = field<std::string>(doc, "oracle_cmd");
  o.oracle_timeout_s = field<double>(doc, "oracle_timeout_s");
  o.data = field<std::string>(doc, "data");
  o.split = field<std::string>(doc, "split");
  o.kind = parse_attack_kind(field<std::string>(doc, "kind"));
  o.axis = parse_grid_axis(field<std::string>(doc, "grid_axis"));
  o.grid = field<std::vector<double>>(doc, "grid");
  o.attack = attack_config_from_json(sub_text(doc, "attack"));
  o.threads = field<std::size_t>(doc, "threads");
  o.out = field<std::string>(doc, "out");
  return o;
}

ordered_json to_json(const AdvTrainOptions& o) {
  return {{"data", o.data.string()},
          {"config", parse(dnaadv::to_json(o.config))},
          {"threads", o.config.threads},
          {"out", o.out.string()},
          {"log", o.log.string()}};
}

AdvTrainOptions adv_train_options_from_json(const ordered_json& doc) {
  AdvTrainOptions o;
  o.data = field<std::string>(doc, "data");
  o.config = adv_train_config_from_json(sub_text(doc, "config"));
  o.config.threads = field<std::size_t>(doc, "threads");
  o.out = field<std::string>(doc, "out");
  o.log = field<std::string>(doc, "log");
  return o;
}

ordered_json to_json(const NoiseOptions& o) {
  return {{"model", o.model.string()},
          {"data", o.data.string()},
          {"split", o.split},
          {"error_model", parse(dnaadv::to_json(o.error_model))},
          {"out", o.out.string()}};
}

NoiseOptions noise_options_from_json(const ordered_json& doc) {
  NoiseOptions o;
  o.model = field<std::string>(doc, "model");
  o.data = field<std::string>(doc, "data");
  o.split = field<std::string>(doc, "split");
  o.error_model = error_model_from_json(sub_text(doc, "error_model"));
  o.out = field<std::string>(doc, "out");
  return o;
}

// ---- commands -------------------------------------------------------------------------

int run_gen_data(const GenDataOptions& o) {
  const auto ds = generate_synthetic(o.spec);
  const auto parts = split(ds, o.split);
  fs::create_directories(o.out);
  Manifest m{"gen-data", to_json(o), {}, {}};
  for (const auto& [name, part] : {std::pair<const char*, const LabeledDataset*>{"train", &parts.train},
                                   {"test", &parts.test},
                                   {"val", &parts.val}}) {
    save_dataset(*part, o.out, name);
    m.add_output(o.out / (std::string(name) + ".fasta"));
    m.add_output(o.out / (std::string(name) + ".tsv"));
  }
  m.write(o.out / "manifest.json");
  print_summary({{"command", "gen-data"},
                 {"out", o.out.string()},
                 {"classes", ds.classes()},
                 {"train", parts.train.size()},
                 {"test", parts.test.size()},
                 {"val", parts.val.size()}});
  return kExitOk;
}

int run_train(const TrainOptions& o) {
  KmerFeaturizer check(o.k);  // range check before touching the data
  const auto train_set = load_dataset(o.data, "train");
  const auto test_set = load_dataset(o.data, "test");
  const auto model = train(train_set, o.k, o.train);
  ensure_parent(o.out);
  save_model(model, o.out);

  Manifest m{"train", to_json(o), {}, {}};
  add_split_inputs(m, o.data, "train");
  add_split_inputs(m, o.data, "test");
  m.add_output(o.out);
  m.write(manifest_path_for(o.out));
  print_summary({{"command", "train"},
                 {"model", o.out.string()},
                 {"k", o.k},
                 {"final_train_loss", model.final_train_loss()},
                 {"train_accuracy", accuracy(model, train_set)},
                 {"test_accuracy", accuracy(model, test_set)}});
  return kExitOk;
}

int run_attack(const AttackOptions& in) {
  AttackOptions o = in;
  if (o.model.empty() == o.oracle_cmd.empty())
    throw InvalidArgument("give exactly one of --model and --oracle-cmd");
  if (o.grid.empty()) o.grid = default_grid(o.axis);
  const CampaignGrid grid{o.kind, o.axis, o.grid,
                          o.axis == GridAxis::Epsilon ? static_cast<double>(o.attack.iterations)
                                                      : o.attack.epsilon};
  grid.validate();
  o.attack.validate();

  const auto test_set = load_dataset(o.data, o.split);
  Manifest m{"attack", to_json(o), {}, {}};
  add_split_inputs(m, o.data, o.split);

  std::unique_ptr<ClassifierOracle> oracle;
  std::string victim;
  if (!o.model.empty()) {
    m.add_input(o.model);
    oracle = std::make_unique<ModelOracle>(load_model(o.model));
    victim = "sha256:" + m.inputs.at(o.model.string()).substr(0, 16);
  } else {
    ExternalOracleOptions eo;
    eo.timeout = std::chrono::milliseconds(static_cast<long long>(o.oracle_timeout_s * 1000));
    oracle = spawn_external_oracle(o.oracle_cmd, test_set.classes().size(), eo);
    victim = "external";
  }

  const auto report = run_campaign(*oracle, test_set, grid, o.attack, {o.threads, victim});
  ensure_parent(o.out);
  const bool as_json = o.out.extension() == ".json";
  emit_report(report, o.out, as_json ? ReportFormat::Json : ReportFormat::Csv);
  m.add_output(o.out);
  m.write(manifest_path_for(o.out));

  ordered_json rows = ordered_json::array();
  for (const auto& r : report.rows) rows.push_back(row_json(r));
  print_summary({{"command", "attack"},
                 {"report", o.out.string()},
                 {"kind", to_string(o.kind)},
                 {"grid_axis", to_string(o.axis)},
                 {"complete", report.complete},
                 {"rows", rows}});
  if (!report.complete) {
    std::cerr << "dnaadv: campaign incomplete: " << report.incomplete_reason << '\n';
    return kExitIncomplete;
  }
  return kExitOk;
}

int run_adv_train(const AdvTrainOptions& in) {
  AdvTrainOptions o = in;
  if (o.log.empty()) {
    auto stem = o.out.filename();
    stem.replace_extension();
    o.log = o.out.parent_path() / (stem.string() + ".log.csv");
  }
  const auto train_set = load_dataset(o.data, "train");
  const auto result = adversarial_train(train_set, o.config);
  ensure_parent(o.out);
  save_model(result.model, o.out);
  write_training_log(result.log, o.log);

  Manifest m{"advtrain", to_json(o), {}, {}};
  add_split_inputs(m, o.data, "train");
  m.add_output(o.out);
  m.add_output(o.log);
  m.write(manifest_path_for(o.out));

  ordered_json summary = {{"command", "advtrain"},
                          {"model", o.out.string()},
                          {"log", o.log.string()},
                          {"epochs", result.log.size()},
                          {"train_accuracy", accuracy(result.model, train_set)}};
  if (fs::exists(o.data / "test.fasta"))
    summary["test_accuracy"] = accuracy(result.model, load_dataset(o.data, "test"));
  print_summary(summary);
  return kExitOk;
}

int run_noise(const NoiseOptions& o) {
  const auto test_set = load_dataset(o.data, o.split);
  ModelOracle oracle(load_model(o.model));
  const auto eval = evaluate_under_noise(oracle, test_set, o.error_model);
  const ordered_json doc = {{"clean_accuracy", eval.clean_accuracy},
                            {"noisy_accuracy", eval.noisy_accuracy},
                            {"samples", eval.samples},
                            {"mean_length_change", eval.mean_length_change},
                            {"error_model", parse(dnaadv::to_json(o.error_model))}};
  ensure_parent(o.out);
  {
    std::ofstream out(o.out, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write '" + o.out.string() + "'");
    out << doc.dump(2) << '\n';
  }
  Manifest m{"noise", to_json(o), {}, {}};
  m.add_input(o.model);
  add_split_inputs(m, o.data, o.split);
  m.add_output(o.out);
  m.write(manifest_path_for(o.out));
  ordered_json summary = {{"command", "noise"}, {"report", o.out.string()}};
  for (const auto& [k, v] : doc.items()) summary[k] = v;
  print_summary(summary);
  return kExitOk;
}

int run_replay(const fs::path& manifest, const std::optional<fs::path>& out,
               std::optional<std::size_t> threads) {
  const Manifest m = Manifest::read(manifest);
  m.verify_inputs();
  if (m.command == "gen-data") {
    auto o = gen_data_options_from_json(m.config);
    if (out) o.out = *out;
    return run_gen_data(o);
  }
  if (m.command == "train") {
    auto o = train_options_from_json(m.config);
    if (out) o.out = *out;
    return run_train(o);
  }
  if (m.command == "attack") {
    auto o = attack_options_from_json(m.config);
    if (out) o.out = *out;
    if (threads) o.threads = *threads;
    return run_attack(o);
  }
  if (m.command == "advtrain") {
    auto o = adv_train_options_from_json(m.config);
    if (out) {
      o.out = *out;
      o.log.clear();
    }
    if (threads) o.config.threads = *threads;
    return run_adv_train(o);
  }
  if (m.command == "noise") {
    auto o = noise_options_from_json(m.config);
    if (out) o.out = *out;
    return run_noise(o);
  }
  throw InvalidArgument("manifest names unknown command '" + m.command + "'");
}

}  // namespace dnaadv::cli
