#include "dnaadv/config_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "dnaadv/errors.hpp"
#include "json.hpp"

namespace dnaadv {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

json parse_object(std::string_view text, std::string_view what) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string(what) + " is not valid JSON: " + e.what());
  }
  if (!doc.is_object()) throw InvalidArgument(std::string(what) + " must be a JSON object");
  return doc;
}

void reject_unknown(const json& doc, std::initializer_list<std::string_view> known,
                    std::string_view what) {
  const std::set<std::string_view> allowed(known);
  for (const auto& [key, value] : doc.items())
    if (!allowed.contains(key))
      throw InvalidArgument("unknown field '" + key + "' in " + std::string(what));
}

template <typename T>
void read_field(const json& doc, const char* key, T& target, std::string_view what) {
  if (!doc.contains(key)) return;
  try {
    target = doc.at(key).get<T>();
  } catch (const json::exception&) {
    throw InvalidArgument("field '" + std::string(key) + "' in " + std::string(what) +
                          " has the wrong type");
  }
}

template <typename Fn>
auto guarded(std::string_view what, Fn&& fn) {
  try {
    return fn();
  } catch (const json::exception& e) {
    throw InvalidArgument("malformed " + std::string(what) + ": " + e.what());
  }
}

void apply_train(const json& doc, TrainConfig& cfg) {
  constexpr std::string_view what = "train config";
  reject_unknown(doc, {"learning_rate", "epochs", "batch_size", "l2", "seed"}, what);
  read_field(doc, "learning_rate", cfg.learning_rate, what);
  read_field(doc, "epochs", cfg.epochs, what);
  read_field(doc, "batch_size", cfg.batch_size, what);
  read_field(doc, "l2", cfg.l2, what);
  read_field(doc, "seed", cfg.seed, what);
}

ordered_json train_json(const TrainConfig& cfg) {
  return {{"learning_rate", cfg.learning_rate}, {"epochs", cfg.epochs},
          {"batch_size", cfg.batch_size},       {"l2", cfg.l2},
          {"seed", cfg.seed}};
}

void apply_attack(const json& doc, AttackConfig& cfg) {
  constexpr std::string_view what = "attack config";
  reject_unknown(doc,
                 {"epsilon", "iterations", "max_queries", "candidate_sample", "seed", "frame",
                  "backtranslation_mode"},
                 what);
  read_field(doc, "epsilon", cfg.epsilon, what);
  read_field(doc, "iterations", cfg.iterations, what);
  read_field(doc, "max_queries", cfg.max_queries, what);
  read_field(doc, "candidate_sample", cfg.candidate_sample, what);
  read_field(doc, "seed", cfg.seed, what);
  read_field(doc, "frame", cfg.frame, what);
  std::string mode(to_string(cfg.backtranslation_mode));
  read_field(doc, "backtranslation_mode", mode, what);
  cfg.backtranslation_mode = parse_backtranslation_mode(mode);
}

ordered_json attack_json(const AttackConfig& cfg) {
  return {{"epsilon", cfg.epsilon},
          {"iterations", cfg.iterations},
          {"max_queries", cfg.max_queries},
          {"candidate_sample", cfg.candidate_sample},
          {"seed", cfg.seed},
          {"frame", cfg.frame},
          {"backtranslation_mode", to_string(cfg.backtranslation_mode)}};
}

}  // namespace

SyntheticSpec synthetic_spec_from_json(std::string_view text, SyntheticSpec spec) {
  constexpr std::string_view what = "synthetic spec";
  const json doc = parse_object(text, what);
  reject_unknown(doc,
                 {"n_classes", "seq_len", "motifs_per_class", "samples_per_class",
                  "background_gc", "seed"},
                 what);
  read_field(doc, "n_classes", spec.n_classes, what);
  read_field(doc, "seq_len", spec.seq_len, what);
  read_field(doc, "samples_per_class", spec.samples_per_class, what);
  read_field(doc, "background_gc", spec.background_gc, what);
  read_field(doc, "seed", spec.seed, what);
  if (doc.contains("motifs_per_class")) {
    spec.motifs_per_class = guarded(what, [&] {
      std::vector<std::vector<PlantedMotif>> all;
      for (const auto& cls : doc.at("motifs_per_class")) {
        auto& motifs = all.emplace_back();
        for (const auto& m : cls) {
          reject_unknown(m, {"motif", "probability"}, "motif entry");
          motifs.push_back({m.at("motif").get<std::string>(), m.value("probability", 1.0)});
        }
      }
      return all;
    });
  }
  spec.validate();
  return spec;
}

std::string to_json(const SyntheticSpec& spec) {
  ordered_json motifs = ordered_json::array();
  for (const auto& cls : spec.motifs_per_class) {
    ordered_json list = ordered_json::array();
    for (const auto& m : cls) list.push_back({{"motif", m.motif}, {"probability", m.probability}});
    motifs.push_back(std::move(list));
  }
  ordered_json doc = {{"n_classes", spec.n_classes},
                      {"seq_len", spec.seq_len},
                      {"motifs_per_class", std::move(motifs)},
                      {"samples_per_class", spec.samples_per_class},
                      {"background_gc", spec.background_gc},
                      {"seed", spec.seed}};
  return doc.dump(2) + "\n";
}

TrainConfig train_config_from_json(std::string_view text, TrainConfig cfg) {
  apply_train(parse_object(text, "train config"), cfg);
  cfg.validate();
  return cfg;
}

std::string to_json(const TrainConfig& cfg) { return train_json(cfg).dump(2) + "\n"; }

AttackConfig attack_config_from_json(std::string_view text, AttackConfig cfg) {
  apply_attack(parse_object(text, "attack config"), cfg);
  cfg.validate();
  return cfg;
}

std::string to_json(const AttackConfig& cfg) { return attack_json(cfg).dump(2) + "\n"; }

AdvTrainConfig adv_train_config_from_json(std::string_view text, AdvTrainConfig cfg) {
  constexpr std::string_view what = "adversarial training config";
  const json doc = parse_object(text, what);
  reject_unknown(doc, {"train", "attack", "kind", "k", "mix_ratio", "regenerate"}, what);
  if (doc.contains("train")) apply_train(doc.at("train"), cfg.base);
  if (doc.contains("attack")) apply_attack(doc.at("attack"), cfg.attack);
  std::string kind(to_string(cfg.kind));
  read_field(doc, "kind", kind, what);
  cfg.kind = parse_attack_kind(kind);
  read_field(doc, "k", cfg.k, what);
  read_field(doc, "mix_ratio", cfg.mix_ratio, what);
  read_field(doc, "regenerate", cfg.regenerate, what);
  cfg.validate();
  return cfg;
}

std::string to_json(const AdvTrainConfig& cfg) {
  ordered_json doc = {{"train", train_json(cfg.base)},
                      {"attack", attack_json(cfg.attack)},
                      {"kind", to_string(cfg.kind)},
                      {"k", cfg.k},
                      {"mix_ratio", cfg.mix_ratio},
                      {"regenerate", cfg.regenerate}};
  return doc.dump(2) + "\n";
}

ErrorModel error_model_from_json(std::string_view text, ErrorModel em) {
  constexpr std::string_view what = "error model";
  const json doc = parse_object(text, what);
  reject_unknown(doc, {"sub_rate", "ins_rate", "del_rate", "seed"}, what);
  read_field(doc, "sub_rate", em.sub_rate, what);
  read_field(doc, "ins_rate", em.ins_rate, what);
  read_field(doc, "del_rate", em.del_rate, what);
  read_field(doc, "seed", em.seed, what);
  em.validate();
  return em;
}

std::string to_json(const ErrorModel& em) {
  ordered_json doc = {{"sub_rate", em.sub_rate},
                      {"ins_rate", em.ins_rate},
                      {"del_rate", em.del_rate},
                      {"seed", em.seed}};
  return doc.dump(2) + "\n";
}

SplitSpec split_spec_from_json(std::string_view text, SplitSpec spec) {
  constexpr std::string_view what = "split spec";
  const json doc = parse_object(text, what);
  reject_unknown(doc, {"train_frac", "test_frac", "val_frac", "seed"}, what);
  read_field(doc, "train_frac", spec.train_frac, what);
  read_field(doc, "test_frac", spec.test_frac, what);
  read_field(doc, "val_frac", spec.val_frac, what);
  read_field(doc, "seed", spec.seed, what);
  spec.validate();
  return spec;
}

std::string to_json(const SplitSpec& spec) {
  ordered_json doc = {{"train_frac", spec.train_frac},
                      {"test_frac", spec.test_frac},
                      {"val_frac", spec.val_frac},
                      {"seed", spec.seed}};
  return doc.dump(2) + "\n";
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace dnaadv
