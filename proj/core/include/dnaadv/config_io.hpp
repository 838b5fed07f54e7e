#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "dnaadv/attack.hpp"
#include "dnaadv/dataset.hpp"
#include "dnaadv/defense.hpp"
#include "dnaadv/kmer_model.hpp"
#include "dnaadv/noise.hpp"
#include "dnaadv/synthetic.hpp"

// JSON forms of the configuration types. Field names match the struct members
// (AdvTrainConfig nests "train" and "attack"). Parsing starts from `base`, so absent
// fields keep their value; unknown fields and ill-typed values raise InvalidArgument.
namespace dnaadv {

SyntheticSpec synthetic_spec_from_json(std::string_view text, SyntheticSpec base = {});
std::string to_json(const SyntheticSpec& spec);

TrainConfig train_config_from_json(std::string_view text, TrainConfig base = {});
std::string to_json(const TrainConfig& cfg);

AttackConfig attack_config_from_json(std::string_view text, AttackConfig base = {});
std::string to_json(const AttackConfig& cfg);

AdvTrainConfig adv_train_config_from_json(std::string_view text, AdvTrainConfig base = {});
std::string to_json(const AdvTrainConfig& cfg);

ErrorModel error_model_from_json(std::string_view text, ErrorModel base = {});
std::string to_json(const ErrorModel& em);

SplitSpec split_spec_from_json(std::string_view text, SplitSpec base = {});
std::string to_json(const SplitSpec& spec);

/// Whole file as a string. Throws IoError.
std::string read_text_file(const std::filesystem::path& path);

}  // namespace dnaadv
