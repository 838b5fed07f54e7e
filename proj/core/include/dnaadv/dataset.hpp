#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "dnaadv/sequence.hpp"

namespace dnaadv {

struct FastaRecord {
  std::string id;
  DnaSequence seq;
};

/// Records in file order. The id is the first whitespace-delimited token of the header;
/// multi-line bodies are concatenated. Throws MalformedFasta, DuplicateId, InvalidSymbol.
std::vector<FastaRecord> read_fasta(std::istream& in, const AmbiguityPolicy& policy = {});
std::vector<FastaRecord> load_fasta(const std::filesystem::path& path,
                                    const AmbiguityPolicy& policy = {});
void write_fasta(std::ostream& out, std::span<const FastaRecord> records,
                 std::size_t line_width = 60);

/// Two-column TSV (id<TAB>label), no header row.
struct LabelTable {
  std::vector<std::pair<std::string, std::string>> rows;  // file order
  std::vector<std::string> classes;                       // sorted distinct labels

  const std::string* find(std::string_view id) const;

 private:
  std::unordered_map<std::string, std::size_t> index_;
  friend LabelTable read_labels(std::istream&);
};

LabelTable read_labels(std::istream& in);
LabelTable load_labels(const std::filesystem::path& path);

struct LabeledRecord {
  std::string id;
  DnaSequence seq;
  std::size_t label;
};

/// Records with class indices into `classes`. Invariants: unique ids,
/// label < classes.size(), at least two classes.
class LabeledDataset {
 public:
  LabeledDataset(std::vector<LabeledRecord> records, std::vector<std::string> classes);

  const std::vector<LabeledRecord>& records() const noexcept { return records_; }
  const std::vector<std::string>& classes() const noexcept { return classes_; }
  std::size_t size() const noexcept { return records_.size(); }
  bool empty() const noexcept { return records_.empty(); }
  const LabeledRecord& operator[](std::size_t i) const noexcept { return records_[i]; }

  /// Subset by record index, in the order given.
  LabeledDataset subset(std::span<const std::size_t> indices) const;

 private:
  std::vector<LabeledRecord> records_;
  std::vector<std::string> classes_;
};

/// Joins sequences with labels, keeping FASTA order. Throws MissingLabel.
LabeledDataset make_dataset(std::vector<FastaRecord> sequences, const LabelTable& labels);

/// Reads `<dir>/<name>.fasta` and `<dir>/<name>.tsv`.
LabeledDataset load_dataset(const std::filesystem::path& dir, std::string_view name,
                            const AmbiguityPolicy& policy = {});
void save_dataset(const LabeledDataset& ds, const std::filesystem::path& dir,
                  std::string_view name);

struct SplitSpec {
  double train_frac = 0.75;
  double test_frac = 0.20;
  double val_frac = 0.05;
  std::uint64_t seed = 13;

  void validate() const;
};

struct DatasetSplits {
  LabeledDataset train;
  LabeledDataset test;
  LabeledDataset val;
};

/// Stratified seeded split. Per class with n records: floor(train_frac * n) go to train,
/// floor(test_frac * n) to test, the remainder to val. Within each split records keep
/// their dataset order. Classes with no records are skipped; any other class that would
/// leave a split empty raises TooFewSamples.
DatasetSplits split(const LabeledDataset& ds, const SplitSpec& spec);

}  // namespace dnaadv
