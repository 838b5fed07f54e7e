#include "dnaadv/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <set>
#include <unordered_set>

#include "dnaadv/errors.hpp"
#include "dnaadv/rng.hpp"

namespace dnaadv {
namespace {

void strip_cr(std::string& line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
}

bool is_blank(std::string_view line) {
  return std::all_of(line.begin(), line.end(),
                     [](char c) { return std::isspace(static_cast<unsigned char>(c)); });
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  return in;
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  return out;
}

}  // namespace

std::vector<FastaRecord> read_fasta(std::istream& in, const AmbiguityPolicy& policy) {
  std::vector<FastaRecord> records;
  std::unordered_set<std::string> seen;

  std::string id;
  std::string body;
  std::size_t header_line = 0;
  bool open = false;

  auto flush = [&] {
    if (!open) return;
    if (body.empty()) throw MalformedFasta(header_line);
    records.push_back({id, parse_sequence(body, policy)});
    body.clear();
  };

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    strip_cr(line);
    if (!line.empty() && line.front() == '>') {
      flush();
      const auto begin = line.find_first_not_of(" \t", 1);
      if (begin == std::string::npos) throw MalformedFasta(line_no);
      const auto end = line.find_first_of(" \t", begin);
      id = line.substr(begin, end == std::string::npos ? std::string::npos : end - begin);
      if (!seen.insert(id).second) throw DuplicateId(id);
      header_line = line_no;
      open = true;
    } else if (is_blank(line)) {
      continue;
    } else {
      if (!open) throw MalformedFasta(line_no);
      body += line;
    }
  }
  flush();
  return records;
}

std::vector<FastaRecord> load_fasta(const std::filesystem::path& path,
                                    const AmbiguityPolicy& policy) {
  auto in = open_input(path);
  return read_fasta(in, policy);
}

void write_fasta(std::ostream& out, std::span<const FastaRecord> records,
                 std::size_t line_width) {
  for (const auto& r : records) {
    out << '>' << r.id << '\n';
    const std::string_view s = r.seq.view();
    for (std::size_t i = 0; i < s.size(); i += line_width) out << s.substr(i, line_width) << '\n';
  }
}

const std::string* LabelTable::find(std::string_view id) const {
  const auto it = index_.find(std::string(id));
  return it == index_.end() ? nullptr : &rows[it->second].second;
}

LabelTable read_labels(std::istream& in) {
  LabelTable table;
  std::set<std::string> classes;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    strip_cr(line);
    if (line.empty()) continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos || tab == 0 || tab + 1 == line.size() ||
        line.find('\t', tab + 1) != std::string::npos)
      throw MalformedRow(line_no);
    std::string id = line.substr(0, tab);
    std::string label = line.substr(tab + 1);
    if (!table.index_.emplace(id, table.rows.size()).second) throw DuplicateId(id);
    classes.insert(label);
    table.rows.emplace_back(std::move(id), std::move(label));
  }
  table.classes.assign(classes.begin(), classes.end());
  return table;
}

LabelTable load_labels(const std::filesystem::path& path) {
  auto in = open_input(path);
  return read_labels(in);
}

LabeledDataset::LabeledDataset(std::vector<LabeledRecord> records,
                               std::vector<std::string> classes)
    : records_(std::move(records)), classes_(std::move(classes)) {
  if (classes_.size() < 2) throw DegenerateDataset("a dataset needs at least two classes");
  std::unordered_set<std::string> ids;
  for (const auto& r : records_) {
    if (r.label >= classes_.size())
      throw InvalidArgument("label index out of range for record '" + r.id + "'");
    if (!ids.insert(r.id).second) throw DuplicateId(r.id);
  }
}

LabeledDataset LabeledDataset::subset(std::span<const std::size_t> indices) const {
  std::vector<LabeledRecord> picked;
  picked.reserve(indices.size());
  for (std::size_t i : indices) picked.push_back(records_.at(i));
  return LabeledDataset(std::move(picked), classes_);
}

LabeledDataset make_dataset(std::vector<FastaRecord> sequences, const LabelTable& labels) {
  std::map<std::string, std::size_t, std::less<>> class_index;
  for (std::size_t i = 0; i < labels.classes.size(); ++i) class_index.emplace(labels.classes[i], i);
  std::vector<LabeledRecord> records;
  records.reserve(sequences.size());
  for (auto& fr : sequences) {
    const std::string* label = labels.find(fr.id);
    if (label == nullptr) throw MissingLabel(fr.id);
    records.push_back({std::move(fr.id), std::move(fr.seq), class_index.at(*label)});
  }
  return LabeledDataset(std::move(records), labels.classes);
}

LabeledDataset load_dataset(const std::filesystem::path& dir, std::string_view name,
                            const AmbiguityPolicy& policy) {
  const std::string stem(name);
  auto sequences = load_fasta(dir / (stem + ".fasta"), policy);
  const auto labels = load_labels(dir / (stem + ".tsv"));
  return make_dataset(std::move(sequences), labels);
}

void save_dataset(const LabeledDataset& ds, const std::filesystem::path& dir,
                  std::string_view name) {
  const std::string stem(name);
  std::filesystem::create_directories(dir);
  std::vector<FastaRecord> fasta;
  fasta.reserve(ds.size());
  for (const auto& r : ds.records()) fasta.push_back({r.id, r.seq});
  auto fa = open_output(dir / (stem + ".fasta"));
  write_fasta(fa, fasta);
  auto tsv = open_output(dir / (stem + ".tsv"));
  for (const auto& r : ds.records()) tsv << r.id << '\t' << ds.classes()[r.label] << '\n';
  if (!fa || !tsv) throw IoError("failed writing dataset '" + stem + "'");
}

void SplitSpec::validate() const {
  for (double f : {train_frac, test_frac, val_frac})
    if (!(f > 0.0 && f < 1.0)) throw InvalidArgument("split fractions must lie in (0,1)");
  if (std::abs(train_frac + test_frac + val_frac - 1.0) > 1e-9)
    throw InvalidArgument("split fractions must sum to 1");
}

DatasetSplits split(const LabeledDataset& ds, const SplitSpec& spec) {
  spec.validate();
  std::vector<std::vector<std::size_t>> by_class(ds.classes().size());
  for (std::size_t i = 0; i < ds.size(); ++i) by_class[ds[i].label].push_back(i);

  // Guard against products like 0.29 * 100 landing just below an integer.
  auto share = [](double frac, std::size_t n) {
    return static_cast<std::size_t>(std::floor(frac * static_cast<double>(n) + 1e-9));
  };

  Rng rng(spec.seed);
  std::vector<std::size_t> train, test, val;
  for (std::size_t c = 0; c < by_class.size(); ++c) {
    auto& members = by_class[c];
    if (members.empty()) continue;
    std::shuffle(members.begin(), members.end(), rng);
    const std::size_t n = members.size();
    const std::size_t n_train = share(spec.train_frac, n);
    const std::size_t n_test = share(spec.test_frac, n);
    if (n_train == 0 || n_test == 0 || n_train + n_test >= n)
      throw TooFewSamples(ds.classes()[c]);
    train.insert(train.end(), members.begin(), members.begin() + n_train);
    test.insert(test.end(), members.begin() + n_train, members.begin() + n_train + n_test);
    val.insert(val.end(), members.begin() + n_train + n_test, members.end());
  }
  for (auto* part : {&train, &test, &val}) std::sort(part->begin(), part->end());
  return {ds.subset(train), ds.subset(test), ds.subset(val)};
}

}  // namespace dnaadv
