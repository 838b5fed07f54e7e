#include "dnaadv/report.hpp"

#include <cstdio>
#include <fstream>

#include "dnaadv/errors.hpp"
#include "json.hpp"

namespace dnaadv {
namespace {

using nlohmann::ordered_json;

ordered_json optional_number(const std::optional<double>& v) {
  return v ? ordered_json(*v) : ordered_json(nullptr);
}

}  // namespace

std::string format_fixed6(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", value);
  std::string out = buf;
  if (out == "-0.000000") out = "0.000000";
  return out;
}

std::string report_to_csv(const CampaignReport& report) {
  std::string out;
  if (!report.complete) out += "# INCOMPLETE\n";
  out += "grid_value,clean_acc,attacked_acc,success_rate,mean_queries,gc_pearson\n";
  const auto cell = [](const std::optional<double>& v) { return v ? format_fixed6(*v) : std::string(); };
  for (const auto& r : report.rows) {
    out += format_fixed6(r.grid_value) + ',' + format_fixed6(r.clean_acc) + ',' +
           format_fixed6(r.attacked_acc) + ',' + cell(r.success_rate) + ',' +
           format_fixed6(r.mean_queries) + ',' + cell(r.gc_pearson) + '\n';
  }
  return out;
}

std::string report_to_json(const CampaignReport& report) {
  ordered_json doc;
  doc["metadata"] = {
      {"attack_kind", to_string(report.metadata.kind)},
      {"grid_axis", to_string(report.metadata.axis)},
      {"fixed_value", report.metadata.fixed_value},
      {"seed", report.metadata.seed},
      {"victim_id", report.metadata.victim_id},
  };
  doc["complete"] = report.complete;
  doc["incomplete_reason"] = report.complete ? ordered_json(nullptr) : ordered_json(report.incomplete_reason);
  auto& rows = doc["rows"] = ordered_json::array();
  for (const auto& r : report.rows) {
    rows.push_back({{"grid_value", r.grid_value},
                    {"clean_acc", r.clean_acc},
                    {"attacked_acc", r.attacked_acc},
                    {"success_rate", optional_number(r.success_rate)},
                    {"mean_queries", r.mean_queries},
                    {"gc_pearson", optional_number(r.gc_pearson)}});
  }
  auto& samples = doc["samples"] = ordered_json::array();
  for (const auto& s : report.samples) {
    samples.push_back({{"grid_value", s.grid_value},
                       {"id", s.id},
                       {"true_label", s.true_label},
                       {"original_prediction", s.original_prediction},
                       {"final_prediction", s.final_prediction},
                       {"success", s.success},
                       {"queries", s.queries},
                       {"edits", s.edits},
                       {"hamming", s.hamming},
                       {"gc_original", s.gc_original},
                       {"gc_adversarial", s.gc_adversarial},
                       {"final_true_prob", s.final_true_prob}});
  }
  return doc.dump(2) + "\n";
}

void emit_report(const CampaignReport& report, const std::filesystem::path& path,
                 ReportFormat format) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write report '" + path.string() + "'");
  out << (format == ReportFormat::Csv ? report_to_csv(report) : report_to_json(report));
  if (!out) throw IoError("failed writing report '" + path.string() + "'");
}

}  // namespace dnaadv
