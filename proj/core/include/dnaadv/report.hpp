#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "dnaadv/metrics.hpp"

namespace dnaadv {

enum class ReportFormat { Csv, Json };

/// Fixed-point with six decimals, '.' separator.
std::string format_fixed6(double value);

/// Columns: grid_value, clean_acc, attacked_acc, success_rate, mean_queries, gc_pearson.
/// Missing values are empty cells; an incomplete report starts with "# INCOMPLETE".
std::string report_to_csv(const CampaignReport& report);
std::string report_to_json(const CampaignReport& report);

/// Byte-deterministic for identical reports. Throws IoError.
void emit_report(const CampaignReport& report, const std::filesystem::path& path,
                 ReportFormat format);

}  // namespace dnaadv
