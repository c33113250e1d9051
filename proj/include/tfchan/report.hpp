#pragma once

#include <string>
#include <vector>

#include "tfchan/bounds.hpp"
#include "tfchan/mc.hpp"

namespace tfchan::report {

inline constexpr const char* kToolVersion = "0.1.0";

/// CSV header, fixed column order.
extern const char* kCsvHeader;

std::string format_double(double v);  // 17 significant digits
std::string csv_row(const mc::McRecord& r, double p, double q, const char* case_name,
                    double alpha);
std::string csv_document(const std::vector<mc::McRecord>& records, const mc::McConfig& cfg);

std::string bound_report_text(const bounds::BoundReport& report);

/// Log-log scatter of the Monte-Carlo ratios against |U| with the uniform
/// and Gauss-Laguerre bound curves.
std::string svg_scatter(const std::vector<mc::McRecord>& records, const mc::McConfig& cfg);

}  // namespace tfchan::report
