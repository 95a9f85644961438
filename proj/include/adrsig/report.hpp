#pragma once

#include <istream>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "adrsig/detect.hpp"

namespace adrsig {

enum class ReportFormat { Text, Csv, Markdown };

std::optional<ReportFormat> parse_report_format(std::string_view name);

// Fixed two decimals, rounding ties away from zero on the decimal value.
std::string format_2dp(double value);
// Scientific notation with three significant digits, e.g. "1.23e-05".
std::string format_p(double p);

// Columns: Rank, Readcode, Medical event, NB, NA, R1, R2 (percent), p.
// CSV output uses CRLF line endings and RFC-4180 quoting.
std::string render(std::span<const SignalRow> rows, ReportFormat format);

// Parses CSV produced by render(). Numeric fields carry the printed precision.
std::vector<SignalRow> read_signals_csv(std::istream& in);

}  // namespace adrsig
