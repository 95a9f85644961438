#include "adrsig/report.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "adrsig/csv.hpp"
#include "adrsig/error.hpp"

namespace adrsig {

namespace {

constexpr std::array<std::string_view, 8> kTitles = {"Rank", "Readcode", "Medical event", "NB",
                                                     "NA",   "R1",       "R2",            "p"};
constexpr std::array<std::string_view, 8> kCsvHeader = {"rank", "readcode", "description", "NB",
                                                         "NA",   "R1",       "R2",          "p"};
// Text columns are left-aligned, numbers right-aligned.
constexpr std::array<bool, 8> kNumeric = {true, false, false, true, true, true, true, true};

std::vector<std::string> cells(const SignalRow& row) {
    return {std::to_string(row.rank), row.key,
            row.description,          std::to_string(row.nb),
            std::to_string(row.na),   format_2dp(row.r1),
            format_2dp(row.r2_percent), format_p(row.p_value)};
}

std::string render_text(std::span<const SignalRow> rows) {
    std::vector<std::vector<std::string>> table;
    table.emplace_back(kTitles.begin(), kTitles.end());
    for (const auto& r : rows) table.push_back(cells(r));
    std::array<std::size_t, 8> width{};
    for (const auto& line : table) {
        for (std::size_t i = 0; i < width.size(); ++i) width[i] = std::max(width[i], line[i].size());
    }
    std::ostringstream out;
    for (const auto& line : table) {
        std::string text;
        for (std::size_t i = 0; i < width.size(); ++i) {
            if (i) text += "  ";
            const std::string pad(width[i] - line[i].size(), ' ');
            text += kNumeric[i] ? pad + line[i] : line[i] + pad;
        }
        while (!text.empty() && text.back() == ' ') text.pop_back();
        out << text << '\n';
    }
    return out.str();
}

std::string render_csv(std::span<const SignalRow> rows) {
    std::ostringstream out;
    std::vector<std::string> header(kCsvHeader.begin(), kCsvHeader.end());
    csv::write_row(out, header, ',', "\r\n");
    for (const auto& r : rows) csv::write_row(out, cells(r), ',', "\r\n");
    return out.str();
}

std::string md_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '|') out += '\\';
        out += c;
    }
    return out;
}

std::string render_markdown(std::span<const SignalRow> rows) {
    std::ostringstream out;
    out << '|';
    for (auto t : kTitles) out << ' ' << t << " |";
    out << "\n|";
    for (bool numeric : kNumeric) out << (numeric ? " ---: |" : " :--- |");
    out << '\n';
    for (const auto& r : rows) {
        out << '|';
        for (const auto& c : cells(r)) out << ' ' << md_escape(c) << " |";
        out << '\n';
    }
    return out.str();
}

}  // namespace

std::optional<ReportFormat> parse_report_format(std::string_view name) {
    if (name == "text") return ReportFormat::Text;
    if (name == "csv") return ReportFormat::Csv;
    if (name == "markdown" || name == "md") return ReportFormat::Markdown;
    return std::nullopt;
}

std::string format_2dp(double value) {
    if (!std::isfinite(value)) return std::isnan(value) ? "nan" : (value > 0 ? "inf" : "-inf");
    // The nudge lets decimal ties such as 12.335 (stored just below the tie) round up.
    const double scaled = std::floor(std::fabs(value) * 100.0 + 0.5 + 1e-9);
    const auto cents = static_cast<long long>(scaled);
    char buf[64];
    std::snprintf(buf, sizeof buf, "%s%lld.%02lld", (value < 0 && cents != 0) ? "-" : "", cents / 100, cents % 100);
    return buf;
}

std::string format_p(double p) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2e", p);
    return buf;
}

std::string render(std::span<const SignalRow> rows, ReportFormat format) {
    switch (format) {
        case ReportFormat::Text: return render_text(rows);
        case ReportFormat::Csv: return render_csv(rows);
        case ReportFormat::Markdown: return render_markdown(rows);
    }
    return {};
}

std::vector<SignalRow> read_signals_csv(std::istream& in) {
    csv::TableReader reader(in);
    std::vector<SignalRow> rows;
    if (reader.empty()) return rows;
    std::array<std::size_t, 8> col{};
    for (std::size_t i = 0; i < kCsvHeader.size(); ++i) col[i] = reader.require_column(kCsvHeader[i]);
    std::vector<std::string> f;
    while (reader.next(f)) {
        if (f.size() < kCsvHeader.size()) throw Error(Errc::MalformedRow, "short signal row", reader.line());
        try {
            SignalRow r;
            r.rank = std::stoull(f[col[0]]);
            r.key = f[col[1]];
            r.description = f[col[2]];
            r.nb = std::stoull(f[col[3]]);
            r.na = std::stoull(f[col[4]]);
            r.r1 = std::stod(f[col[5]]);
            r.r2_percent = std::stod(f[col[6]]);
            r.p_value = std::stod(f[col[7]]);
            rows.push_back(std::move(r));
        } catch (const std::logic_error&) {
            throw Error(Errc::MalformedRow, "non-numeric field in signal row", reader.line());
        }
    }
    return rows;
}

}  // namespace adrsig
