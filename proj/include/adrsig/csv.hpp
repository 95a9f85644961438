#pragma once

#include <cstddef>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace adrsig::csv {

// Streaming reader for delimited text with a header line. The delimiter is
// tab if the header contains one, comma otherwise. Fields follow RFC-4180
// double-quote escaping; quoted fields may span lines.
class TableReader {
public:
    explicit TableReader(std::istream& in);

    // True when the stream held no header line at all.
    bool empty() const noexcept { return header_.empty(); }
    char delimiter() const noexcept { return delim_; }
    const std::vector<std::string>& header() const noexcept { return header_; }

    std::optional<std::size_t> column(std::string_view name) const;
    // Throws Errc::MissingHeader naming the absent column.
    std::size_t require_column(std::string_view name) const;

    // Reads the next non-blank record into `fields`. Returns false at end of
    // input. Throws Errc::MalformedRow on an unterminated quote.
    bool next(std::vector<std::string>& fields);

    // 1-based line on which the most recent record started.
    std::size_t line() const noexcept { return record_line_; }

private:
    bool read_record(std::vector<std::string>& fields);

    std::istream& in_;
    char delim_ = ',';
    std::vector<std::string> header_;
    std::size_t line_no_ = 0;
    std::size_t record_line_ = 0;
};

// Quotes a field when it holds the delimiter, a double quote, CR or LF.
std::string escape(std::string_view field, char delim = ',');

void write_row(std::ostream& out, std::span<const std::string> fields, char delim = ',',
               std::string_view eol = "\n");

}  // namespace adrsig::csv
