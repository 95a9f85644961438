#include "adrsig/csv.hpp"

#include <algorithm>

#include "adrsig/error.hpp"

namespace adrsig::csv {

namespace {

void strip_cr(std::string& s) {
    if (!s.empty() && s.back() == '\r') s.pop_back();
}

bool is_blank(const std::string& s) {
    return std::all_of(s.begin(), s.end(), [](unsigned char c) { return c == ' ' || c == '\t'; });
}

}  // namespace

TableReader::TableReader(std::istream& in) : in_(in) {
    std::string first;
    while (std::getline(in_, first)) {
        ++line_no_;
        strip_cr(first);
        if (line_no_ == 1 && first.rfind("\xEF\xBB\xBF", 0) == 0) first.erase(0, 3);
        if (!is_blank(first)) break;
        first.clear();
    }
    if (first.empty()) return;
    delim_ = first.find('\t') != std::string::npos ? '\t' : ',';
    // Re-tokenize the header with quote handling.
    std::string field;
    bool quoted = false;
    for (std::size_t i = 0; i < first.size(); ++i) {
        char c = first[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < first.size() && first[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field += c;
            }
        } else if (c == '"' && field.empty()) {
            quoted = true;
        } else if (c == delim_) {
            header_.push_back(std::move(field));
            field.clear();
        } else {
            field += c;
        }
    }
    if (quoted) throw Error(Errc::MissingHeader, "unterminated quote in header", line_no_);
    header_.push_back(std::move(field));
    record_line_ = line_no_;
}

std::optional<std::size_t> TableReader::column(std::string_view name) const {
    for (std::size_t i = 0; i < header_.size(); ++i) {
        if (header_[i] == name) return i;
    }
    return std::nullopt;
}

std::size_t TableReader::require_column(std::string_view name) const {
    if (auto idx = column(name)) return *idx;
    throw Error(Errc::MissingHeader, "required column '" + std::string(name) + "' not found in header");
}

bool TableReader::read_record(std::vector<std::string>& fields) {
    fields.clear();
    std::string line;
    if (!std::getline(in_, line)) return false;
    ++line_no_;
    record_line_ = line_no_;
    strip_cr(line);

    std::string field;
    bool quoted = false;
    bool was_quoted = false;
    std::size_t i = 0;
    for (;;) {
        if (i == line.size()) {
            if (!quoted) break;
            // Quoted field continues on the next physical line.
            if (!std::getline(in_, line)) {
                throw Error(Errc::MalformedRow, "unterminated quoted field", record_line_);
            }
            ++line_no_;
            strip_cr(line);
            field += '\n';
            i = 0;
            continue;
        }
        char c = line[i++];
        if (quoted) {
            if (c == '"') {
                if (i < line.size() && line[i] == '"') {
                    field += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field += c;
            }
        } else if (c == '"' && field.empty() && !was_quoted) {
            quoted = true;
            was_quoted = true;
        } else if (c == delim_) {
            fields.push_back(std::move(field));
            field.clear();
            was_quoted = false;
        } else {
            field += c;
        }
    }
    fields.push_back(std::move(field));
    return true;
}

bool TableReader::next(std::vector<std::string>& fields) {
    if (header_.empty()) return false;
    while (read_record(fields)) {
        if (fields.size() == 1 && fields[0].empty()) continue;
        return true;
    }
    return false;
}

std::string escape(std::string_view field, char delim) {
    bool needs = field.find_first_of(std::string{delim, '"', '\r', '\n'}) != std::string_view::npos;
    if (!needs) return std::string(field);
    std::string out;
    out.reserve(field.size() + 2);
    out += '"';
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

void write_row(std::ostream& out, std::span<const std::string> fields, char delim, std::string_view eol) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out << delim;
        out << escape(fields[i], delim);
    }
    out << eol;
}

}  // namespace adrsig::csv
