#include "adrsig/readcode.hpp"

#include <algorithm>
#include <cctype>
#include <vector>

#include "adrsig/csv.hpp"
#include "adrsig/error.hpp"

namespace adrsig {

ReadCode ReadCode::parse(std::string_view token) {
    if (token.empty()) throw Error(Errc::EmptyToken, "empty Read code");
    if (std::any_of(token.begin(), token.end(), [](unsigned char c) { return std::isspace(c); })) {
        throw Error(Errc::TokenContainsWhitespace, "Read code '" + std::string(token) + "' contains whitespace");
    }
    ReadCode code;
    code.raw_ = std::string(token);
    code.stem_len_ = std::min(token.size(), kStemLength);
    std::string_view stem = token.substr(0, code.stem_len_);
    code.level_ = static_cast<int>(std::min(stem.find('.'), stem.size()));
    if (code.level_ == 0) {
        throw Error(Errc::InvalidCode, "Read code '" + std::string(token) + "' starts with padding");
    }
    return code;
}

std::string ReadCode::key_at_level(int k) const {
    if (k < 1 || k > static_cast<int>(kStemLength)) {
        throw Error(Errc::InvalidArgument, "level must be in 1..5, got " + std::to_string(k));
    }
    if (level_ < k) return raw_;
    return raw_.substr(0, static_cast<std::size_t>(k));
}

std::string aggregation_key(const ReadCode& code, LevelMode mode) {
    switch (mode) {
        case LevelMode::Full: return code.raw();
        case LevelMode::Level3: return code.key_at_level(3);
    }
    return code.raw();
}

namespace {

std::string padded_stem(std::string_view s) {
    std::string stem(s.substr(0, std::min(s.size(), ReadCode::kStemLength)));
    stem.resize(ReadCode::kStemLength, '.');
    return stem;
}

}  // namespace

bool CodeDictionary::insert(std::string code, std::string description) {
    auto [it, inserted] = entries_.try_emplace(std::move(code), std::move(description));
    if (!inserted) return false;
    const std::string& c = it->first;
    std::string stem = padded_stem(c);
    auto sit = by_stem_.find(stem);
    auto suffix = std::string_view(c).substr(std::min(c.size(), ReadCode::kStemLength));
    if (sit == by_stem_.end()) {
        by_stem_.emplace(std::move(stem), c);
    } else {
        std::string_view cur_suffix = std::string_view(sit->second).substr(
            std::min(sit->second.size(), ReadCode::kStemLength));
        bool cur_canonical = cur_suffix == "00";
        bool new_canonical = suffix == "00";
        if ((new_canonical && !cur_canonical) || (new_canonical == cur_canonical && c < sit->second)) {
            sit->second = c;
        }
    }
    return true;
}

CodeDictionary CodeDictionary::load(std::istream& in, LoadStats* stats) {
    CodeDictionary dict;
    LoadStats local;
    csv::TableReader reader(in);
    if (!reader.empty()) {
        const std::size_t code_col = reader.require_column("code");
        const std::size_t desc_col = reader.require_column("description");
        const std::size_t need = std::max(code_col, desc_col) + 1;
        std::vector<std::string> fields;
        while (reader.next(fields)) {
            ++local.rows;
            if (fields.size() < need || fields[code_col].empty()) {
                throw Error(Errc::MalformedRow, "expected code and description", reader.line());
            }
            if (!dict.insert(std::move(fields[code_col]), std::move(fields[desc_col]))) ++local.duplicates;
        }
    }
    if (stats) *stats = local;
    return dict;
}

std::optional<std::string_view> CodeDictionary::lookup(std::string_view code) const {
    auto it = entries_.find(code);
    if (it == entries_.end()) return std::nullopt;
    return std::string_view(it->second);
}

std::string_view CodeDictionary::describe(std::string_view code) const {
    return lookup(code).value_or(kUnknownDescription);
}

std::string_view CodeDictionary::describe_key(std::string_view key) const {
    if (auto hit = lookup(key)) return *hit;
    if (key.empty() || key.size() > ReadCode::kStemLength) return kUnknownDescription;
    auto it = by_stem_.find(padded_stem(key));
    if (it == by_stem_.end()) return kUnknownDescription;
    return describe(it->second);
}

}  // namespace adrsig
