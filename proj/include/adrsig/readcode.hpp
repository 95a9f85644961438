#pragma once

#include <cstddef>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace adrsig {

// A hierarchical Read code such as "N245.16". The first five characters form
// the stem, where '.' is padding; anything after is an opaque term suffix.
class ReadCode {
public:
    static constexpr std::size_t kStemLength = 5;

    // Throws Errc::EmptyToken, Errc::TokenContainsWhitespace, or
    // Errc::InvalidCode when the stem starts with padding.
    static ReadCode parse(std::string_view token);

    const std::string& raw() const noexcept { return raw_; }
    std::string_view stem() const noexcept { return std::string_view(raw_).substr(0, stem_len_); }
    std::string_view term_suffix() const noexcept { return std::string_view(raw_).substr(stem_len_); }
    // Number of stem characters before the first '.', in 1..=5.
    int level() const noexcept { return level_; }

    // Aggregation key at depth k (1..=5): the first k stem characters, or the
    // raw code when the code is shallower than k.
    std::string key_at_level(int k) const;

    friend bool operator==(const ReadCode& a, const ReadCode& b) { return a.raw_ == b.raw_; }

private:
    ReadCode() = default;

    std::string raw_;
    std::size_t stem_len_ = 0;
    int level_ = 0;
};

// Granularity at which events become matrix columns.
enum class LevelMode {
    Full,    // "level 1-5": the full raw code, term suffix included
    Level3,  // "level 1-3": key_at_level(code, 3)
};

std::string aggregation_key(const ReadCode& code, LevelMode mode);

// Code -> description table. Missing codes resolve to kUnknownDescription.
class CodeDictionary {
public:
    static constexpr std::string_view kUnknownDescription = "(unknown)";

    struct LoadStats {
        std::size_t rows = 0;
        std::size_t duplicates = 0;
    };

    // Reads a `code,description` table (comma or tab separated). The first
    // description wins for duplicate codes. An empty stream yields an empty
    // dictionary.
    static CodeDictionary load(std::istream& in, LoadStats* stats = nullptr);

    // Returns false (and keeps the existing entry) when `code` is already present.
    bool insert(std::string code, std::string description);

    std::size_t size() const noexcept { return entries_.size(); }
    std::optional<std::string_view> lookup(std::string_view code) const;
    std::string_view describe(std::string_view code) const;

    // Describes an aggregation key. Tries an exact match first, then the
    // dictionary code whose dot-padded stem equals the key, preferring the
    // "00" term suffix.
    std::string_view describe_key(std::string_view key) const;

private:
    std::map<std::string, std::string, std::less<>> entries_;
    // dot-padded stem -> canonical code for describe_key fallback
    std::map<std::string, std::string, std::less<>> by_stem_;
};

}  // namespace adrsig
