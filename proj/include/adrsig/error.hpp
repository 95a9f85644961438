#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace adrsig {

enum class Errc {
    EmptyToken,
    TokenContainsWhitespace,
    InvalidCode,
    MissingHeader,
    MalformedRow,
    BadDate,
    UnknownKey,
    UnknownPatient,
    GroupSizeZero,
    NonPositiveDf,
    NonFiniteT,
    LengthMismatch,
    TooFewGroups,
    NonPositivePopulation,
    VocabularyMismatch,
    InvalidPrevalence,
    InvalidMultiplier,
    InvalidArgument,
    Io,
};

const char* to_string(Errc code) noexcept;

// Every failure raised by the library. `line()` is the 1-based input line
// for row-level ingest errors.
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what, std::optional<std::size_t> line = {});

    Errc code() const noexcept { return code_; }
    std::optional<std::size_t> line() const noexcept { return line_; }

private:
    Errc code_;
    std::optional<std::size_t> line_;
};

}  // namespace adrsig
