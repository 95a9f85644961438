#include "adrsig/error.hpp"

namespace adrsig {

const char* to_string(Errc code) noexcept {
    switch (code) {
        case Errc::EmptyToken: return "EmptyToken";
        case Errc::TokenContainsWhitespace: return "TokenContainsWhitespace";
        case Errc::InvalidCode: return "InvalidCode";
        case Errc::MissingHeader: return "MissingHeader";
        case Errc::MalformedRow: return "MalformedRow";
        case Errc::BadDate: return "BadDate";
        case Errc::UnknownKey: return "UnknownKey";
        case Errc::UnknownPatient: return "UnknownPatient";
        case Errc::GroupSizeZero: return "GroupSizeZero";
        case Errc::NonPositiveDf: return "NonPositiveDf";
        case Errc::NonFiniteT: return "NonFiniteT";
        case Errc::LengthMismatch: return "LengthMismatch";
        case Errc::TooFewGroups: return "TooFewGroups";
        case Errc::NonPositivePopulation: return "NonPositivePopulation";
        case Errc::VocabularyMismatch: return "VocabularyMismatch";
        case Errc::InvalidPrevalence: return "InvalidPrevalence";
        case Errc::InvalidMultiplier: return "InvalidMultiplier";
        case Errc::InvalidArgument: return "InvalidArgument";
        case Errc::Io: return "Io";
    }
    return "Unknown";
}

static std::string decorate(Errc code, const std::string& what, std::optional<std::size_t> line) {
    std::string msg = to_string(code);
    if (line) msg += " (line " + std::to_string(*line) + ")";
    msg += ": ";
    msg += what;
    return msg;
}

Error::Error(Errc code, const std::string& what, std::optional<std::size_t> line)
    : std::runtime_error(decorate(code, what, line)), code_(code), line_(line) {}

}  // namespace adrsig
