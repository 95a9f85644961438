#pragma once

#include <chrono>
#include <compare>
#include <optional>
#include <string>
#include <string_view>

namespace adrsig {

// Calendar day, stored as days since 1970-01-01.
class Date {
public:
    Date() = default;
    explicit Date(std::chrono::sys_days days) : days_(days) {}

    static std::optional<Date> from_ymd(int y, unsigned m, unsigned d);
    // Strict ISO-8601 `YYYY-MM-DD`; nullopt on any deviation or invalid day.
    static std::optional<Date> parse(std::string_view text);

    std::string iso() const;
    long serial() const noexcept { return days_.time_since_epoch().count(); }

    Date operator+(long n) const { return Date(days_ + std::chrono::days(n)); }
    Date operator-(long n) const { return Date(days_ - std::chrono::days(n)); }
    long operator-(Date other) const noexcept { return serial() - other.serial(); }

    auto operator<=>(const Date&) const = default;

private:
    std::chrono::sys_days days_{};
};

}  // namespace adrsig
