#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "huto/granularity.hpp"

namespace huto {

struct PartialDate;

/// ISO weekday numbering, Monday = 1.
enum class Weekday { Monday = 1, Tuesday, Wednesday, Thursday, Friday, Saturday, Sunday };

std::string_view weekday_name(Weekday w) noexcept;
std::optional<Weekday> parse_weekday(std::string_view name) noexcept;
Weekday next_weekday(Weekday w) noexcept;

/// Proleptic Gregorian civil date.
struct CivilDate {
    std::int64_t year = 1;
    int month = 1;
    int day = 1;

    auto operator<=>(const CivilDate&) const = default;
};

bool is_leap_year(std::int64_t year);
int days_in_month(std::int64_t year, int month);
bool is_valid_civil(const CivilDate& d) noexcept;

/// Days since 1970-01-01.
std::int64_t to_day_number(const CivilDate& d) noexcept;
CivilDate from_day_number(std::int64_t days) noexcept;

Weekday weekday_of(std::int64_t year, int month, int day);
inline Weekday weekday_of(const CivilDate& d) { return weekday_of(d.year, d.month, d.day); }
Weekday weekday_of_day_number(std::int64_t days) noexcept;

/// Occurrence index of the date's weekday inside its month (1 for days 1..7).
constexpr int week_of_month(int day_of_month) noexcept { return (day_of_month - 1) / 7 + 1; }

/// Century number holding a year (year 1..100 is century 1).
constexpr std::int64_t century_of(std::int64_t year) noexcept { return (year - 1) / 100 + 1; }

/// Day count of the unit instance named by `context`.
int days_in(Granularity unit, const PartialDate& context);

/// Adds whole months, clamping the day of month to the target month's length.
CivilDate add_months(const CivilDate& d, std::int64_t months);

}  // namespace huto
