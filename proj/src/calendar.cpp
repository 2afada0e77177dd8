#include "huto/calendar.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <string>

#include "huto/error.hpp"
#include "huto/model.hpp"

namespace huto {

namespace {

constexpr std::array<std::string_view, 7> kWeekdayNames = {
    "Monday", "Tuesday", "Wednesday", "Thursday", "Friday", "Saturday", "Sunday"};

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

}  // namespace

std::string_view weekday_name(Weekday w) noexcept {
    return kWeekdayNames[static_cast<std::size_t>(w) - 1];
}

std::optional<Weekday> parse_weekday(std::string_view name) noexcept {
    std::string wanted(name);
    std::transform(wanted.begin(), wanted.end(), wanted.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    for (std::size_t i = 0; i < kWeekdayNames.size(); ++i) {
        std::string candidate(kWeekdayNames[i]);
        std::transform(candidate.begin(), candidate.end(), candidate.begin(),
                       [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
        if (candidate == wanted) return static_cast<Weekday>(i + 1);
    }
    return std::nullopt;
}

Weekday next_weekday(Weekday w) noexcept {
    return w == Weekday::Sunday ? Weekday::Monday : static_cast<Weekday>(static_cast<int>(w) + 1);
}

bool is_leap_year(std::int64_t year) {
    if (year < 1) throw Error(ErrorCode::InvalidYear, "year must be >= 1, got " + std::to_string(year));
    return (year % 4 == 0 && year % 100 != 0) || year % 400 == 0;
}

int days_in_month(std::int64_t year, int month) {
    static constexpr std::array<int, 12> kLengths = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    if (month < 1 || month > 12) {
        throw Error(ErrorCode::InvalidDate, "month out of range: " + std::to_string(month));
    }
    if (month == 2 && is_leap_year(year)) return 29;
    return kLengths[static_cast<std::size_t>(month) - 1];
}

bool is_valid_civil(const CivilDate& d) noexcept {
    if (d.year < 1 || d.month < 1 || d.month > 12 || d.day < 1) return false;
    return d.day <= days_in_month(d.year, d.month);
}

// Howard Hinnant's days_from_civil, shifted so the era starts in March.
std::int64_t to_day_number(const CivilDate& d) noexcept {
    const std::int64_t y = d.year - (d.month <= 2 ? 1 : 0);
    const std::int64_t era = floor_div(y, 400);
    const std::int64_t yoe = y - era * 400;
    const std::int64_t mp = (d.month + 9) % 12;
    const std::int64_t doy = (153 * mp + 2) / 5 + d.day - 1;
    const std::int64_t doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + doe - 719468;
}

CivilDate from_day_number(std::int64_t days) noexcept {
    const std::int64_t z = days + 719468;
    const std::int64_t era = floor_div(z, 146097);
    const std::int64_t doe = z - era * 146097;
    const std::int64_t yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const std::int64_t doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const std::int64_t mp = (5 * doy + 2) / 153;
    const int day = static_cast<int>(doy - (153 * mp + 2) / 5 + 1);
    const int month = static_cast<int>(mp < 10 ? mp + 3 : mp - 9);
    const std::int64_t year = yoe + era * 400 + (month <= 2 ? 1 : 0);
    return CivilDate{year, month, day};
}

Weekday weekday_of_day_number(std::int64_t days) noexcept {
    // 1970-01-01 was a Thursday.
    const std::int64_t idx = ((days % 7) + 7 + 3) % 7;
    return static_cast<Weekday>(idx + 1);
}

Weekday weekday_of(std::int64_t year, int month, int day) {
    const CivilDate d{year, month, day};
    if (year < 1 || !is_valid_civil(d)) {
        throw Error(ErrorCode::InvalidDate, "not a civil date: " + std::to_string(year) + "-" +
                                                std::to_string(month) + "-" + std::to_string(day));
    }
    return weekday_of_day_number(to_day_number(d));
}

int days_in(Granularity unit, const PartialDate& context) {
    switch (unit) {
        case Granularity::Century: {
            std::optional<std::int64_t> century = context.century;
            if (!century && context.year) century = century_of(*context.year);
            if (!century || *century < 1) {
                throw Error(ErrorCode::Underspecified, "century needs a century or year");
            }
            int total = 0;
            for (std::int64_t y = (*century - 1) * 100 + 1; y <= *century * 100; ++y) {
                total += is_leap_year(y) ? 366 : 365;
            }
            return total;
        }
        case Granularity::Year:
            if (!context.year) throw Error(ErrorCode::Underspecified, "year unit needs a year");
            return is_leap_year(*context.year) ? 366 : 365;
        case Granularity::Month:
            if (!context.month) throw Error(ErrorCode::Underspecified, "month unit needs a month");
            if (*context.month == 2 && !context.year) {
                throw Error(ErrorCode::Underspecified, "February needs a year");
            }
            // Any non-leap year gives the right length for months other than February.
            return days_in_month(context.year.value_or(2001), *context.month);
        case Granularity::Week: return 7;
        case Granularity::Day: return 1;
        case Granularity::Hour:
        case Granularity::Minute:
        case Granularity::Second:
            throw Error(ErrorCode::InvalidArgument,
                        std::string(granularity_name(unit)) + " is shorter than a day");
    }
    return 0;
}

CivilDate add_months(const CivilDate& d, std::int64_t months) {
    const std::int64_t index = d.year * 12 + (d.month - 1) + months;
    CivilDate out;
    out.year = floor_div(index, 12);
    out.month = static_cast<int>(index - out.year * 12) + 1;
    if (out.year < 1) throw Error(ErrorCode::InvalidYear, "month arithmetic left year 1");
    out.day = std::min(d.day, days_in_month(out.year, out.month));
    return out;
}

}  // namespace huto
