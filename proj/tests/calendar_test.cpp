#include <chrono>

#include <gtest/gtest.h>

#include "huto/calendar.hpp"
#include "huto/error.hpp"
#include "huto/model.hpp"

namespace {

using namespace huto;
namespace chr = std::chrono;

/// Day count of a year found by walking chrono days from 1 January to the next.
int stepped_year_length(int y) {
    int n = 0;
    for (chr::sys_days d{chr::year(y) / chr::January / 1}; chr::year_month_day(d).year() == chr::year(y);
         d += chr::days(1)) {
        ++n;
    }
    return n;
}

TEST(Calendar, LeapYearsMatchDaySteppingFrom1To3000) {
    for (int y = 1; y <= 3000; ++y) {
        ASSERT_EQ(is_leap_year(y), stepped_year_length(y) == 366) << y;
    }
}

TEST(Calendar, LeapYearBoundaries) {
    EXPECT_TRUE(is_leap_year(2000));
    EXPECT_TRUE(is_leap_year(2016));
    EXPECT_FALSE(is_leap_year(1900));
    EXPECT_FALSE(is_leap_year(2015));
    EXPECT_EQ(days_in_month(2016, 2), 29);
    EXPECT_EQ(days_in_month(1900, 2), 28);
    EXPECT_THROW(days_in_month(2015, 13), Error);
}

TEST(Calendar, WeekdaysMatchSuccessorSteppingOverTenThousandDays) {
    // 1 January of year 1 is a Monday in the proleptic Gregorian calendar.
    for (const auto& [start, first] : {std::pair{CivilDate{1, 1, 1}, Weekday::Monday},
                                       std::pair{CivilDate{2015, 2, 17}, Weekday::Tuesday}}) {
        chr::sys_days d{chr::year(static_cast<int>(start.year)) / chr::month(static_cast<unsigned>(start.month)) /
                        chr::day(static_cast<unsigned>(start.day))};
        Weekday expected = first;
        for (int i = 0; i < 10000; ++i) {
            const chr::year_month_day ymd(d);
            const CivilDate c{static_cast<int>(ymd.year()), static_cast<int>(static_cast<unsigned>(ymd.month())),
                              static_cast<int>(static_cast<unsigned>(ymd.day()))};
            ASSERT_EQ(weekday_of(c), expected) << c.year << "-" << c.month << "-" << c.day;
            expected = next_weekday(expected);
            d += chr::days(1);
        }
    }
}

TEST(Calendar, NamedDatesFallOnTheirWeekdays) {
    EXPECT_EQ(weekday_of(2015, 2, 17), Weekday::Tuesday);
    EXPECT_EQ(weekday_of(2014, 8, 29), Weekday::Friday);
    EXPECT_EQ(weekday_of(2015, 1, 1), Weekday::Thursday);
}

TEST(Calendar, DayNumbersRoundTrip) {
    EXPECT_EQ(to_day_number(CivilDate{1970, 1, 1}), 0);
    for (std::int64_t n = to_day_number(CivilDate{1, 1, 1}); n <= 800000; n += 997) {
        const CivilDate c = from_day_number(n);
        ASSERT_TRUE(is_valid_civil(c));
        ASSERT_EQ(to_day_number(c), n);
        ASSERT_EQ(weekday_of_day_number(n), weekday_of(c));
    }
}

TEST(Calendar, WeekOfMonthAndCentury) {
    EXPECT_EQ(week_of_month(1), 1);
    EXPECT_EQ(week_of_month(7), 1);
    EXPECT_EQ(week_of_month(8), 2);
    EXPECT_EQ(week_of_month(31), 5);
    EXPECT_EQ(century_of(1), 1);
    EXPECT_EQ(century_of(100), 1);
    EXPECT_EQ(century_of(101), 2);
    EXPECT_EQ(century_of(2000), 20);
    EXPECT_EQ(century_of(2001), 21);
}

TEST(Calendar, AddMonthsClampsTheDay) {
    EXPECT_EQ(add_months(CivilDate{2015, 1, 31}, 1), (CivilDate{2015, 2, 28}));
    EXPECT_EQ(add_months(CivilDate{2016, 1, 31}, 1), (CivilDate{2016, 2, 29}));
    EXPECT_EQ(add_months(CivilDate{2015, 11, 15}, 3), (CivilDate{2016, 2, 15}));
    EXPECT_EQ(add_months(CivilDate{2015, 3, 31}, -1), (CivilDate{2015, 2, 28}));
}

TEST(Calendar, DaysInUnit) {
    EXPECT_EQ(days_in(Granularity::Year, make_date(2016, 1, 1)), 366);
    EXPECT_EQ(days_in(Granularity::Month, make_date(2015, 2, 1)), 28);
    EXPECT_EQ(days_in(Granularity::Week, PartialDate{}), 7);
    EXPECT_EQ(days_in(Granularity::Day, PartialDate{}), 1);
    PartialDate c20;
    c20.century = 20;
    EXPECT_EQ(days_in(Granularity::Century, c20), 36525);
    PartialDate june;
    june.month = 6;
    EXPECT_EQ(days_in(Granularity::Month, june), 30);
    PartialDate feb;
    feb.month = 2;
    EXPECT_THROW(days_in(Granularity::Month, feb), Error);
    try {
        days_in(Granularity::Hour, make_date(2015, 1, 1));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::InvalidArgument);
    }
}

TEST(Granularity, OrderRunsCoarseToFine) {
    EXPECT_TRUE(is_coarser(Granularity::Century, Granularity::Second));
    EXPECT_TRUE(is_finer(Granularity::Hour, Granularity::Day));
    EXPECT_EQ(granularity_compare(Granularity::Week, Granularity::Week), GranularityOrder::Equal);
    EXPECT_EQ(coarser_neighbour(Granularity::Day), Granularity::Week);
    EXPECT_EQ(coarser_neighbour(Granularity::Century), std::nullopt);
    EXPECT_EQ(parse_granularity("month"), Granularity::Month);
    EXPECT_EQ(parse_granularity("fortnight"), std::nullopt);
    for (Granularity g : kAllGranularities) EXPECT_EQ(parse_granularity(granularity_name(g)), g);
    EXPECT_EQ(parse_weekday("wednesday"), Weekday::Wednesday);
}

}  // namespace
