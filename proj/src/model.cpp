#include "huto/model.hpp"

#include <algorithm>
#include <cstdio>
#include <string>

#include "huto/error.hpp"

namespace huto {

namespace {

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

std::string pad(std::int64_t v, int width) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%0*lld", width, static_cast<long long>(v));
    return buf;
}

void check_range(const std::optional<int>& v, int lo, int hi, const char* what) {
    if (v && (*v < lo || *v > hi)) {
        throw Error(ErrorCode::InvalidDate, std::string(what) + " out of range: " + std::to_string(*v));
    }
}

std::optional<Granularity> finest_date_granularity(const std::optional<PartialDate>& d) {
    if (!d || d->empty()) return std::nullopt;
    return finest_granularity(*d);
}

}  // namespace

const GenericDayRegistry& GenericDayRegistry::builtin() {
    static const GenericDayRegistry registry = [] {
        GenericDayRegistry r;
        r.add("Today", 0).add("Yesterday", -1).add("Tomorrow", 1);
        return r;
    }();
    return registry;
}

GenericDayRegistry& GenericDayRegistry::add(std::string name, int offset_days) {
    auto it = std::find_if(entries_.begin(), entries_.end(),
                           [&](const GenericDay& g) { return g.name == name; });
    if (it != entries_.end()) {
        it->offset_days = offset_days;
    } else {
        entries_.push_back(GenericDay{std::move(name), offset_days});
    }
    return *this;
}

std::optional<GenericDay> GenericDayRegistry::find(std::string_view name) const {
    for (const auto& g : entries_) {
        if (g.name == name) return g;
    }
    return std::nullopt;
}

GenericDay today() { return GenericDay{"Today", 0}; }
GenericDay yesterday() { return GenericDay{"Yesterday", -1}; }
GenericDay tomorrow() { return GenericDay{"Tomorrow", 1}; }

bool PartialDate::empty() const noexcept {
    return !century && !year && !month && !week_of_month && !day_kind && !day_of_month && !hour &&
           !minute && !second;
}

PartialDate make_date(std::int64_t year, int month, int day) {
    PartialDate d;
    d.year = year;
    d.month = month;
    d.day_of_month = day;
    return d;
}

void validate(const PartialDate& d) {
    if (d.empty()) throw Error(ErrorCode::EmptyDate, "date has no granule set");
    if (d.century && *d.century < 1) throw Error(ErrorCode::InvalidDate, "century must be >= 1");
    if (d.year && *d.year < 1) throw Error(ErrorCode::InvalidYear, "year must be >= 1");
    if (d.century && d.year && century_of(*d.year) != *d.century) {
        throw Error(ErrorCode::InvalidDate, "century does not hold the year");
    }
    check_range(d.month, 1, 12, "month");
    check_range(d.week_of_month, 1, 5, "week of month");
    check_range(d.day_of_month, 1, 31, "day of month");
    check_range(d.hour, 0, 23, "hour");
    check_range(d.minute, 0, 59, "minute");
    check_range(d.second, 0, 59, "second");
    if (d.day_of_month && d.month) {
        const int limit = d.year ? days_in_month(*d.year, *d.month)
                                 : (*d.month == 2 ? 29 : days_in_month(2001, *d.month));
        if (*d.day_of_month > limit) {
            throw Error(ErrorCode::InvalidDate, "day " + std::to_string(*d.day_of_month) +
                                                    " exceeds month length " + std::to_string(limit));
        }
    }
    if (d.day_kind && std::holds_alternative<Weekday>(*d.day_kind) && d.year && d.month &&
        d.day_of_month) {
        const Weekday actual = weekday_of(*d.year, *d.month, *d.day_of_month);
        if (actual != std::get<Weekday>(*d.day_kind)) {
            throw Error(ErrorCode::InvalidDate,
                        "stated weekday " + std::string(weekday_name(std::get<Weekday>(*d.day_kind))) +
                            " but the date falls on " + std::string(weekday_name(actual)));
        }
    }
    if (d.context) {
        if (!is_generic(d.day_kind)) {
            throw Error(ErrorCode::InvalidDate, "context is only allowed on a generic day");
        }
        validate(*d.context);
    }
}

Granularity finest_granularity(const PartialDate& d) {
    if (d.second) return Granularity::Second;
    if (d.minute) return Granularity::Minute;
    if (d.hour) return Granularity::Hour;
    if (d.day_of_month || d.day_kind) return Granularity::Day;
    if (d.week_of_month) return Granularity::Week;
    if (d.month) return Granularity::Month;
    if (d.year) return Granularity::Year;
    if (d.century) return Granularity::Century;
    throw Error(ErrorCode::EmptyDate, "date has no granule set");
}

std::optional<CivilDate> civil_date(const PartialDate& d) {
    if (!d.year || !d.month || !d.day_of_month) return std::nullopt;
    return CivilDate{*d.year, *d.month, *d.day_of_month};
}

PartialDate resolve_deictic(const PartialDate& d, const PartialDate& reference) {
    if (!is_generic(d.day_kind)) throw Error(ErrorCode::NotDeictic, "date is not a generic day");
    const auto ref = civil_date(reference);
    if (!ref || !is_valid_civil(*ref) || is_generic(reference.day_kind)) {
        throw Error(ErrorCode::Underspecified, "reference date is not a resolved civil date");
    }
    const int offset = std::get<GenericDay>(*d.day_kind).offset_days;
    const CivilDate shifted = from_day_number(to_day_number(*ref) + offset);

    PartialDate out;
    out.year = shifted.year;
    out.month = shifted.month;
    out.day_of_month = shifted.day;
    if (reference.century) out.century = century_of(shifted.year);
    if (reference.week_of_month) out.week_of_month = week_of_month(shifted.day);
    if (reference.day_kind) {
        if (std::holds_alternative<Weekday>(*reference.day_kind)) {
            out.day_kind = weekday_of(shifted);
        } else {
            out.day_kind = reference.day_kind;
        }
    }
    out.hour = d.hour ? d.hour : reference.hour;
    out.minute = d.minute ? d.minute : reference.minute;
    out.second = d.second ? d.second : reference.second;
    return out;
}

std::string to_string(const PartialDate& d) {
    std::vector<std::string> parts;
    std::string head;
    if (d.year) {
        head = pad(*d.year, 4);
    } else if (d.century && !d.month && !d.day_of_month) {
        head = "century " + std::to_string(*d.century);
    } else if (d.month || d.day_of_month) {
        head = "????";
    }
    if (d.month || d.day_of_month) head += "-" + (d.month ? pad(*d.month, 2) : std::string("??"));
    if (d.day_of_month) head += "-" + pad(*d.day_of_month, 2);
    if (d.hour) {
        head += "T" + pad(*d.hour, 2);
        if (d.minute) head += ":" + pad(*d.minute, 2);
        if (d.second) head += ":" + pad(*d.second, 2);
    }
    if (!head.empty()) parts.push_back(head);
    if (d.day_kind) {
        if (const auto* w = std::get_if<Weekday>(&*d.day_kind)) parts.emplace_back(weekday_name(*w));
        if (const auto* g = std::get_if<GenericDay>(&*d.day_kind)) parts.push_back(g->name);
    }
    if (d.week_of_month) parts.push_back("week " + std::to_string(*d.week_of_month));
    if (d.context) parts.push_back("(context " + to_string(*d.context) + ")");
    std::string out;
    for (const auto& p : parts) {
        if (!out.empty()) out += ' ';
        out += p;
    }
    return out;
}

Duration Duration::of(std::initializer_list<std::pair<Granularity, std::int64_t>> granules) {
    std::map<Granularity, std::int64_t> m;
    for (const auto& [g, n] : granules) m[g] += n;
    return of(m);
}

Duration Duration::of(const std::map<Granularity, std::int64_t>& granules) {
    if (granules.empty()) throw Error(ErrorCode::InvalidDuration, "duration needs at least one granule");
    for (const auto& [g, n] : granules) {
        if (n <= 0) {
            throw Error(ErrorCode::InvalidDuration, std::string(granularity_name(g)) +
                                                        " amount must be positive, got " +
                                                        std::to_string(n));
        }
    }
    Duration d;
    d.granules_ = granules;
    return d;
}

std::int64_t Duration::amount(Granularity g) const {
    auto it = granules_.find(g);
    return it == granules_.end() ? 0 : it->second;
}

Granularity Duration::finest() const {
    if (granules_.empty()) throw Error(ErrorCode::InvalidDuration, "empty duration");
    return granules_.rbegin()->first;
}

Granularity Duration::coarsest() const {
    if (granules_.empty()) throw Error(ErrorCode::InvalidDuration, "empty duration");
    return granules_.begin()->first;
}

std::string to_string(const Duration& d) {
    std::string out;
    for (const auto& [g, n] : d.granules()) {
        if (!out.empty()) out += ' ';
        out += std::to_string(n) + " " + std::string(granularity_name(g));
    }
    return out;
}

PartialDate add_duration(const PartialDate& start, const Duration& dur) {
    if (dur.granules().empty()) throw Error(ErrorCode::InvalidDuration, "empty duration");
    if (is_generic(start.day_kind)) {
        throw Error(ErrorCode::Underspecified, "generic day must be resolved before arithmetic");
    }
    const Granularity finest = dur.finest();
    // Inclusive convention: the last granule of the span is start + amount - 1.
    auto amount = [&](Granularity g) {
        std::int64_t a = dur.amount(g);
        if (g == finest) a -= 1;
        return a;
    };
    auto has = [&](Granularity g) { return dur.granules().count(g) > 0; };

    PartialDate out = start;
    const bool calendar_part = has(Granularity::Century) || has(Granularity::Year) || has(Granularity::Month);
    if (calendar_part) {
        const std::int64_t years = amount(Granularity::Century) * 100 + amount(Granularity::Year);
        if (has(Granularity::Month)) {
            if (!out.year || !out.month) {
                throw Error(ErrorCode::Underspecified, "month arithmetic needs a year and a month");
            }
            const std::int64_t months = years * 12 + amount(Granularity::Month);
            if (out.day_of_month) {
                const CivilDate moved = add_months(CivilDate{*out.year, *out.month, *out.day_of_month}, months);
                out.year = moved.year;
                out.month = moved.month;
                out.day_of_month = moved.day;
            } else {
                const std::int64_t index = *out.year * 12 + (*out.month - 1) + months;
                out.year = floor_div(index, 12);
                out.month = static_cast<int>(index - *out.year * 12) + 1;
            }
        } else if (out.year) {
            out.year = *out.year + years;
            if (out.month && out.day_of_month && *out.year >= 1) {
                out.day_of_month = std::min(*out.day_of_month, days_in_month(*out.year, *out.month));
            }
        } else if (out.century && !has(Granularity::Year)) {
            out.century = *out.century + amount(Granularity::Century);
        } else {
            throw Error(ErrorCode::Underspecified, "year arithmetic needs a year");
        }
        if (out.year && *out.year < 1) throw Error(ErrorCode::InvalidYear, "result precedes year 1");
    }

    const bool clock_part = has(Granularity::Week) || has(Granularity::Day) || has(Granularity::Hour) ||
                            has(Granularity::Minute) || has(Granularity::Second);
    if (clock_part) {
        const auto civil = civil_date(out);
        if (!civil || !is_valid_civil(*civil)) {
            throw Error(ErrorCode::Underspecified, "day arithmetic needs a full civil date");
        }
        if (is_finer(finest, Granularity::Day) && !out.hour) {
            throw Error(ErrorCode::Underspecified, "hour arithmetic needs an hour");
        }
        if (is_finer(finest, Granularity::Hour) && !out.minute) {
            throw Error(ErrorCode::Underspecified, "minute arithmetic needs a minute");
        }
        if (finest == Granularity::Second && !out.second) {
            throw Error(ErrorCode::Underspecified, "second arithmetic needs a second");
        }
        const std::int64_t delta =
            ((amount(Granularity::Week) * 7 + amount(Granularity::Day)) * 24 + amount(Granularity::Hour)) * 3600 +
            amount(Granularity::Minute) * 60 + amount(Granularity::Second);
        const std::int64_t base = to_day_number(*civil) * 86400 + out.hour.value_or(0) * 3600 +
                                  out.minute.value_or(0) * 60 + out.second.value_or(0);
        const std::int64_t moved = base + delta;
        const std::int64_t day = floor_div(moved, 86400);
        const std::int64_t seconds_of_day = moved - day * 86400;
        const CivilDate c = from_day_number(day);
        if (c.year < 1) throw Error(ErrorCode::InvalidYear, "result precedes year 1");
        out.year = c.year;
        out.month = c.month;
        out.day_of_month = c.day;
        if (out.hour) out.hour = static_cast<int>(seconds_of_day / 3600);
        if (out.minute) out.minute = static_cast<int>((seconds_of_day / 60) % 60);
        if (out.second) out.second = static_cast<int>(seconds_of_day % 60);
    }

    if (start.century && out.year) out.century = century_of(*out.year);
    if (out.week_of_month && out.day_of_month) out.week_of_month = week_of_month(*out.day_of_month);
    if (out.day_kind && std::holds_alternative<Weekday>(*out.day_kind)) {
        if (const auto c = civil_date(out); c && is_valid_civil(*c)) out.day_kind = weekday_of(*c);
    }
    return out;
}

IntervalKind Interval::kind() const noexcept {
    if (date || (begin && end) || (begin && duration)) return IntervalKind::Closed;
    if ((begin.has_value() != end.has_value()) && !duration) return IntervalKind::Infinite;
    return IntervalKind::Undetermined;
}

bool Interval::operator==(const Interval& other) const {
    return date == other.date && begin == other.begin && end == other.end && duration == other.duration &&
           inner_cycle == other.inner_cycle && relations.size() == other.relations.size() &&
           std::is_permutation(relations.begin(), relations.end(), other.relations.begin());
}

void validate(const Interval& i) {
    if (i.date && (i.begin || i.end)) {
        throw Error(ErrorCode::InvalidArgument, "an interval takes either a date or begin/end, not both");
    }
    for (const auto* d : {&i.date, &i.begin, &i.end}) {
        if (*d) validate(**d);
    }
    if (i.inner_cycle) {
        validate(*i.inner_cycle);
        const auto own = i.date ? finest_date_granularity(i.date) : finest_date_granularity(i.begin);
        if (own && !is_coarser(*own, i.inner_cycle->every)) {
            throw Error(ErrorCode::InvalidArgument,
                        "enclosing interval granularity must be coarser than the cycle frequency");
        }
    }
}

void validate(const Cycle& c) {
    if (c.sample && *c.sample < 1) throw Error(ErrorCode::InvalidArgument, "sample must be positive");
    if (c.occurrence) {
        validate(*c.occurrence);
        const auto& occ = *c.occurrence;
        const auto g = occ.date ? finest_date_granularity(occ.date) : finest_date_granularity(occ.begin);
        if (g && !is_coarser(c.every, *g)) {
            throw Error(ErrorCode::InvalidArgument,
                        "cycle frequency must be coarser than its occurrence granularity");
        }
    }
}

std::string to_string(const AnnotationTarget& t) {
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, ResourceTarget>) {
                return v.iri.is_iri() ? v.iri.text() : to_string(v.iri);
            } else if constexpr (std::is_same_v<T, ReifiedTarget>) {
                return "<<" + to_string(v.subject) + " " + to_string(v.predicate) + " " +
                       to_string(v.object) + ">>";
            } else {
                return "graph " + to_string(v.iri);
            }
        },
        t);
}

}  // namespace huto
