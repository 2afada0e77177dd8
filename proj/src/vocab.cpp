#include "huto/vocab.hpp"

namespace huto {

namespace {

constexpr std::array<std::string_view, 12> kMonthNames = {
    "January", "February", "March",     "April",   "May",      "June",
    "July",    "August",   "September", "October", "November", "December"};

constexpr std::array<std::string_view, 8> kValueProperties = {
    "century", "year", "month", "week", "day", "hour", "minute", "second"};

Term rdf(std::string_view local) { return Term::iri(std::string(kRdfNs) + std::string(local)); }
Term rdfs(std::string_view local) { return Term::iri(std::string(kRdfsNs) + std::string(local)); }

}  // namespace

Term huto_iri(std::string_view local) { return Term::iri(std::string(kHutoNs) + std::string(local)); }

std::string_view huto_local(const Term& t) {
    if (!t.is_iri()) return {};
    std::string_view text = t.text();
    if (text.substr(0, kHutoNs.size()) != kHutoNs) return {};
    return text.substr(kHutoNs.size());
}

std::optional<int> Vocab::month_of_class(const Term& cls) const {
    for (std::size_t i = 0; i < month_names.size(); ++i) {
        if (month_names[i] == cls) return static_cast<int>(i + 1);
    }
    return std::nullopt;
}

std::optional<Weekday> Vocab::weekday_of_class(const Term& cls) const {
    for (std::size_t i = 0; i < weekday_classes.size(); ++i) {
        if (weekday_classes[i] == cls) return static_cast<Weekday>(i + 1);
    }
    return std::nullopt;
}

std::optional<Granularity> Vocab::granularity_of_class(const Term& cls) const {
    for (Granularity g : kAllGranularities) {
        if (granule(g).unit_class == cls) return g;
    }
    return std::nullopt;
}

const Vocab& vocab() {
    static const Vocab v = [] {
        Vocab x;
        x.rdf_type = rdf("type");
        x.rdf_value = rdf("value");
        x.rdf_subject = rdf("subject");
        x.rdf_predicate = rdf("predicate");
        x.rdf_object = rdf("object");
        x.rdf_statement = rdf("Statement");
        x.rdfs_sub_class_of = rdfs("subClassOf");
        x.rdfs_sub_property_of = rdfs("subPropertyOf");

        x.datation = huto_iri("Datation");
        x.date = huto_iri("Date");
        x.duration = huto_iri("Duration");
        x.temporal_unit = huto_iri("TemporalUnit");
        x.week_day = huto_iri("WeekDay");
        x.generic_day = huto_iri("GenericDay");
        x.month_class = huto_iri("Month");
        x.during = huto_iri("During");
        x.cycle = huto_iri("Cycle");
        x.temporal_thing = huto_iri("TemporalThing");
        x.graph = huto_iri("Graph");
        x.period = huto_iri("Period");
        x.leap_year = huto_iri("LeapYear");
        x.common_year = huto_iri("CommonYear");

        x.has_temporal_unit = huto_iri("hasTemporalUnit");
        x.value = huto_iri("value");
        x.has_datation = huto_iri("hasDatation");
        x.has_date = huto_iri("hasDate");
        x.has_duration = huto_iri("hasDuration");
        x.has_begin = huto_iri("hasBegin");
        x.has_end = huto_iri("hasEnd");
        x.has_context = huto_iri("hasContext");
        x.every = huto_iri("every");
        x.exp = huto_iri("exp");
        x.sample = huto_iri("sample");
        x.uri = huto_iri("uri");
        x.before = huto_iri("before");
        x.after = huto_iri("after");
        x.included = huto_iri("included");
        x.week = huto_iri("week");
        x.day_count = huto_iri("dayCount");

        for (Granularity g : kAllGranularities) {
            const std::string name(granularity_name(g));
            auto& terms = x.granules[static_cast<std::size_t>(g)];
            terms.unit_class = huto_iri(name);
            terms.has_property = huto_iri("has" + name);
            terms.value_property = huto_iri(kValueProperties[static_cast<std::size_t>(g)]);
        }
        for (std::size_t i = 0; i < kMonthNames.size(); ++i) x.month_names[i] = huto_iri(kMonthNames[i]);
        for (int w = 1; w <= 7; ++w) {
            x.weekday_classes[static_cast<std::size_t>(w - 1)] =
                huto_iri(weekday_name(static_cast<Weekday>(w)));
        }
        return x;
    }();
    return v;
}

}  // namespace huto
