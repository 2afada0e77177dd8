#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>

#include "huto/calendar.hpp"
#include "huto/granularity.hpp"
#include "huto/term.hpp"

namespace huto {

inline constexpr std::string_view kHutoNs = "http://ns.inria.fr/huto/";
inline constexpr std::string_view kRdfNs = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
inline constexpr std::string_view kRdfsNs = "http://www.w3.org/2000/01/rdf-schema#";
inline constexpr std::string_view kDataNs = "http://example.org/data/";

Term huto_iri(std::string_view local);

/// Per-granularity vocabulary: unit class, `hasX` link and `x` value property.
struct GranuleTerms {
    Term unit_class;
    Term has_property;
    Term value_property;
};

/// Terms of the HuTO vocabulary plus the RDF/RDFS terms the engine relies on.
struct Vocab {
    // rdf / rdfs
    Term rdf_type, rdf_value, rdf_subject, rdf_predicate, rdf_object, rdf_statement;
    Term rdfs_sub_class_of, rdfs_sub_property_of;

    // classes
    Term datation, date, duration, temporal_unit, week_day, generic_day, month_class;
    Term during, cycle, temporal_thing, graph, period;
    Term leap_year, common_year;

    // properties
    Term has_temporal_unit, value, has_datation, has_date, has_duration, has_begin, has_end;
    Term has_context, every, exp, sample, uri, before, after, included, week, day_count;

    std::array<GranuleTerms, 8> granules;
    std::array<Term, 12> month_names;  // January..December
    std::array<Term, 7> weekday_classes;  // Monday..Sunday

    const GranuleTerms& granule(Granularity g) const { return granules[static_cast<std::size_t>(g)]; }
    const Term& month_name(int month) const { return month_names.at(static_cast<std::size_t>(month) - 1); }
    const Term& weekday_class(Weekday w) const { return weekday_classes.at(static_cast<std::size_t>(w) - 1); }

    std::optional<int> month_of_class(const Term& cls) const;
    std::optional<Weekday> weekday_of_class(const Term& cls) const;
    /// Granularity named directly by a unit class (Year, Day, ...).
    std::optional<Granularity> granularity_of_class(const Term& cls) const;
};

const Vocab& vocab();

/// Local name of an IRI inside the HuTO namespace, or empty.
std::string_view huto_local(const Term& t);

}  // namespace huto
