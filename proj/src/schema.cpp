#include "huto/schema.hpp"

#include "huto/model.hpp"
#include "huto/vocab.hpp"

namespace huto {

std::size_t load_schema(Store& store) {
    const auto& v = vocab();
    std::size_t added = 0;
    auto sub_class = [&](const Term& c, const Term& parent) {
        added += store.insert(c, v.rdfs_sub_class_of, parent) ? 1 : 0;
    };
    auto sub_property = [&](const Term& p, const Term& parent) {
        added += store.insert(p, v.rdfs_sub_property_of, parent) ? 1 : 0;
    };

    sub_class(v.date, v.datation);
    sub_class(v.duration, v.datation);
    sub_class(v.graph, v.temporal_thing);
    const Term& day = v.granule(Granularity::Day).unit_class;
    const Term& year = v.granule(Granularity::Year).unit_class;
    for (Granularity g : kAllGranularities) {
        sub_class(v.granule(g).unit_class, v.temporal_unit);
        sub_property(v.granule(g).has_property, v.has_temporal_unit);
        sub_property(v.granule(g).value_property, v.value);
    }
    sub_class(v.week_day, day);
    for (const Term& w : v.weekday_classes) sub_class(w, v.week_day);
    sub_class(v.generic_day, day);
    for (const auto& g : GenericDayRegistry::builtin().entries()) sub_class(huto_iri(g.name), v.generic_day);
    for (const Term& m : v.month_names) sub_class(m, v.month_class);
    sub_class(v.leap_year, year);
    sub_class(v.common_year, year);
    for (const Term* p : {&v.has_date, &v.has_duration, &v.has_begin, &v.has_end}) {
        sub_property(*p, v.has_datation);
    }

    // One `included` fact per immediately-finer edge of the granularity chain.
    for (std::size_t i = 1; i < kAllGranularities.size(); ++i) {
        added += store.insert(v.granule(kAllGranularities[i]).unit_class, v.included,
                              v.granule(kAllGranularities[i - 1]).unit_class)
                     ? 1
                     : 0;
    }
    return added;
}

}  // namespace huto
