#include <random>

#include <gtest/gtest.h>

#include "huto/lowering.hpp"
#include "huto/vocab.hpp"
#include "support.hpp"

namespace {

using namespace huto;
using huto::testing::load_fixture;

/// The single subject typed `cls` that nothing points at.
Term top_node(const Store& store, const Term& cls) {
    std::vector<Term> out;
    for (const Term& n : store.subjects(vocab().rdf_type, cls)) {
        if (store.incoming(n, GraphScope::All).empty()) out.push_back(n);
    }
    EXPECT_EQ(out.size(), 1u);
    return out.at(0);
}

TEST(Lift, TuesdaySeventeenthOfFebruaryAtTen) {
    Store store;
    load_fixture(store, "ex1a.ttl");
    const auto d = lift_date(store, top_node(store, vocab().date));
    ASSERT_TRUE(d);
    PartialDate expected = make_date(2015, 2, 17);
    expected.day_kind = Weekday::Tuesday;
    expected.hour = 10;
    EXPECT_EQ(*d, expected);
}

TEST(Lift, NumericDayAndMonth) {
    Store store;
    load_fixture(store, "ex1b.ttl");
    const auto d = lift_date(store, top_node(store, vocab().date));
    ASSERT_TRUE(d);
    PartialDate expected;
    expected.month = 4;
    expected.day_of_month = 15;
    expected.day_kind = PlainDay{};
    EXPECT_EQ(*d, expected);
}

TEST(Lift, TodayCarriesItsContext) {
    Store store;
    load_fixture(store, "ex1c.ttl");
    const auto d = lift_date(store, top_node(store, vocab().date));
    ASSERT_TRUE(d);
    ASSERT_TRUE(is_generic(d->day_kind));
    ASSERT_TRUE(d->context);
    PartialDate ctx = make_date(2014, 8, 29);
    ctx.day_kind = Weekday::Friday;
    EXPECT_EQ(*d->context, ctx);
    EXPECT_EQ(resolve_deictic(*d, *d->context), ctx);
}

TEST(Lift, TwoHoursThirtyMinutes) {
    Store store;
    load_fixture(store, "ex1d.ttl");
    const auto d = lift_duration(store, top_node(store, vocab().duration));
    ASSERT_TRUE(d);
    EXPECT_EQ(*d, Duration::of({{Granularity::Hour, 2}, {Granularity::Minute, 30}}));
}

TEST(Lift, FirstSundayOfEveryApril) {
    Store store;
    load_fixture(store, "ex2a.ttl");
    const auto c = lift_cycle(store, top_node(store, vocab().cycle));
    ASSERT_TRUE(c);
    EXPECT_EQ(c->every, Granularity::Year);
    EXPECT_FALSE(c->sample);
    ASSERT_TRUE(c->occurrence);
    PartialDate expected;
    expected.month = 4;
    expected.week_of_month = 1;
    expected.day_kind = Weekday::Sunday;
    EXPECT_EQ(c->occurrence->date, expected);
}

TEST(Lift, EveryEightHoursForTenDays) {
    Store store;
    load_fixture(store, "ex2b.ttl");
    const auto i = lift_interval(store, top_node(store, vocab().during));
    ASSERT_TRUE(i);
    ASSERT_TRUE(i->begin);
    EXPECT_TRUE(is_generic(i->begin->day_kind));
    EXPECT_EQ(i->duration, Duration::of({{Granularity::Day, 10}}));
    ASSERT_TRUE(i->inner_cycle);
    EXPECT_EQ(i->inner_cycle->every, Granularity::Hour);
    EXPECT_EQ(i->inner_cycle->sample, 8);
}

TEST(Lift, AnnotationTargetsOfEachForm) {
    Store a;
    load_fixture(a, "ex3a.ttl");
    auto fanal = lift_annotation(a, top_node(a, vocab().cycle));
    ASSERT_TRUE(fanal);
    EXPECT_EQ(fanal->targets, (std::vector<AnnotationTarget>{ResourceTarget{Term::iri("http://example.org/data/FanalOfNdar")}}));

    Store c;
    load_fixture(c, "ex3c.trig");
    auto dakar = lift_annotation(c, top_node(c, vocab().during));
    ASSERT_TRUE(dakar);
    EXPECT_EQ(dakar->targets, (std::vector<AnnotationTarget>{GraphTarget{Term::iri("http://example.org/g/")}}));

    Store d;
    load_fixture(d, "ex3d.ttl");
    auto senghor = lift_annotation(d, top_node(d, vocab().during));
    ASSERT_TRUE(senghor);
    const std::string data = "http://example.org/data/";
    EXPECT_EQ(senghor->targets, (std::vector<AnnotationTarget>{ReifiedTarget{
                                    Term::iri(data + "Senghor"), Term::iri(data + "presidentOf"), Term::iri(data + "Senegal")}}));
    const auto& when = std::get<Interval>(senghor->when);
    EXPECT_EQ(when.kind(), IntervalKind::Closed);
    EXPECT_EQ(when.begin->year, 1960);
    EXPECT_EQ(when.begin->month, 9);
    EXPECT_EQ(when.end->month, 12);
}

TEST(Lift, PeriodOperand) {
    Store store;
    load_fixture(store, "ex3b.ttl");
    const auto i = lift_interval(store, top_node(store, vocab().during));
    ASSERT_TRUE(i);
    ASSERT_EQ(i->relations.size(), 1u);
    EXPECT_EQ(i->relations[0].kind, AllenKind::After);
    EXPECT_EQ(std::get<PeriodMarker>(i->relations[0].target).resource,
              Term::iri("http://example.org/data/BattleOfMekhe"));
    EXPECT_EQ(i->kind(), IntervalKind::Undetermined);
}

TEST(Lift, GranularityOfUnitNodes) {
    Store store;
    const auto& v = vocab();
    const Term n = store.fresh_blank();
    store.insert(n, v.rdf_type, v.weekday_class(Weekday::Friday));
    EXPECT_EQ(granularity_of_node(store, n), Granularity::Day);
    const Term m = store.fresh_blank();
    store.insert(m, v.rdf_type, v.month_name(12));
    EXPECT_EQ(granularity_of_node(store, m), Granularity::Month);
    const Term h = store.fresh_blank();
    store.insert(h, v.rdf_type, v.granule(Granularity::Hour).unit_class);
    EXPECT_EQ(granularity_of_node(store, h), Granularity::Hour);
    EXPECT_EQ(granularity_of_node(store, store.fresh_blank()), std::nullopt);
}

// ---- lower then lift ---------------------------------------------------------

PartialDate random_date(std::mt19937& rng) {
    auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    PartialDate d;
    if (pick(0, 5) == 0) d.century = pick(1, 25);
    if (pick(0, 4) > 0) {
        d.year = pick(1, 2400);
        if (d.century) d.century = century_of(*d.year);
    }
    if (pick(0, 3) > 0) d.month = pick(1, 12);
    switch (pick(0, 4)) {
        case 0:
            break;
        case 1:
            d.day_of_month = pick(1, 28);
            d.day_kind = PlainDay{};
            break;
        case 2:
            d.day_kind = static_cast<Weekday>(pick(1, 7));
            d.week_of_month = pick(1, 5);
            break;
        case 3: {
            d.day_kind = GenericDay{pick(0, 1) ? "Today" : "Tomorrow", 0};
            d.day_kind = *GenericDayRegistry::builtin().find(std::get<GenericDay>(*d.day_kind).name);
            PartialDate ctx = make_date(pick(1900, 2100), pick(1, 12), pick(1, 28));
            d.context = ctx;
            break;
        }
        default:
            d.week_of_month = pick(1, 5);
            break;
    }
    if (d.day_of_month && pick(0, 1)) {
        d.hour = pick(0, 23);
        if (pick(0, 1)) d.minute = pick(0, 59);
        if (d.minute && pick(0, 1)) d.second = pick(0, 59);
    }
    if (d.empty()) d.year = 2000;
    return d;
}

TEST(RoundTrip, RandomDatesLiftBackUnchanged) {
    std::mt19937 rng(3);
    for (int i = 0; i < 500; ++i) {
        const PartialDate d = random_date(rng);
        Store store;
        const Term node = lower(store, d);
        const auto back = lift_date(store, node);
        ASSERT_TRUE(back) << to_string(d);
        ASSERT_EQ(*back, d) << to_string(d) << " vs " << to_string(*back);
    }
}

TEST(RoundTrip, RandomDurationsLiftBackUnchanged) {
    std::mt19937 rng(5);
    for (int i = 0; i < 300; ++i) {
        std::map<Granularity, std::int64_t> g;
        for (Granularity u : kAllGranularities) {
            if (std::uniform_int_distribution<int>(0, 2)(rng) == 0) g[u] = std::uniform_int_distribution<int>(1, 99)(rng);
        }
        if (g.empty()) g[Granularity::Day] = 1;
        const Duration d = Duration::of(g);
        Store store;
        ASSERT_EQ(lift_duration(store, lower(store, d)), d) << to_string(d);
    }
}

TEST(RoundTrip, AnnotationsWithNestedCyclesAndRelations) {
    const Term mekhe = Term::iri("http://example.org/data/BattleOfMekhe");
    const Term target = Term::iri("http://example.org/data/BattleOfDerkheule");

    Interval occurrence;
    PartialDate first_saturday;
    first_saturday.month = 12;
    first_saturday.week_of_month = 1;
    first_saturday.day_kind = Weekday::Saturday;
    occurrence.date = first_saturday;
    const TemporalAnnotation fanal{Cycle{Granularity::Year, occurrence, std::nullopt},
                                   {ResourceTarget{Term::iri("http://example.org/data/FanalOfNdar")}}};

    Interval relative;
    relative.relations.push_back({AllenKind::After, PeriodMarker{mekhe}});
    Interval earlier;
    earlier.date = make_date(1850, 1, 1);
    relative.relations.push_back({AllenKind::After, Indirect<Interval>(earlier)});
    const TemporalAnnotation derkheule{relative, {ResourceTarget{target}}};

    Interval treatment;
    PartialDate t;
    t.day_kind = today();
    treatment.begin = t;
    treatment.duration = Duration::of({{Granularity::Day, 10}});
    treatment.inner_cycle = Cycle{Granularity::Hour, {}, 8};
    const TemporalAnnotation pills{treatment,
                                   {ReifiedTarget{target, Term::iri("http://example.org/data/p"), mekhe},
                                    GraphTarget{Term::iri("http://example.org/g/")}}};

    for (const auto& a : {fanal, derkheule, pills}) {
        Store store;
        const Term root = lower(store, a);
        const auto back = lift_annotation(store, root);
        ASSERT_TRUE(back);
        EXPECT_EQ(*back, a);
    }
}

TEST(RoundTrip, AllenLinkBetweenResources) {
    Store store;
    const AllenLink link{AllenKind::Before, Term::iri("http://example.org/data/A"), Term::iri("http://example.org/data/B")};
    const Triple t = lower(store, link);
    EXPECT_EQ(t.predicate, vocab().before);
    EXPECT_EQ(lift_allen_link(store, t), link);
}

}  // namespace
