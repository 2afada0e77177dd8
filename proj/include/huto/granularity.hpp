#pragma once

#include <array>
#include <optional>
#include <string_view>

namespace huto {

/// Calendar units, declared coarse to fine.
enum class Granularity { Century, Year, Month, Week, Day, Hour, Minute, Second };

inline constexpr std::array<Granularity, 8> kAllGranularities = {
    Granularity::Century, Granularity::Year,   Granularity::Month,  Granularity::Week,
    Granularity::Day,     Granularity::Hour,   Granularity::Minute, Granularity::Second,
};

/// Result of comparing the first granularity against the second.
enum class GranularityOrder { Coarser, Equal, Finer };

constexpr GranularityOrder granularity_compare(Granularity a, Granularity b) noexcept {
    if (a == b) return GranularityOrder::Equal;
    return static_cast<int>(a) < static_cast<int>(b) ? GranularityOrder::Coarser
                                                     : GranularityOrder::Finer;
}

constexpr bool is_coarser(Granularity a, Granularity b) noexcept {
    return granularity_compare(a, b) == GranularityOrder::Coarser;
}

constexpr bool is_finer(Granularity a, Granularity b) noexcept {
    return granularity_compare(a, b) == GranularityOrder::Finer;
}

/// The unit one step coarser in the chain, or nullopt for Century.
constexpr std::optional<Granularity> coarser_neighbour(Granularity g) noexcept {
    if (g == Granularity::Century) return std::nullopt;
    return static_cast<Granularity>(static_cast<int>(g) - 1);
}

/// Class-style name ("Century", "Year", ...).
std::string_view granularity_name(Granularity g) noexcept;

/// Case-insensitive lookup of a granularity name ("month", "Month").
std::optional<Granularity> parse_granularity(std::string_view name) noexcept;

}  // namespace huto
