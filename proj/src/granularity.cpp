#include "huto/granularity.hpp"

#include <algorithm>
#include <cctype>
#include <string>

namespace huto {

std::string_view granularity_name(Granularity g) noexcept {
    switch (g) {
        case Granularity::Century: return "Century";
        case Granularity::Year: return "Year";
        case Granularity::Month: return "Month";
        case Granularity::Week: return "Week";
        case Granularity::Day: return "Day";
        case Granularity::Hour: return "Hour";
        case Granularity::Minute: return "Minute";
        case Granularity::Second: return "Second";
    }
    return "?";
}

std::optional<Granularity> parse_granularity(std::string_view name) noexcept {
    auto lower = [](std::string_view s) {
        std::string out(s);
        std::transform(out.begin(), out.end(), out.begin(),
                       [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
        return out;
    };
    const std::string wanted = lower(name);
    for (Granularity g : kAllGranularities) {
        if (lower(granularity_name(g)) == wanted) return g;
    }
    return std::nullopt;
}

}  // namespace huto
