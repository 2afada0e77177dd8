#include "huto/term.hpp"

namespace huto {

std::size_t Term::hash() const noexcept {
    std::size_t h = std::hash<std::string>{}(text_);
    h ^= std::hash<std::int64_t>{}(number_) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h ^= static_cast<std::size_t>(kind_) * 0x85ebca6bU;
    return h;
}

std::string to_string(const Term& t) {
    switch (t.kind()) {
        case TermKind::Iri: return "<" + t.text() + ">";
        case TermKind::Blank: return "_:b" + std::to_string(t.blank_id());
        case TermKind::Integer: return std::to_string(t.integer_value());
        case TermKind::String: {
            std::string out = "\"";
            for (char c : t.text()) {
                if (c == '"' || c == '\\') out += '\\';
                out += c;
            }
            return out + "\"";
        }
    }
    return {};
}

std::string to_string(const Triple& t) {
    std::string out = to_string(t.subject) + " " + to_string(t.predicate) + " " + to_string(t.object);
    if (t.graph) out += " " + to_string(*t.graph);
    return out + " .";
}

}  // namespace huto
