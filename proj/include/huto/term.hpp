#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

namespace huto {

enum class TermKind : std::uint8_t { Iri, Blank, Integer, String };

/// An RDF term: IRI, blank node, integer literal or string literal.
class Term {
public:
    Term() = default;

    static Term iri(std::string value) { return Term(TermKind::Iri, std::move(value), 0); }
    static Term blank(std::uint64_t id) { return Term(TermKind::Blank, {}, static_cast<std::int64_t>(id)); }
    static Term integer(std::int64_t value) { return Term(TermKind::Integer, {}, value); }
    static Term string(std::string value) { return Term(TermKind::String, std::move(value), 0); }

    TermKind kind() const noexcept { return kind_; }
    bool is_iri() const noexcept { return kind_ == TermKind::Iri; }
    bool is_blank() const noexcept { return kind_ == TermKind::Blank; }
    bool is_literal() const noexcept { return kind_ == TermKind::Integer || kind_ == TermKind::String; }
    bool is_integer() const noexcept { return kind_ == TermKind::Integer; }
    bool is_string() const noexcept { return kind_ == TermKind::String; }

    /// IRI text or string literal lexical form.
    const std::string& text() const noexcept { return text_; }
    std::uint64_t blank_id() const noexcept { return static_cast<std::uint64_t>(number_); }
    std::int64_t integer_value() const noexcept { return number_; }

    auto operator<=>(const Term&) const = default;
    bool operator==(const Term&) const = default;

    std::size_t hash() const noexcept;

private:
    Term(TermKind kind, std::string text, std::int64_t number)
        : kind_(kind), text_(std::move(text)), number_(number) {}

    TermKind kind_ = TermKind::Iri;
    std::string text_;
    std::int64_t number_ = 0;
};

/// Plain N-Triples style rendering (`<iri>`, `_:b3`, `42`, `"text"`).
std::string to_string(const Term& t);

/// A fact; graph == nullopt is the default graph.
struct Triple {
    Term subject;
    Term predicate;
    Term object;
    std::optional<Term> graph;

    auto operator<=>(const Triple&) const = default;
    bool operator==(const Triple&) const = default;
};

std::string to_string(const Triple& t);

}  // namespace huto

template <>
struct std::hash<huto::Term> {
    std::size_t operator()(const huto::Term& t) const noexcept { return t.hash(); }
};
