#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "huto/store.hpp"
#include "huto/term.hpp"

namespace huto {

/// Parsed Turtle/TriG text. Blank node ids are local to the document.
struct Document {
    std::map<std::string, std::string> prefixes;
    std::vector<Triple> default_graph;
    /// Triples inside each block carry the block's name in `graph`.
    std::map<Term, std::vector<Triple>> named_graphs;

    std::size_t triple_count() const noexcept;
    std::vector<Triple> all_triples() const;
};

struct ParseOptions {
    /// Relative IRIs such as `<Gamou>` resolve against this base until `@base` overrides it.
    std::string base = "http://example.org/data/";
};

/// Prefixes used by the serializer when none are given: `:`, `rdf:`, `rdfs:`, `data:`.
std::map<std::string, std::string> default_prefixes();

/// Parses the Turtle/TriG subset; throws ParseError with line and column.
Document parse(std::string_view text, const ParseOptions& options = {});

/// Renders a document that parses back to an isomorphic graph.
std::string serialize(const Document& doc);

/// Inserts every triple, renaming document blank nodes to fresh store blanks.
/// Returns the number of triples that were new to the store.
std::size_t load_into(Store& store, const Document& doc);

/// Snapshot of the whole store as a document.
Document to_document(const Store& store, std::map<std::string, std::string> prefixes = default_prefixes());

}  // namespace huto
