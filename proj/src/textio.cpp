#include "huto/textio.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "huto/error.hpp"
#include "huto/vocab.hpp"

namespace huto {

std::size_t Document::triple_count() const noexcept {
    std::size_t n = default_graph.size();
    for (const auto& [g, ts] : named_graphs) n += ts.size();
    return n;
}

std::vector<Triple> Document::all_triples() const {
    std::vector<Triple> out = default_graph;
    for (const auto& [g, ts] : named_graphs) out.insert(out.end(), ts.begin(), ts.end());
    return out;
}

std::map<std::string, std::string> default_prefixes() {
    return {{"", std::string(kHutoNs)},
            {"rdf", std::string(kRdfNs)},
            {"rdfs", std::string(kRdfsNs)},
            {"data", std::string(kDataNs)}};
}

namespace {

bool is_name_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }

bool is_name_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.';
}

bool has_scheme(std::string_view iri) {
    const auto colon = iri.find(':');
    if (colon == std::string_view::npos || colon == 0) return false;
    return std::all_of(iri.begin(), iri.begin() + static_cast<std::ptrdiff_t>(colon), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '+' || c == '-' || c == '.';
    });
}

class Parser {
public:
    Parser(std::string_view text, const ParseOptions& options) : text_(text), base_(options.base) {}

    Document run() {
        skip_ws();
        while (!at_end()) {
            statement();
            skip_ws();
        }
        return std::move(doc_);
    }

private:
    // ---- character level -------------------------------------------------

    bool at_end() const { return pos_ >= text_.size(); }
    char peek(std::size_t ahead = 0) const {
        return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
    }

    char get() {
        const char c = text_[pos_++];
        if (c == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        return c;
    }

    void skip_ws() {
        while (!at_end()) {
            const char c = peek();
            if (c == '#') {
                while (!at_end() && peek() != '\n') get();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                get();
            } else {
                return;
            }
        }
    }

    [[noreturn]] void fail(const std::string& message) const { fail_at(message, line_, col_); }

    [[noreturn]] static void fail_at(const std::string& message, std::size_t line, std::size_t col,
                                     ErrorCode code = ErrorCode::ParseError) {
        throw ParseError(code, std::to_string(line) + ":" + std::to_string(col) + ": " + message, line, col);
    }

    void expect(char c) {
        skip_ws();
        if (peek() != c || at_end()) fail(std::string("expected '") + c + "'");
        get();
    }

    bool accept(char c) {
        skip_ws();
        if (!at_end() && peek() == c) {
            get();
            return true;
        }
        return false;
    }

    bool keyword_ahead(std::string_view word, bool case_insensitive) const {
        if (text_.size() - pos_ < word.size()) return false;
        for (std::size_t i = 0; i < word.size(); ++i) {
            char a = text_[pos_ + i];
            char b = word[i];
            if (case_insensitive) {
                a = static_cast<char>(std::toupper(static_cast<unsigned char>(a)));
                b = static_cast<char>(std::toupper(static_cast<unsigned char>(b)));
            }
            if (a != b) return false;
        }
        const char after = pos_ + word.size() < text_.size() ? text_[pos_ + word.size()] : ' ';
        return !is_name_char(after) && after != ':';
    }

    void consume(std::size_t n) {
        for (std::size_t i = 0; i < n; ++i) get();
    }

    // ---- grammar -----------------------------------------------------------

    void statement() {
        if (peek() == '@') {
            if (keyword_ahead("@prefix", false)) {
                consume(7);
                prefix_decl();
                expect('.');
                return;
            }
            if (keyword_ahead("@base", false)) {
                consume(5);
                base_decl();
                expect('.');
                return;
            }
            fail("unknown directive");
        }
        if (keyword_ahead("PREFIX", true)) {
            consume(6);
            prefix_decl();
            return;
        }
        if (keyword_ahead("BASE", true)) {
            consume(4);
            base_decl();
            return;
        }
        if (keyword_ahead("GRAPH", true)) {
            consume(5);
            skip_ws();
            const Term name = iri_term();
            graph_block(name);
            return;
        }
        if (peek() == '{') {
            graph_block(std::nullopt);
            return;
        }

        skip_ws();
        if (peek() == '<' || is_prefixed_name_start()) {
            const Term subject = iri_term();
            skip_ws();
            if (peek() == '{') {
                graph_block(subject);
                return;
            }
            predicate_object_list(subject);
            expect('.');
            return;
        }
        triples_rest();
        expect('.');
    }

    void prefix_decl() {
        skip_ws();
        std::string name;
        while (!at_end() && peek() != ':') {
            if (!is_name_char(peek())) fail("malformed prefix name");
            name += get();
        }
        if (at_end()) fail("expected ':' in prefix declaration");
        get();
        skip_ws();
        const std::string iri = iri_ref();
        doc_.prefixes[name] = iri;
        prefixes_[name] = iri;
    }

    void base_decl() {
        skip_ws();
        base_ = iri_ref();
    }

    void graph_block(std::optional<Term> name) {
        expect('{');
        graph_ = name;
        if (name) doc_.named_graphs[*name];
        skip_ws();
        while (peek() != '}') {
            if (at_end()) fail("unterminated graph block");
            if (peek() == '<' || is_prefixed_name_start()) {
                const Term subject = iri_term();
                predicate_object_list(subject);
            } else {
                triples_rest();
            }
            skip_ws();
            if (peek() == '.') {
                get();
                skip_ws();
            } else if (peek() != '}') {
                fail("expected '.' or '}'");
            }
        }
        get();
        graph_.reset();
        skip_ws();
        if (peek() == '.') get();
    }

    /// Triples whose subject is a blank node label or a `[ ... ]` block.
    void triples_rest() {
        skip_ws();
        if (peek() == '[') {
            const Term subject = blank_property_list();
            skip_ws();
            if (peek() != '.' && peek() != '}') predicate_object_list(subject);
            return;
        }
        if (peek() == '_' && peek(1) == ':') {
            const Term subject = blank_label();
            predicate_object_list(subject);
            return;
        }
        fail("expected a subject");
    }

    void predicate_object_list(const Term& subject) {
        for (;;) {
            skip_ws();
            const Term predicate = verb();
            object_list(subject, predicate);
            if (!accept(';')) return;
            // Repeated and trailing ';' are allowed.
            while (accept(';')) {
            }
            skip_ws();
            if (peek() == '.' || peek() == ']' || peek() == '}' || at_end()) return;
        }
    }

    void object_list(const Term& subject, const Term& predicate) {
        do {
            skip_ws();
            const std::size_t line = line_;
            const std::size_t col = col_;
            const Term o = object();
            emit(subject, predicate, o, line, col);
        } while (accept(','));
    }

    Term verb() {
        skip_ws();
        if (peek() == 'a') {
            const char next = peek(1);
            if (std::isspace(static_cast<unsigned char>(next)) || next == '[' || next == '<' || next == '\0') {
                get();
                return vocab().rdf_type;
            }
        }
        if (peek() == '<' || is_prefixed_name_start()) return iri_term();
        fail("expected a predicate");
    }

    Term object() {
        skip_ws();
        const char c = peek();
        if (c == '[') return blank_property_list();
        if (c == '_' && peek(1) == ':') return blank_label();
        if (c == '"') return Term::string(string_literal());
        if (std::isdigit(static_cast<unsigned char>(c)) ||
            ((c == '-' || c == '+') && std::isdigit(static_cast<unsigned char>(peek(1))))) {
            return integer_literal();
        }
        if (c == '<' || is_prefixed_name_start()) return iri_term();
        fail("expected an object");
    }

    Term blank_property_list() {
        expect('[');
        const Term node = fresh();
        skip_ws();
        if (peek() != ']') predicate_object_list(node);
        expect(']');
        return node;
    }

    Term blank_label() {
        consume(2);
        std::string label;
        while (!at_end() && is_name_char(peek())) label += get();
        while (!label.empty() && label.back() == '.') {
            label.pop_back();
            --pos_;
            --col_;
        }
        if (label.empty()) fail("empty blank node label");
        auto it = labels_.find(label);
        if (it != labels_.end()) return it->second;
        const Term node = fresh();
        labels_.emplace(label, node);
        return node;
    }

    std::string string_literal() {
        get();
        std::string out;
        for (;;) {
            if (at_end()) fail("unterminated string");
            const char c = get();
            if (c == '"') return out;
            if (c == '\\') {
                if (at_end()) fail("unterminated escape");
                const char e = get();
                if (e != '"' && e != '\\') fail(std::string("unsupported escape \\") + e);
                out += e;
            } else {
                out += c;
            }
        }
    }

    Term integer_literal() {
        const std::size_t line = line_;
        const std::size_t col = col_;
        std::string digits;
        if (peek() == '-' || peek() == '+') digits += get();
        while (std::isdigit(static_cast<unsigned char>(peek()))) digits += get();
        if (is_name_start(peek())) fail("malformed number");
        try {
            return Term::integer(std::stoll(digits));
        } catch (const std::out_of_range&) {
            fail_at("integer out of range", line, col);
        }
    }

    bool is_prefixed_name_start() const {
        const char c = peek();
        if (c == ':') return true;
        if (!is_name_start(c) || (c == '_' && peek(1) == ':')) return false;
        std::size_t i = pos_;
        while (i < text_.size() && is_name_char(text_[i])) ++i;
        return i < text_.size() && text_[i] == ':';
    }

    std::string iri_ref() {
        skip_ws();
        if (peek() != '<') fail("expected '<'");
        get();
        std::string out;
        for (;;) {
            if (at_end()) fail("unterminated IRI");
            const char c = get();
            if (c == '>') break;
            if (c == '\n' || c == ' ') fail("whitespace inside IRI");
            out += c;
        }
        return out;
    }

    std::string resolve(const std::string& iri) const {
        if (has_scheme(iri)) return iri;
        return base_ + iri;
    }

    Term iri_term() {
        skip_ws();
        if (peek() == '<') return Term::iri(resolve(iri_ref()));
        const std::size_t line = line_;
        const std::size_t col = col_;
        std::string prefix;
        while (peek() != ':') prefix += get();
        get();
        std::string local;
        while (!at_end() && is_name_char(peek())) local += get();
        while (!local.empty() && local.back() == '.') {
            local.pop_back();
            --pos_;
            --col_;
        }
        auto it = prefixes_.find(prefix);
        if (it == prefixes_.end()) fail_at("unknown prefix '" + prefix + ":'", line, col, ErrorCode::UnknownPrefix);
        return Term::iri(it->second + local);
    }

    Term fresh() { return Term::blank(next_blank_++); }

    void emit(const Term& s, const Term& p, const Term& o, std::size_t line, std::size_t col) {
        if (s.is_literal()) fail_at("literal in subject position", line, col);
        Triple t{s, p, o, graph_};
        if (graph_) {
            doc_.named_graphs[*graph_].push_back(std::move(t));
        } else {
            doc_.default_graph.push_back(std::move(t));
        }
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t col_ = 1;
    std::string base_;
    std::map<std::string, std::string> prefixes_;
    std::unordered_map<std::string, Term> labels_;
    std::optional<Term> graph_;
    std::uint64_t next_blank_ = 1;
    Document doc_;
};

// ---- serializer ------------------------------------------------------------

bool valid_local(std::string_view local) {
    if (local.empty()) return true;
    if (!is_name_start(local.front()) && !std::isdigit(static_cast<unsigned char>(local.front()))) return false;
    if (local.back() == '.') return false;
    return std::all_of(local.begin(), local.end(), is_name_char);
}

class Writer {
public:
    explicit Writer(const Document& doc) : doc_(doc) {
        // Longest namespace first so the most specific prefix wins.
        for (const auto& [p, ns] : doc.prefixes) namespaces_.emplace_back(ns, p);
        std::sort(namespaces_.begin(), namespaces_.end(),
                  [](const auto& a, const auto& b) { return a.first.size() > b.first.size(); });
        index_blanks();
    }

    std::string run() {
        for (const auto& [p, ns] : doc_.prefixes) out_ += "@prefix " + p + ": <" + ns + "> .\n";
        if (!doc_.prefixes.empty()) out_ += "\n";
        write_graph(std::nullopt, doc_.default_graph, "");
        for (const auto& [g, ts] : doc_.named_graphs) {
            out_ += term(g) + " {\n";
            write_graph(g, ts, "  ");
            out_ += "}\n\n";
        }
        return out_;
    }

private:
    using GraphKey = std::optional<Term>;

    void index_blanks() {
        auto scan = [&](const std::vector<Triple>& ts) {
            for (const auto& t : ts) {
                if (t.object.is_blank()) {
                    ++object_refs_[t.object];
                    object_graph_[t.object] = t.graph;
                }
                if (t.subject.is_blank()) subject_graphs_[t.subject].insert(t.graph);
            }
        };
        scan(doc_.default_graph);
        for (const auto& [g, ts] : doc_.named_graphs) scan(ts);
        for (const auto& [b, n] : object_refs_) {
            if (n != 1) continue;
            auto sg = subject_graphs_.find(b);
            if (sg == subject_graphs_.end() ||
                (sg->second.size() == 1 && *sg->second.begin() == object_graph_[b])) {
                inline_.insert(b);
            }
        }
    }

    std::string term(const Term& t) const {
        switch (t.kind()) {
            case TermKind::Iri: {
                for (const auto& [ns, p] : namespaces_) {
                    if (t.text().size() >= ns.size() && t.text().compare(0, ns.size(), ns) == 0) {
                        const std::string_view local = std::string_view(t.text()).substr(ns.size());
                        if (valid_local(local)) return p + ":" + std::string(local);
                    }
                }
                return "<" + t.text() + ">";
            }
            case TermKind::Blank:
                return "_:b" + std::to_string(t.blank_id());
            case TermKind::Integer:
                return std::to_string(t.integer_value());
            case TermKind::String: {
                std::string s = "\"";
                for (char c : t.text()) {
                    if (c == '"' || c == '\\') s += '\\';
                    s += c;
                }
                return s + "\"";
            }
        }
        return {};
    }

    std::string predicate(const Term& p) const { return p == vocab().rdf_type ? "a" : term(p); }

    std::string object(const Term& o, const std::string& indent) {
        if (o.is_blank() && inline_.count(o)) return nested(o, indent);
        return term(o);
    }

    std::string nested(const Term& node, const std::string& indent) {
        emitted_.insert(node);
        auto it = by_subject_.find(node);
        if (it == by_subject_.end() || it->second.empty()) return "[]";
        return "[\n" + body(it->second, indent + "  ") + "\n" + indent + "]";
    }

    std::string body(const std::vector<const Triple*>& ts, const std::string& indent) {
        std::string s;
        for (std::size_t i = 0; i < ts.size(); ++i) {
            if (i > 0) s += " ;\n";
            s += indent + predicate(ts[i]->predicate) + " " + object(ts[i]->object, indent);
        }
        return s;
    }

    void write_graph(const GraphKey& g, const std::vector<Triple>& ts, const std::string& indent) {
        by_subject_.clear();
        std::vector<Term> subjects;
        for (const auto& t : ts) {
            auto& list = by_subject_[t.subject];
            if (list.empty()) subjects.push_back(t.subject);
            list.push_back(&t);
        }
        auto write_root = [&](const Term& s) {
            emitted_.insert(s);
            out_ += indent + term(s) + "\n" + body(by_subject_[s], indent + "  ") + " .\n";
        };
        for (const Term& s : subjects) {
            if (!inline_.count(s)) write_root(s);
        }
        // Blank nodes that only reference each other in a cycle have no root: label one and retry.
        for (const Term& s : subjects) {
            if (!emitted_.count(s)) {
                inline_.erase(s);
                write_root(s);
            }
        }
        (void)g;
        out_ += "\n";
    }

    const Document& doc_;
    std::vector<std::pair<std::string, std::string>> namespaces_;
    std::unordered_map<Term, std::size_t> object_refs_;
    std::unordered_map<Term, GraphKey> object_graph_;
    std::unordered_map<Term, std::set<GraphKey>> subject_graphs_;
    std::unordered_set<Term> inline_;
    std::unordered_set<Term> emitted_;
    std::unordered_map<Term, std::vector<const Triple*>> by_subject_;
    std::string out_;
};

}  // namespace

Document parse(std::string_view text, const ParseOptions& options) { return Parser(text, options).run(); }

std::string serialize(const Document& doc) { return Writer(doc).run(); }

std::size_t load_into(Store& store, const Document& doc) {
    std::unordered_map<Term, Term> renamed;
    auto map = [&](const Term& t) -> Term {
        if (!t.is_blank()) return t;
        auto it = renamed.find(t);
        if (it != renamed.end()) return it->second;
        const Term fresh = store.fresh_blank();
        renamed.emplace(t, fresh);
        return fresh;
    };
    std::size_t added = 0;
    for (const Triple& t : doc.all_triples()) {
        if (store.insert(Triple{map(t.subject), t.predicate, map(t.object), t.graph})) ++added;
    }
    return added;
}

Document to_document(const Store& store, std::map<std::string, std::string> prefixes) {
    Document doc;
    doc.prefixes = std::move(prefixes);
    for (const Triple& t : store.triples()) {
        if (t.graph) {
            doc.named_graphs[*t.graph].push_back(t);
        } else {
            doc.default_graph.push_back(t);
        }
    }
    return doc;
}

}  // namespace huto
