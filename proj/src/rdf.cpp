#include "metaforge/rdf.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <stdexcept>
#include <tuple>

namespace metaforge::rdf {

namespace {

int kind_rank(TermKind kind) {
    switch (kind) {
        case TermKind::iri: return 0;
        case TermKind::blank: return 1;
        case TermKind::literal: return 2;
    }
    return 3;
}

bool is_scheme_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) != 0;
}

bool is_scheme_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '+' || c == '-' || c == '.';
}

// Characters that may not appear raw in an IRI per RFC 3987.
bool is_iri_illegal(unsigned char c) {
    if (c <= 0x20 || c == 0x7f) return true;
    switch (c) {
        case '"': case '<': case '>': case '{': case '}': case '|':
        case '\\': case '^': case '`':
            return true;
        default:
            return false;
    }
}

void append_escaped_literal(std::string& out, const std::string& value) {
    for (unsigned char c : value) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            case '\b': out += "\\b"; break;
            case '\f': out += "\\f"; break;
            default:
                if (c < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04X", c);
                    out += buf;
                } else {
                    out += static_cast<char>(c);
                }
        }
    }
}

void append_term(std::string& out, const Term& term) {
    switch (term.kind) {
        case TermKind::iri:
            out += '<';
            out += term.value;
            out += '>';
            break;
        case TermKind::blank:
            out += "_:";
            out += term.value;
            break;
        case TermKind::literal:
            out += '"';
            append_escaped_literal(out, term.value);
            out += '"';
            if (!term.datatype.empty()) {
                out += "^^<";
                out += term.datatype;
                out += '>';
            }
            break;
    }
}

}  // namespace

Term Term::iri(std::string value) {
    Term t;
    t.kind = TermKind::iri;
    t.value = std::move(value);
    return t;
}

Term Term::literal(std::string value, std::string datatype) {
    Term t;
    t.kind = TermKind::literal;
    t.value = std::move(value);
    if (datatype != kXsdString) t.datatype = std::move(datatype);
    return t;
}

Term Term::blank(std::string label) {
    Term t;
    t.kind = TermKind::blank;
    t.value = std::move(label);
    return t;
}

bool TripleOrder::operator()(const Triple& a, const Triple& b) const {
    auto key = [](const Triple& t) {
        return std::tuple<const std::string&, const std::string&, int, const std::string&,
                          const std::string&>(t.subject.value, t.predicate.value,
                                              kind_rank(t.object.kind), t.object.value,
                                              t.object.datatype);
    };
    if (key(a) != key(b)) return key(a) < key(b);
    // Subjects with equal text but different kind (IRI vs blank) still differ.
    return std::tie(a.subject.kind, a.object.kind) < std::tie(b.subject.kind, b.object.kind);
}

void Graph::add(Term subject, Term predicate, Term object) {
    if (subject.is_literal()) throw std::invalid_argument("triple subject may not be a literal");
    if (!predicate.is_iri()) throw std::invalid_argument("triple predicate must be an IRI");
    triples_.insert(Triple{std::move(subject), std::move(predicate), std::move(object)});
}

void Graph::merge(const Graph& other) {
    for (const auto& t : other.triples_) triples_.insert(t);
}

std::vector<Triple> Graph::with_subject(const Term& subject) const {
    std::vector<Triple> out;
    for (const auto& t : triples_) {
        if (t.subject == subject) out.push_back(t);
    }
    return out;
}

std::vector<Term> Graph::subjects_of_type(const std::string& class_iri) const {
    std::vector<Term> out;
    for (const auto& t : triples_) {
        if (t.predicate.value == kRdfType && t.object.is_iri() && t.object.value == class_iri) {
            out.push_back(t.subject);
        }
    }
    // triples_ is already sorted by subject text; drop adjacent duplicates.
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::optional<std::string> Graph::type_of(const Term& subject) const {
    for (const auto& t : triples_) {
        if (t.subject == subject && t.predicate.value == kRdfType && t.object.is_iri()) {
            return t.object.value;
        }
    }
    return std::nullopt;
}

bool Graph::is_object(const Term& term) const {
    for (const auto& t : triples_) {
        if (t.object == term) return true;
    }
    return false;
}

bool Graph::is_subject(const Term& term) const {
    for (const auto& t : triples_) {
        if (t.subject == term) return true;
    }
    return false;
}

bool operator==(const Graph& a, const Graph& b) {
    return a.triples_ == b.triples_;
}

std::string encode_iri_local_part(const std::string& value) {
    std::string out;
    out.reserve(value.size());
    for (unsigned char c : value) {
        if (c < 0x80 && is_iri_illegal(c)) {
            char buf[4];
            std::snprintf(buf, sizeof buf, "%02X", c);
            out += '%';
            out += buf;
        } else {
            out += static_cast<char>(c);
        }
    }
    return out;
}

bool is_valid_absolute_iri(const std::string& iri) {
    if (iri.empty() || !is_scheme_start(iri[0])) return false;
    std::size_t i = 1;
    while (i < iri.size() && is_scheme_char(iri[i])) ++i;
    if (i >= iri.size() || iri[i] != ':') return false;
    for (unsigned char c : iri) {
        if (c < 0x80 && is_iri_illegal(c)) return false;
    }
    return true;
}

std::string serialize_ntriples(const Graph& graph) {
    std::string out;
    for (const auto& t : graph.triples()) {
        append_term(out, t.subject);
        out += ' ';
        append_term(out, t.predicate);
        out += ' ';
        append_term(out, t.object);
        out += " .\n";
    }
    return out;
}

namespace {

struct NtReader {
    const std::string& text;
    std::size_t pos = 0;

    [[noreturn]] void fail(const std::string& message) const {
        throw std::runtime_error("ntriples: " + message + " at offset " + std::to_string(pos));
    }

    bool eof() const { return pos >= text.size(); }
    char peek() const { return text[pos]; }

    void skip_space() {
        while (!eof() && (peek() == ' ' || peek() == '\t')) ++pos;
    }

    Term read_term() {
        skip_space();
        if (eof()) fail("unexpected end of input");
        char c = peek();
        if (c == '<') return read_iri();
        if (c == '_') return read_blank();
        if (c == '"') return read_literal();
        fail("expected term");
    }

    Term read_iri() {
        ++pos;  // <
        std::string value;
        while (!eof() && peek() != '>') value += text[pos++];
        if (eof()) fail("unterminated IRI");
        ++pos;
        return Term::iri(std::move(value));
    }

    Term read_blank() {
        if (pos + 1 >= text.size() || text[pos + 1] != ':') fail("expected blank node");
        pos += 2;
        std::string label;
        while (!eof() && (std::isalnum(static_cast<unsigned char>(peek())) != 0)) label += text[pos++];
        if (label.empty()) fail("empty blank label");
        return Term::blank(std::move(label));
    }

    Term read_literal() {
        ++pos;  // "
        std::string value;
        while (!eof() && peek() != '"') {
            char c = text[pos++];
            if (c == '\\') {
                if (eof()) fail("dangling escape");
                char e = text[pos++];
                switch (e) {
                    case 'n': value += '\n'; break;
                    case 'r': value += '\r'; break;
                    case 't': value += '\t'; break;
                    case 'b': value += '\b'; break;
                    case 'f': value += '\f'; break;
                    case '"': value += '"'; break;
                    case '\\': value += '\\'; break;
                    case 'u': {
                        if (pos + 4 > text.size()) fail("bad \\u escape");
                        unsigned code = std::stoul(text.substr(pos, 4), nullptr, 16);
                        pos += 4;
                        if (code > 0xff) fail("\\u escape beyond Latin-1 not supported by reader");
                        value += static_cast<char>(code);
                        break;
                    }
                    default: fail("unknown escape");
                }
            } else {
                value += c;
            }
        }
        if (eof()) fail("unterminated literal");
        ++pos;
        std::string datatype;
        if (pos + 1 < text.size() && text[pos] == '^' && text[pos + 1] == '^') {
            pos += 2;
            if (eof() || peek() != '<') fail("expected datatype IRI");
            datatype = read_iri().value;
        }
        return Term::literal(std::move(value), std::move(datatype));
    }
};

}  // namespace

Graph parse_ntriples(const std::string& text) {
    Graph graph;
    std::size_t start = 0;
    while (start < text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string::npos) end = text.size();
        std::string line = text.substr(start, end - start);
        start = end + 1;
        std::size_t first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        NtReader reader{line, first};
        Term s = reader.read_term();
        Term p = reader.read_term();
        Term o = reader.read_term();
        reader.skip_space();
        if (reader.eof() || reader.peek() != '.') reader.fail("expected '.'");
        graph.add(std::move(s), std::move(p), std::move(o));
    }
    return graph;
}

}  // namespace metaforge::rdf
