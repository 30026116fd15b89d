#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

namespace metaforge::rdf {

inline constexpr const char* kRdfType = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";
inline constexpr const char* kXsdString = "http://www.w3.org/2001/XMLSchema#string";

enum class TermKind { iri, literal, blank };

// A single RDF term. For literals, an empty datatype means xsd:string
// (plain literal); an explicit ^^xsd:string is normalized to empty.
struct Term {
    TermKind kind = TermKind::literal;
    std::string value;     // IRI text, literal lexical form, or blank label
    std::string datatype;  // literals only; empty = xsd:string

    static Term iri(std::string value);
    static Term literal(std::string value, std::string datatype = "");
    static Term blank(std::string label);

    bool is_iri() const { return kind == TermKind::iri; }
    bool is_literal() const { return kind == TermKind::literal; }
    bool is_blank() const { return kind == TermKind::blank; }

    friend bool operator==(const Term& a, const Term& b) = default;
    friend auto operator<=>(const Term& a, const Term& b) = default;
};

struct Triple {
    Term subject;
    Term predicate;
    Term object;

    friend bool operator==(const Triple& a, const Triple& b) = default;
};

// Deterministic ordering: subject text, predicate text, object kind, object
// text, object datatype.
struct TripleOrder {
    bool operator()(const Triple& a, const Triple& b) const;
};

// An immutable-after-construction set of triples. Subjects are never
// literals, predicates are always IRIs; violations are rejected at insert.
class Graph {
public:
    void add(Term subject, Term predicate, Term object);
    void add(const Triple& triple) { add(triple.subject, triple.predicate, triple.object); }
    void merge(const Graph& other);

    bool contains(const Triple& triple) const { return triples_.count(triple) > 0; }
    std::size_t size() const { return triples_.size(); }
    bool empty() const { return triples_.empty(); }

    const std::set<Triple, TripleOrder>& triples() const { return triples_; }

    std::vector<Triple> with_subject(const Term& subject) const;
    std::vector<Term> subjects_of_type(const std::string& class_iri) const;
    std::optional<std::string> type_of(const Term& subject) const;
    bool is_object(const Term& term) const;
    bool is_subject(const Term& term) const;

    friend bool operator==(const Graph& a, const Graph& b);

private:
    std::set<Triple, TripleOrder> triples_;
};

// Percent-encode the characters that may not appear raw in an IRI (space,
// quotes, angle brackets, braces, |, \, ^, `, controls). RFC 3986 reserved
// and unreserved characters and non-ASCII UTF-8 pass through, so values like
// "herminiogg/ShExML" keep their path structure.
std::string encode_iri_local_part(const std::string& value);

// True when the text parses as an absolute IRI: a scheme followed by
// characters that are all legal in an IRI.
bool is_valid_absolute_iri(const std::string& iri);

// One triple per line, lexicographically sorted, N-Triples escaping.
std::string serialize_ntriples(const Graph& graph);

// Minimal N-Triples reader (full-line triples, no comments mid-line). Used
// by tests and the debug surface; throws std::runtime_error on bad input.
Graph parse_ntriples(const std::string& text);

}  // namespace metaforge::rdf
