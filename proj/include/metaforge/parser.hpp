#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "metaforge/ast.hpp"
#include "metaforge/errors.hpp"

namespace metaforge::dsl {

// Parse mapping-language text into an AST. Throws ParseError with a 1-based
// line/column on malformed input; the unsupported keywords MATCHER, JOIN and
// MATCHING are rejected with an error naming the construct. Pure function,
// safe to call concurrently.
MappingDocument parse_mapping(const std::string& text);

// Canonical pretty-printer; parse(print_mapping(parse(text))) is structurally
// equal to parse(text).
std::string print_mapping(const MappingDocument& doc);

// Resolver link between shapes: explicit @-references, plus subject-overlap
// links for fixed subjects whose expanded IRI extends another shape's
// subject-generator prefix (those subjects can merge at materialization).
struct ShapeLink {
    enum class Kind { reference, subject_overlap };
    Kind kind = Kind::reference;
    std::string from_shape;
    std::string to_shape;
    std::string predicate;  // reference links only
};

class ResolvedMapping {
public:
    MappingDocument document;
    std::map<std::string, std::string> prefix_map;
    std::map<std::string, std::size_t> source_index;
    std::map<std::string, std::size_t> iterator_index;  // top-level iterators
    std::map<std::string, std::size_t> expression_index;
    std::map<std::string, std::size_t> shape_index;  // keyed by "prefix:local"
    std::vector<ShapeLink> shape_links;

    std::string expand(const PrefixedName& name) const;
    std::string expand_prefix(const std::string& prefix) const;

    const SourceDecl& source(const std::string& name) const;
    const IteratorDecl& iterator(const std::string& name) const;
    const ExpressionDecl& expression(const std::string& name) const;
    const ShapeDecl& shape(const std::string& name) const;

    // Locates the iterator a branch points at, walking nested iterators.
    const IteratorDecl* branch_iterator(const ExpressionBranch& branch) const;
};

// Bind every reference in the document. All problems are aggregated into a
// single ResolveError rather than failing on the first. Idempotent:
// resolving a resolved document's AST again yields the same result.
ResolvedMapping resolve_references(const MappingDocument& doc);

}  // namespace metaforge::dsl
