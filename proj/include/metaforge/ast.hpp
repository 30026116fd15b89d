#pragma once

#include <optional>
#include <string>
#include <vector>

namespace metaforge::dsl {

struct SourceLoc {
    int line = 0;
    int column = 0;
};

struct PrefixDecl {
    std::string label;
    std::string iri;
    SourceLoc loc;
};

struct SourceDecl {
    std::string name;
    std::string locator;
    SourceLoc loc;
};

// FUNCTIONS declarations are recorded verbatim but never executed; the
// engine's built-in registry implements the helpers.
struct FunctionsDecl {
    std::string label;
    std::string locator;
    SourceLoc loc;
};

enum class QueryLanguage { jsonpath, xpath };

const char* query_language_name(QueryLanguage language);

struct FieldDecl {
    std::string name;
    std::string query;
    SourceLoc loc;
};

struct IteratorDecl {
    std::string name;
    QueryLanguage language = QueryLanguage::jsonpath;
    bool explicit_language = false;  // nested iterators may restate the parent's
    std::string root_query;
    std::vector<FieldDecl> fields;
    std::vector<IteratorDecl> children;
    SourceLoc loc;
};

struct ExpressionBranch {
    std::string source;
    std::vector<std::string> iterator_path;  // iterator, then nested iterators
    SourceLoc loc;
};

struct ExpressionDecl {
    std::string name;
    std::vector<ExpressionBranch> branches;  // joined by UNION
    SourceLoc loc;
};

// Dotted reference to bound data: expression.field or
// expression.childIterator.field (arbitrarily deep).
struct FieldPath {
    std::vector<std::string> parts;

    std::string text() const;
};

// The bracketed part of a subject or object: either a plain field path or a
// registered helper-function call over field paths.
struct Generator {
    bool is_function = false;
    std::string function_namespace;  // FUNCTIONS label, e.g. "helper"
    std::string function_name;
    std::vector<FieldPath> arguments;  // plain path => exactly one entry

    const FieldPath& path() const { return arguments.front(); }
};

struct PrefixedName {
    std::string prefix;
    std::string local;

    std::string text() const { return prefix + ":" + local; }
};

enum class SubjectKind { generated, fixed, blank };

struct SubjectSpec {
    SubjectKind kind = SubjectKind::fixed;
    std::string prefix;   // generated and fixed forms
    Generator generator;  // generated form
    std::string local;    // fixed local part, or blank-node label
    SourceLoc loc;
};

enum class ObjectKind { generator, shape_link, literal, fixed_iri };

struct ObjectSpec {
    ObjectKind kind = ObjectKind::literal;
    Generator generator;
    PrefixedName link;   // shape link target
    std::string literal;
    PrefixedName fixed;
};

struct Statement {
    bool is_type = false;  // the 'a' shorthand for rdf:type
    PrefixedName predicate;
    ObjectSpec object;
    std::optional<PrefixedName> datatype;
    SourceLoc loc;
};

struct ShapeDecl {
    PrefixedName name;
    SubjectSpec subject;
    std::vector<Statement> statements;
    SourceLoc loc;
};

struct MappingDocument {
    std::vector<PrefixDecl> prefixes;
    std::vector<SourceDecl> sources;
    std::vector<FunctionsDecl> functions;
    std::vector<IteratorDecl> iterators;
    std::vector<ExpressionDecl> expressions;
    std::vector<ShapeDecl> shapes;
};

}  // namespace metaforge::dsl
