#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "metaforge/jsonld.hpp"
#include "metaforge/jsonutil.hpp"
#include "metaforge/rdf.hpp"

namespace metaforge::shapes {

enum class Severity { violation, warning };

const char* severity_name(Severity severity);

// One declarative constraint over a predicate of the target class. Full IRIs
// throughout; the schema file is self-contained.
struct PropertyConstraint {
    std::string path;  // predicate IRI
    enum class ValueKind { any, iri, literal, node };
    ValueKind kind = ValueKind::any;
    std::vector<std::string> node_classes;  // kind == node: allowed rdf:type IRIs
    std::string pattern;                    // regex over literal lexical forms
    std::vector<std::string> one_of;        // allowed literal values
    std::optional<int> min_count;
    std::optional<int> max_count;
    Severity severity = Severity::violation;
};

// "At least one alternative fully present" group, e.g. name or
// givenName+familyName on Person.
struct AnyOfGroup {
    std::vector<std::vector<std::string>> alternatives;
    Severity severity = Severity::violation;
};

struct NodeShape {
    std::string target_class;
    std::vector<PropertyConstraint> constraints;
    std::vector<AnyOfGroup> any_of;

    bool covers_path(const std::string& path) const;
};

struct ShapeSchema {
    std::vector<NodeShape> shapes;

    const NodeShape* shape_for(const std::string& class_iri) const;
};

struct ReportEntry {
    std::string focus;
    std::string path;
    std::string constraint;  // short constraint tag: minCount, pattern, ...
    Severity severity = Severity::violation;
    std::string message;
};

struct ValidationReport {
    bool conforms = true;  // no violation-severity entries
    std::vector<ReportEntry> entries;

    bool has_warnings() const;
    Json to_json() const;
    std::string to_text() const;
};

ShapeSchema parse_shape_schema(const Json& document);
ShapeSchema load_shape_schema(const std::filesystem::path& file);

// Every node whose rdf:type matches a target class is checked. Properties
// the shape does not describe are reported as warnings. Pure function;
// entries come out sorted by (focus, path, message).
ValidationReport validate(const rdf::Graph& graph, const ShapeSchema& schema);

// Re-expands the framed document with the context, then validates.
ValidationReport validate_framed(const Json& framed, const jsonld::Context& context,
                                 const ShapeSchema& schema);

}  // namespace metaforge::shapes
