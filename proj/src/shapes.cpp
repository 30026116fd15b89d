#include "metaforge/shapes.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <regex>
#include <sstream>
#include <tuple>

namespace metaforge::shapes {

const char* severity_name(Severity severity) {
    return severity == Severity::violation ? "violation" : "warning";
}

bool NodeShape::covers_path(const std::string& path) const {
    for (const auto& constraint : constraints) {
        if (constraint.path == path) return true;
    }
    for (const auto& group : any_of) {
        for (const auto& alternative : group.alternatives) {
            for (const auto& p : alternative) {
                if (p == path) return true;
            }
        }
    }
    return false;
}

const NodeShape* ShapeSchema::shape_for(const std::string& class_iri) const {
    for (const auto& shape : shapes) {
        if (shape.target_class == class_iri) return &shape;
    }
    return nullptr;
}

bool ValidationReport::has_warnings() const {
    return std::any_of(entries.begin(), entries.end(), [](const ReportEntry& e) {
        return e.severity == Severity::warning;
    });
}

Json ValidationReport::to_json() const {
    Json out = Json::object();
    out["conforms"] = conforms;
    Json list = Json::array();
    for (const auto& entry : entries) {
        Json e = Json::object();
        e["focus"] = entry.focus;
        e["path"] = entry.path;
        e["constraint"] = entry.constraint;
        e["severity"] = severity_name(entry.severity);
        e["message"] = entry.message;
        list.push_back(std::move(e));
    }
    out["entries"] = std::move(list);
    return out;
}

std::string ValidationReport::to_text() const {
    std::ostringstream out;
    out << (conforms ? "conforms" : "does not conform") << " (" << entries.size()
        << (entries.size() == 1 ? " entry" : " entries") << ")\n";
    for (const auto& entry : entries) {
        out << "  [" << severity_name(entry.severity) << "] " << entry.focus << " " << entry.path
            << ": " << entry.message << "\n";
    }
    return out.str();
}

namespace {

Severity parse_severity(const Json& object) {
    std::string text = object.value("severity", "violation");
    if (text == "violation") return Severity::violation;
    if (text == "warning") return Severity::warning;
    throw std::runtime_error("unknown severity '" + text + "' in shape schema");
}

PropertyConstraint parse_constraint(const Json& object) {
    PropertyConstraint constraint;
    constraint.path = object.at("path").get<std::string>();
    std::string kind = object.value("kind", "any");
    if (kind == "any") {
        constraint.kind = PropertyConstraint::ValueKind::any;
    } else if (kind == "iri") {
        constraint.kind = PropertyConstraint::ValueKind::iri;
    } else if (kind == "literal") {
        constraint.kind = PropertyConstraint::ValueKind::literal;
    } else if (kind == "node") {
        constraint.kind = PropertyConstraint::ValueKind::node;
    } else {
        throw std::runtime_error("unknown value kind '" + kind + "' in shape schema");
    }
    if (object.contains("nodeClasses")) {
        for (const auto& c : object.at("nodeClasses")) {
            constraint.node_classes.push_back(c.get<std::string>());
        }
    }
    constraint.pattern = object.value("pattern", "");
    if (object.contains("oneOf")) {
        for (const auto& v : object.at("oneOf")) {
            constraint.one_of.push_back(v.get<std::string>());
        }
    }
    if (object.contains("minCount")) constraint.min_count = object.at("minCount").get<int>();
    if (object.contains("maxCount")) constraint.max_count = object.at("maxCount").get<int>();
    constraint.severity = parse_severity(object);
    if (constraint.min_count && constraint.max_count &&
        *constraint.min_count > *constraint.max_count) {
        throw std::runtime_error("minCount > maxCount for " + constraint.path);
    }
    return constraint;
}

}  // namespace

ShapeSchema parse_shape_schema(const Json& document) {
    ShapeSchema schema;
    std::map<std::string, bool> seen;
    for (const auto& shape_json : document.at("shapes")) {
        NodeShape shape;
        shape.target_class = shape_json.at("targetClass").get<std::string>();
        if (!seen.emplace(shape.target_class, true).second) {
            throw std::runtime_error("duplicate targetClass " + shape.target_class);
        }
        if (shape_json.contains("properties")) {
            for (const auto& c : shape_json.at("properties")) {
                shape.constraints.push_back(parse_constraint(c));
            }
        }
        if (shape_json.contains("anyOf")) {
            for (const auto& group_json : shape_json.at("anyOf")) {
                AnyOfGroup group;
                for (const auto& alternative : group_json.at("alternatives")) {
                    std::vector<std::string> paths;
                    for (const auto& p : alternative) paths.push_back(p.get<std::string>());
                    group.alternatives.push_back(std::move(paths));
                }
                group.severity = parse_severity(group_json);
                shape.any_of.push_back(std::move(group));
            }
        }
        schema.shapes.push_back(std::move(shape));
    }
    return schema;
}

ShapeSchema load_shape_schema(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw std::runtime_error("cannot open shape schema " + file.string());
    Json document = Json::parse(in);
    return parse_shape_schema(document);
}

namespace {

std::string focus_text(const rdf::Term& term) {
    return term.is_blank() ? "_:" + term.value : term.value;
}

std::string alternatives_text(const AnyOfGroup& group) {
    std::string out;
    for (std::size_t i = 0; i < group.alternatives.size(); ++i) {
        if (i > 0) out += " | ";
        for (std::size_t j = 0; j < group.alternatives[i].size(); ++j) {
            if (j > 0) out += "+";
            out += group.alternatives[i][j];
        }
    }
    return out;
}

class Validator {
public:
    Validator(const rdf::Graph& graph, const ShapeSchema& schema)
        : graph_(graph), schema_(schema) {}

    ValidationReport run() {
        for (const auto& shape : schema_.shapes) {
            for (const auto& focus : graph_.subjects_of_type(shape.target_class)) {
                check_node(focus, shape);
            }
        }
        std::sort(report_.entries.begin(), report_.entries.end(),
                  [](const ReportEntry& a, const ReportEntry& b) {
                      return std::tie(a.focus, a.path, a.message) <
                             std::tie(b.focus, b.path, b.message);
                  });
        report_.conforms = std::none_of(report_.entries.begin(), report_.entries.end(),
                                        [](const ReportEntry& e) {
                                            return e.severity == Severity::violation;
                                        });
        return std::move(report_);
    }

private:
    const rdf::Graph& graph_;
    const ShapeSchema& schema_;
    ValidationReport report_;

    void entry(const rdf::Term& focus, const std::string& path, const std::string& constraint,
               Severity severity, const std::string& message) {
        report_.entries.push_back(
            ReportEntry{focus_text(focus), path, constraint, severity, message});
    }

    // One entry at most per offending value; the first failed check wins.
    void check_value(const rdf::Term& focus, const PropertyConstraint& constraint,
                     const rdf::Term& value) {
        switch (constraint.kind) {
            case PropertyConstraint::ValueKind::any:
                break;
            case PropertyConstraint::ValueKind::iri:
                if (!value.is_iri()) {
                    entry(focus, constraint.path, "valueKind", constraint.severity,
                          "expected an IRI value, got " +
                              std::string(value.is_literal() ? "a literal" : "a blank node"));
                    return;
                }
                break;
            case PropertyConstraint::ValueKind::literal:
                if (!value.is_literal()) {
                    entry(focus, constraint.path, "valueKind", constraint.severity,
                          "expected a literal value, got an IRI or blank node");
                    return;
                }
                break;
            case PropertyConstraint::ValueKind::node: {
                if (value.is_literal()) {
                    entry(focus, constraint.path, "nodeKind", constraint.severity,
                          "expected a node, got the literal \"" + value.value + "\"");
                    return;
                }
                auto type = graph_.type_of(value);
                bool ok = type && std::find(constraint.node_classes.begin(),
                                            constraint.node_classes.end(),
                                            *type) != constraint.node_classes.end();
                if (!ok) {
                    entry(focus, constraint.path, "nodeClass", constraint.severity,
                          "value " + focus_text(value) + " is not a node of " +
                              (constraint.node_classes.empty()
                                   ? std::string("the required class")
                                   : constraint.node_classes.front() +
                                         (constraint.node_classes.size() > 1 ? " (or allowed alternatives)"
                                                                             : "")));
                    return;
                }
                break;
            }
        }
        if (!value.is_literal()) return;
        if (!constraint.pattern.empty()) {
            std::regex re(constraint.pattern);
            if (!std::regex_search(value.value, re)) {
                entry(focus, constraint.path, "pattern", constraint.severity,
                      "value \"" + value.value + "\" does not match " + constraint.pattern);
                return;
            }
        }
        if (!constraint.one_of.empty() &&
            std::find(constraint.one_of.begin(), constraint.one_of.end(), value.value) ==
                constraint.one_of.end()) {
            entry(focus, constraint.path, "oneOf", constraint.severity,
                  "value \"" + value.value + "\" is not one of the allowed values");
        }
    }

    void check_node(const rdf::Term& focus, const NodeShape& shape) {
        std::map<std::string, std::vector<rdf::Term>> by_path;
        for (const auto& triple : graph_.with_subject(focus)) {
            if (triple.predicate.value == rdf::kRdfType) continue;
            by_path[triple.predicate.value].push_back(triple.object);
        }

        for (const auto& constraint : shape.constraints) {
            auto it = by_path.find(constraint.path);
            int count = it == by_path.end() ? 0 : static_cast<int>(it->second.size());
            if (constraint.min_count && count < *constraint.min_count) {
                entry(focus, constraint.path, "minCount", constraint.severity,
                      "expected at least " + std::to_string(*constraint.min_count) +
                          " value(s), found " + std::to_string(count));
            }
            if (constraint.max_count && count > *constraint.max_count) {
                entry(focus, constraint.path, "maxCount", constraint.severity,
                      "expected at most " + std::to_string(*constraint.max_count) +
                          " value(s), found " + std::to_string(count));
            }
            if (it != by_path.end()) {
                for (const auto& value : it->second) {
                    check_value(focus, constraint, value);
                }
            }
        }

        for (const auto& group : shape.any_of) {
            bool satisfied = false;
            for (const auto& alternative : group.alternatives) {
                bool all = true;
                for (const auto& path : alternative) {
                    if (by_path.find(path) == by_path.end()) {
                        all = false;
                        break;
                    }
                }
                if (all) {
                    satisfied = true;
                    break;
                }
            }
            if (!satisfied) {
                entry(focus, alternatives_text(group), "anyOf", group.severity,
                      "none of the property alternatives is fully present: " +
                          alternatives_text(group));
            }
        }

        // Open-world, but surface vocabulary drift.
        for (const auto& [path, values] : by_path) {
            if (!shape.covers_path(path)) {
                entry(focus, path, "unknownProperty", Severity::warning,
                      "property is not described by the shape for " + shape.target_class);
            }
        }
    }
};

}  // namespace

ValidationReport validate(const rdf::Graph& graph, const ShapeSchema& schema) {
    return Validator(graph, schema).run();
}

ValidationReport validate_framed(const Json& framed, const jsonld::Context& context,
                                 const ShapeSchema& schema) {
    return validate(jsonld::expand_framed(framed, context), schema);
}

}  // namespace metaforge::shapes
