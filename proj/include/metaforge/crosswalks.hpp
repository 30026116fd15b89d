#pragma once

#include <map>
#include <string>
#include <vector>

#include "metaforge/errors.hpp"
#include "metaforge/jsonutil.hpp"

namespace metaforge::crosswalks {

class TemplateError : public Error {
public:
    explicit TemplateError(const std::string& message) : Error(Stage::parse, message) {}
};

// A bundled mapping template: text with {{placeholder}} slots and optional
// {{#flag}}...{{/flag}} sections, plus the default parameter values that
// reproduce the reference project's mapping.
struct CrosswalkTemplate {
    std::string id;
    std::string text;
    std::map<std::string, std::string> defaults;
};

// The bundled templates: github, maven, zenodo, merged.
std::vector<std::string> template_ids();
CrosswalkTemplate load_template(const std::string& id);

// Textual substitution. Parameters override the template defaults; section
// flags take "true"/"false". An unbound {{placeholder}} is an error.
std::string instantiate(const CrosswalkTemplate& tmpl,
                        const std::map<std::string, std::string>& params);

// Machine-readable crosswalk coverage: each row ties a (CodeMeta class,
// attribute, provider attribute) tuple to the template shape/statement that
// implements it.
struct CoverageRow {
    std::string table;      // "providers" or "merged"
    std::string template_id;
    std::string codemeta_class;
    std::string attribute;
    std::string provider;          // GitHub / Zenodo / Maven / User / ...
    std::string provider_attribute;
    std::string shape;  // shape implementing the row, e.g. "ex:Dependency"
    std::string via;    // linked shape for @-reference rows, else empty
    std::string note;
};

std::vector<CoverageRow> list_crosswalk_coverage();

}  // namespace metaforge::crosswalks
