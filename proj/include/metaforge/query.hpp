#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "metaforge/ast.hpp"
#include "metaforge/errors.hpp"
#include "metaforge/jsonutil.hpp"
#include "metaforge/xmldom.hpp"

namespace metaforge::query {

enum class Format { json, xml };

const char* format_name(Format format);

// A parsed source document. The parsed trees are shared so documents can be
// copied around cheaply; evaluation never mutates them.
struct SourceDocument {
    Format format = Format::json;
    std::string origin;  // locator text, for error messages
    std::string raw;     // exact bytes the document was parsed from
    std::shared_ptr<const Json> json_root;
    std::shared_ptr<const xml::Document> xml_doc;

    static SourceDocument from_json_text(const std::string& text, std::string origin);
    static SourceDocument from_xml_text(const std::string& text, std::string origin);
};

// One query match: a stringified scalar, or a subtree handle into the source
// document. Handles stay valid as long as the SourceDocument's trees live.
struct Value {
    std::string position;  // document position, e.g. "$.topics[1]" or "/0/2"
    bool scalar = false;
    std::string text;                        // scalar form
    const Json* json_node = nullptr;         // non-scalar JSON subtree
    const xml::Element* xml_node = nullptr;  // XML element

    // Text usable as a triple value: scalar text, or the element's trimmed
    // descendant text for XML matches. JSON containers have none.
    std::optional<std::string> scalar_text() const;
};

struct ValueSet {
    std::vector<Value> values;

    bool empty() const { return values.empty(); }
    std::size_t size() const { return values.size(); }
};

class QueryError : public Error {
public:
    explicit QueryError(const std::string& message) : Error(Stage::generate, message) {}
};

// JSONPath subset: optional leading '$', dot-separated member steps, "[n]"
// indexes; a member step maps over arrays. Child steps on scalars yield an
// empty set. Wildcards, filters and recursive descent are rejected with a
// QueryError.
ValueSet eval_jsonpath(const std::string& query, const SourceDocument& doc,
                       const Json* context = nullptr);

// XPath subset: '/'-separated child steps, either element names (matched by
// local name) or node() with an optional [local-name(.)='x'] predicate.
// Attributes and other predicates are rejected.
ValueSet eval_xpath(const std::string& query, const SourceDocument& doc,
                    const xml::Element* context = nullptr);

// Dispatch on the iterator's query language; the document format must agree.
ValueSet eval(dsl::QueryLanguage language, const std::string& query, const SourceDocument& doc,
              const Value* context = nullptr);

}  // namespace metaforge::query
