#include "metaforge/query.hpp"

#include <cctype>
#include <cmath>
#include <utility>

namespace metaforge::query {

const char* format_name(Format format) {
    return format == Format::json ? "json" : "xml";
}

SourceDocument SourceDocument::from_json_text(const std::string& text, std::string origin) {
    SourceDocument doc;
    doc.format = Format::json;
    doc.origin = std::move(origin);
    doc.raw = text;
    try {
        doc.json_root = std::make_shared<const Json>(Json::parse(text));
    } catch (const Json::parse_error& e) {
        throw QueryError("cannot parse JSON from " + doc.origin + ": " + e.what());
    }
    return doc;
}

SourceDocument SourceDocument::from_xml_text(const std::string& text, std::string origin) {
    SourceDocument doc;
    doc.format = Format::xml;
    doc.origin = std::move(origin);
    doc.raw = text;
    try {
        doc.xml_doc = std::make_shared<const xml::Document>(xml::Document::parse(text));
    } catch (const std::runtime_error& e) {
        throw QueryError("cannot parse XML from " + doc.origin + ": " + e.what());
    }
    return doc;
}

std::optional<std::string> Value::scalar_text() const {
    if (scalar) return text;
    if (xml_node != nullptr) return xml::trim(xml_node->text_content());
    return std::nullopt;
}

namespace {

// ---------------------------------------------------------------- JSONPath

struct JsonStep {
    enum class Kind { member, index };
    Kind kind = Kind::member;
    std::string key;
    std::size_t index = 0;
};

std::vector<JsonStep> parse_jsonpath(const std::string& original) {
    std::string q = original;
    for (const char* marker : {"..", "*", "?(", "'", "\""}) {
        if (q.find(marker) != std::string::npos) {
            throw QueryError("unsupported JSONPath syntax '" + std::string(marker) + "' in '" +
                             original + "'");
        }
    }

    std::vector<JsonStep> steps;
    std::size_t pos = 0;
    if (!q.empty() && q[0] == '$') pos = 1;

    auto parse_indexes = [&] {
        while (pos < q.size() && q[pos] == '[') {
            std::size_t close = q.find(']', pos);
            if (close == std::string::npos) {
                throw QueryError("unterminated '[' in JSONPath '" + original + "'");
            }
            std::string digits = q.substr(pos + 1, close - pos - 1);
            if (digits.empty() ||
                digits.find_first_not_of("0123456789") != std::string::npos) {
                throw QueryError("unsupported JSONPath index '[" + digits + "]' in '" + original +
                                 "'");
            }
            JsonStep step;
            step.kind = JsonStep::Kind::index;
            step.index = std::stoul(digits);
            steps.push_back(step);
            pos = close + 1;
        }
    };

    parse_indexes();  // $[0]... form
    while (pos < q.size()) {
        if (q[pos] == '.') {
            ++pos;
            if (pos >= q.size()) throw QueryError("trailing '.' in JSONPath '" + original + "'");
        } else if (!steps.empty() || q[0] == '$') {
            throw QueryError("expected '.' in JSONPath '" + original + "'");
        }
        std::size_t end = pos;
        while (end < q.size() && q[end] != '.' && q[end] != '[') ++end;
        if (end == pos) throw QueryError("empty member step in JSONPath '" + original + "'");
        JsonStep step;
        step.key = q.substr(pos, end - pos);
        steps.push_back(std::move(step));
        pos = end;
        parse_indexes();
    }
    return steps;
}

struct JsonCursor {
    const Json* node;
    std::string position;
};

std::string json_scalar_text(const Json& value) {
    if (value.is_string()) return value.get<std::string>();
    if (value.is_boolean()) return value.get<bool>() ? "true" : "false";
    if (value.is_number_integer()) return std::to_string(value.get<long long>());
    if (value.is_number_unsigned()) return std::to_string(value.get<unsigned long long>());
    if (value.is_number_float()) {
        double d = value.get<double>();
        if (std::isfinite(d) && d == std::floor(d) && std::abs(d) < 9.0e15) {
            return std::to_string(static_cast<long long>(d));
        }
        return Json(d).dump();
    }
    return value.dump();
}

ValueSet evaluate_json(const std::vector<JsonStep>& steps, const Json* root,
                       const std::string& root_position) {
    std::vector<JsonCursor> current{{root, root_position}};

    for (const auto& step : steps) {
        std::vector<JsonCursor> next;
        for (const auto& cursor : current) {
            const Json& node = *cursor.node;
            if (step.kind == JsonStep::Kind::index) {
                if (node.is_array() && step.index < node.size()) {
                    next.push_back({&node[step.index],
                                    cursor.position + "[" + std::to_string(step.index) + "]"});
                }
                continue;
            }
            // Member step: maps over arrays, looks up in objects, and is an
            // empty match (not an error) on scalars.
            if (node.is_array()) {
                for (std::size_t i = 0; i < node.size(); ++i) {
                    const Json& element = node[i];
                    if (element.is_object() && element.contains(step.key)) {
                        next.push_back({&element.at(step.key), cursor.position + "[" +
                                                                   std::to_string(i) + "]." +
                                                                   step.key});
                    }
                }
            } else if (node.is_object() && node.contains(step.key)) {
                next.push_back({&node.at(step.key), cursor.position + "." + step.key});
            }
        }
        current = std::move(next);
    }

    // Terminal collection: scalars stringify, arrays of scalars flatten one
    // level, null values disappear, containers stay as handles.
    ValueSet out;
    auto emit = [&out](const Json& node, std::string position) {
        if (node.is_null()) return;
        Value value;
        value.position = std::move(position);
        if (node.is_object() || node.is_array()) {
            value.json_node = &node;
        } else {
            value.scalar = true;
            value.text = json_scalar_text(node);
        }
        out.values.push_back(std::move(value));
    };

    for (const auto& cursor : current) {
        const Json& node = *cursor.node;
        if (node.is_array()) {
            bool all_leaves = true;
            for (const auto& element : node) {
                if (element.is_object() || element.is_array()) {
                    all_leaves = false;
                    break;
                }
            }
            if (all_leaves && !steps.empty()) {
                for (std::size_t i = 0; i < node.size(); ++i) {
                    emit(node[i], cursor.position + "[" + std::to_string(i) + "]");
                }
                continue;
            }
        }
        emit(node, cursor.position);
    }
    return out;
}

// ------------------------------------------------------------------- XPath

struct XmlStep {
    bool any_element = false;  // node() without predicate
    std::string local_name;    // required local name otherwise
};

std::vector<XmlStep> parse_xpath(const std::string& original, bool* absolute) {
    std::string q = xml::trim(original);
    if (q.empty()) throw QueryError("empty XPath query");
    if (q.find('@') != std::string::npos) {
        throw QueryError("unsupported XPath attribute access in '" + original + "'");
    }
    if (q.find("//") != std::string::npos) {
        throw QueryError("unsupported XPath descendant axis '//' in '" + original + "'");
    }

    *absolute = q[0] == '/';
    std::size_t pos = *absolute ? 1 : 0;

    std::vector<XmlStep> steps;
    while (pos < q.size()) {
        std::size_t slash = pos;
        int depth = 0;
        while (slash < q.size() && (q[slash] != '/' || depth > 0)) {
            if (q[slash] == '[') ++depth;
            if (q[slash] == ']') --depth;
            ++slash;
        }
        std::string step_text = q.substr(pos, slash - pos);
        pos = slash + (slash < q.size() ? 1 : 0);

        XmlStep step;
        std::string base = step_text;
        std::string predicate;
        auto bracket = step_text.find('[');
        if (bracket != std::string::npos) {
            if (step_text.back() != ']') {
                throw QueryError("malformed predicate in XPath step '" + step_text + "'");
            }
            base = step_text.substr(0, bracket);
            predicate = step_text.substr(bracket + 1, step_text.size() - bracket - 2);
        }
        base = xml::trim(base);
        if (base == "node()") {
            if (predicate.empty()) {
                step.any_element = true;
            } else {
                const std::string open = "local-name(.)='";
                if (predicate.rfind(open, 0) != 0 || predicate.back() != '\'' ||
                    predicate.size() <= open.size()) {
                    throw QueryError("unsupported XPath predicate '[" + predicate + "]' in '" +
                                     original + "'");
                }
                step.local_name = predicate.substr(open.size(), predicate.size() - open.size() - 1);
            }
        } else if (!base.empty() && predicate.empty() &&
                   base.find_first_of("()=.'") == std::string::npos) {
            step.local_name = base;  // plain element name, matched by local name
        } else {
            throw QueryError("unsupported XPath step '" + step_text + "' in '" + original + "'");
        }
        steps.push_back(std::move(step));
    }
    if (steps.empty()) throw QueryError("no steps in XPath '" + original + "'");
    return steps;
}

struct XmlCursor {
    const xml::Element* element;
    std::string position;
};

}  // namespace

ValueSet eval_jsonpath(const std::string& q, const SourceDocument& doc, const Json* context) {
    if (doc.format != Format::json) {
        throw QueryError("JSONPath query over non-JSON source " + doc.origin);
    }
    auto steps = parse_jsonpath(q);
    const Json* root = context != nullptr ? context : doc.json_root.get();
    return evaluate_json(steps, root, "$");
}

ValueSet eval_xpath(const std::string& q, const SourceDocument& doc, const xml::Element* context) {
    if (doc.format != Format::xml) {
        throw QueryError("XPath query over non-XML source " + doc.origin);
    }
    bool absolute = false;
    auto steps = parse_xpath(q, &absolute);

    // The virtual document node has the root element as its only child; an
    // absolute path always starts there, a relative one at the context node.
    std::vector<XmlCursor> current;
    const xml::Element* root = &doc.xml_doc->root();
    bool at_document_node = absolute || context == nullptr;

    for (std::size_t step_index = 0; step_index < steps.size(); ++step_index) {
        const auto& step = steps[step_index];
        auto matches = [&](const xml::Element& e) {
            return step.any_element || e.local_name == step.local_name;
        };
        std::vector<XmlCursor> next;
        if (step_index == 0 && at_document_node) {
            if (matches(*root)) next.push_back({root, "/0"});
        } else {
            if (step_index == 0) current.push_back({context, ""});
            for (const auto& cursor : current) {
                int i = 0;
                for (const xml::Element* child : cursor.element->child_elements()) {
                    if (matches(*child)) {
                        next.push_back({child, cursor.position + "/" + std::to_string(i)});
                    }
                    ++i;
                }
            }
        }
        current = std::move(next);
    }

    ValueSet out;
    for (const auto& cursor : current) {
        Value value;
        value.position = cursor.position;
        value.xml_node = cursor.element;
        out.values.push_back(std::move(value));
    }
    return out;
}

ValueSet eval(dsl::QueryLanguage language, const std::string& q, const SourceDocument& doc,
              const Value* context) {
    if (language == dsl::QueryLanguage::jsonpath) {
        return eval_jsonpath(q, doc, context != nullptr ? context->json_node : nullptr);
    }
    return eval_xpath(q, doc, context != nullptr ? context->xml_node : nullptr);
}

}  // namespace metaforge::query
