#include "metaforge/jsonld.hpp"

#include <algorithm>
#include <set>
#include <vector>

namespace metaforge::jsonld {

namespace {

bool looks_like_iri(const std::string& text) {
    return text.find("://") != std::string::npos || text.rfind("urn:", 0) == 0;
}

}  // namespace

Context Context::parse(const Json& input) {
    const Json* object = &input;
    if (input.is_object() && input.contains("@context")) {
        object = &input.at("@context");
    }
    if (!object->is_object()) {
        throw FramingError("a JSON-LD context must be an object");
    }

    Context context;
    context.source_ = *object;

    // First pass: raw values, so CURIEs can reference prefix terms declared
    // in any order. Keyword entries (@vocab, @version, ...) are not terms.
    std::map<std::string, std::string> raw;
    for (auto it = object->begin(); it != object->end(); ++it) {
        const std::string& term = it.key();
        const Json& value = it.value();
        if (term.rfind('@', 0) == 0) {
            if (term == "@vocab" && value.is_string()) {
                context.vocab_iri_ = value.get<std::string>();
            }
            continue;
        }
        if (value.is_string()) {
            raw[term] = value.get<std::string>();
        } else if (value.is_object()) {
            if (!value.contains("@id") || !value.at("@id").is_string()) {
                throw FramingError("term '" + term + "' has no @id");
            }
            raw[term] = value.at("@id").get<std::string>();
        } else {
            throw FramingError("term '" + term + "' has an unsupported definition");
        }
    }

    auto resolve = [&raw](const std::string& value) -> std::string {
        if (value.rfind('@', 0) == 0) return value;  // keyword
        auto colon = value.find(':');
        if (colon == std::string::npos) return value;
        std::string prefix = value.substr(0, colon);
        auto it = raw.find(prefix);
        if (it != raw.end() && !looks_like_iri(prefix)) {
            return it->second + value.substr(colon + 1);
        }
        return value;
    };

    for (auto it = object->begin(); it != object->end(); ++it) {
        const std::string& term = it.key();
        const Json& value = it.value();
        if (raw.find(term) == raw.end()) continue;  // keyword entry
        std::string iri = resolve(raw.at(term));

        if (iri == "@id") {
            context.id_key_ = term;
            continue;
        }
        if (iri == "@type") {
            context.type_key_ = term;
            continue;
        }

        TermDef def;
        def.term = term;
        def.iri = iri;
        if (value.is_object()) {
            if (value.contains("@type") && value.at("@type").is_string()) {
                std::string coercion = value.at("@type").get<std::string>();
                def.coercion = coercion == "@id" ? coercion : resolve(coercion);
            }
            if (value.contains("@container") && value.at("@container").is_string() &&
                value.at("@container").get<std::string>() == "@set") {
                def.container_set = true;
            }
        }

        auto [existing, inserted] = context.iri_to_term_.emplace(def.iri, term);
        if (!inserted) {
            throw FramingError("context terms '" + existing->second + "' and '" + term +
                               "' both map to " + def.iri + "; compaction would be ambiguous");
        }
        context.terms_.emplace(term, std::move(def));
    }
    return context;
}

std::string Context::compact_iri(const std::string& iri) const {
    auto exact = iri_to_term_.find(iri);
    if (exact != iri_to_term_.end()) return exact->second;

    // Longest prefix term whose IRI is a proper prefix of the target.
    const TermDef* best = nullptr;
    for (const auto& [term, def] : terms_) {
        if (iri.size() > def.iri.size() && iri.compare(0, def.iri.size(), def.iri) == 0) {
            if (best == nullptr || def.iri.size() > best->iri.size()) best = &def;
        }
    }
    if (best != nullptr) {
        return best->term + ":" + iri.substr(best->iri.size());
    }
    return iri;
}

std::string Context::expand_iri(const std::string& name) const {
    auto it = terms_.find(name);
    if (it != terms_.end()) return it->second.iri;
    auto colon = name.find(':');
    if (colon != std::string::npos && !looks_like_iri(name)) {
        auto prefix = terms_.find(name.substr(0, colon));
        if (prefix != terms_.end()) {
            return prefix->second.iri + name.substr(colon + 1);
        }
    }
    if (!vocab_iri_.empty() && colon == std::string::npos) {
        return vocab_iri_ + name;
    }
    return name;
}

const TermDef* Context::term_definition(const std::string& term) const {
    auto it = terms_.find(term);
    return it != terms_.end() ? &it->second : nullptr;
}

const TermDef* Context::definition_for_iri(const std::string& iri) const {
    auto it = iri_to_term_.find(iri);
    return it != iri_to_term_.end() ? term_definition(it->second) : nullptr;
}

std::string compact_iri(const std::string& iri, const Context& context) {
    return context.compact_iri(iri);
}

namespace {

std::string node_id_text(const rdf::Term& term) {
    return term.is_blank() ? "_:" + term.value : term.value;
}

Json literal_value_object(const rdf::Term& literal) {
    Json value = Json::object();
    value["@value"] = literal.value;
    if (!literal.datatype.empty()) value["@type"] = literal.datatype;
    return value;
}

}  // namespace

Json serialize_expanded(const rdf::Graph& graph) {
    // Group triples per subject; the graph's own ordering is deterministic.
    std::vector<rdf::Term> subjects;
    for (const auto& triple : graph.triples()) {
        if (subjects.empty() || !(subjects.back() == triple.subject)) {
            if (std::find(subjects.begin(), subjects.end(), triple.subject) == subjects.end()) {
                subjects.push_back(triple.subject);
            }
        }
    }

    Json nodes = Json::array();
    for (const auto& subject : subjects) {
        Json node = Json::object();
        node["@id"] = node_id_text(subject);
        Json types = Json::array();
        std::map<std::string, Json> properties;
        for (const auto& triple : graph.with_subject(subject)) {
            if (triple.predicate.value == rdf::kRdfType && triple.object.is_iri()) {
                types.push_back(triple.object.value);
                continue;
            }
            Json& values = properties[triple.predicate.value];
            if (values.is_null()) values = Json::array();
            if (triple.object.is_literal()) {
                values.push_back(literal_value_object(triple.object));
            } else {
                Json ref = Json::object();
                ref["@id"] = node_id_text(triple.object);
                values.push_back(std::move(ref));
            }
        }
        if (!types.empty()) node["@type"] = std::move(types);
        for (auto& [iri, values] : properties) {
            node[iri] = std::move(values);
        }
        nodes.push_back(std::move(node));
    }
    return nodes;
}

namespace {

class Framer {
public:
    Framer(const rdf::Graph& graph, const Context& context, const FrameOptions& options,
           Diagnostics* diagnostics)
        : graph_(graph), context_(context), options_(options), diagnostics_(diagnostics) {}

    Json run() {
        std::vector<rdf::Term> roots;
        for (const auto& subject : graph_.subjects_of_type(options_.root_type)) {
            if (!graph_.is_object(subject)) roots.push_back(subject);
        }
        if (roots.empty()) {
            throw FramingError("no node of type " + options_.root_type +
                               " qualifies as a framing root");
        }
        count_references();

        if (roots.size() == 1) {
            Json framed = embed(roots[0], true);
            report_unreachable();
            return framed;
        }
        Json framed = Json::array();
        for (const auto& root : roots) framed.push_back(embed(root, false));
        report_unreachable();
        return framed;
    }

private:
    const rdf::Graph& graph_;
    const Context& context_;
    const FrameOptions& options_;
    Diagnostics* diagnostics_;
    std::set<rdf::Term> visited_;
    std::map<rdf::Term, int> reference_counts_;

    void count_references() {
        for (const auto& triple : graph_.triples()) {
            if (!triple.object.is_literal()) ++reference_counts_[triple.object];
        }
    }

    // A blank node can only be referenced back when its embedding carried a
    // label; singly-referenced blanks stay anonymous.
    bool blank_needs_id(const rdf::Term& term) const {
        auto it = reference_counts_.find(term);
        return it != reference_counts_.end() && it->second > 1;
    }

    Json reference(const rdf::Term& term) const {
        Json ref = Json::object();
        ref[context_.id_key()] = node_id_text(term);
        return ref;
    }

    Json type_value(const rdf::Term& subject) const {
        std::vector<std::string> types;
        for (const auto& triple : graph_.with_subject(subject)) {
            if (triple.predicate.value == rdf::kRdfType && triple.object.is_iri()) {
                types.push_back(context_.compact_iri(triple.object.value));
            }
        }
        std::sort(types.begin(), types.end());
        if (types.size() == 1) return types.front();
        Json out = Json::array();
        for (auto& t : types) out.push_back(std::move(t));
        return out;
    }

    Json literal_value(const rdf::Term& literal, const TermDef* def) const {
        if (literal.datatype.empty()) {
            // Plain string; keep the wrapper under a coerced term so
            // re-expansion does not fabricate a datatype or an IRI.
            if (def != nullptr && !def->coercion.empty()) {
                return literal_value_object(literal);
            }
            return Json(literal.value);
        }
        if (def != nullptr && def->coercion == literal.datatype) {
            return Json(literal.value);  // coercion carries the type
        }
        Json value = Json::object();
        value["@value"] = literal.value;
        value["@type"] = context_.compact_iri(literal.datatype);
        return value;
    }

    Json object_value(const rdf::Term& object, const TermDef* def) {
        if (object.is_literal()) return literal_value(object, def);
        if (graph_.is_subject(object)) {
            if (visited_.insert(object).second) {
                return embed(object, false);
            }
            return reference(object);
        }
        // Leaf IRI with no triples of its own.
        if (def != nullptr && def->coercion == "@id" && object.is_iri()) {
            return Json(object.value);
        }
        return reference(object);
    }

    static std::string value_sort_key(const Json& value) {
        if (value.is_object()) {
            // Embedded objects order by id; anonymous ones sort ahead of
            // identified ones, tie-broken by their canonical rendering.
            for (const char* key : {"id", "@id"}) {
                if (value.contains(key) && value.at(key).is_string()) {
                    return "0:1:" + value.at(key).get<std::string>();
                }
            }
            return "0:0:" + canonical_dump(value);
        }
        return "1:" + value.dump();
    }

    Json embed(const rdf::Term& subject, bool top_level) {
        visited_.insert(subject);
        auto triples = graph_.with_subject(subject);

        Json node = Json::object();
        if (top_level && options_.emission == FrameOptions::ContextEmission::inline_object) {
            node["@context"] = context_.source();
        } else if (top_level) {
            node["@context"] = options_.context_url;
        }
        if (!subject.is_blank() || blank_needs_id(subject)) {
            node[context_.id_key()] = node_id_text(subject);
        }

        bool has_type = false;
        std::map<std::string, std::vector<Json>> properties;  // compacted key -> values
        for (const auto& triple : triples) {
            if (triple.predicate.value == rdf::kRdfType && triple.object.is_iri()) {
                has_type = true;
                continue;
            }
            const TermDef* def = context_.definition_for_iri(triple.predicate.value);
            std::string key = context_.compact_iri(triple.predicate.value);
            properties[key].push_back(object_value(triple.object, def));
        }
        if (has_type) node[context_.type_key()] = type_value(subject);

        // std::map already iterates keys alphabetically.
        for (auto& [key, values] : properties) {
            std::stable_sort(values.begin(), values.end(), [](const Json& a, const Json& b) {
                return value_sort_key(a) < value_sort_key(b);
            });
            const TermDef* def = context_.term_definition(key);
            if (values.size() == 1 && (def == nullptr || !def->container_set)) {
                node[key] = std::move(values.front());
            } else {
                Json array = Json::array();
                for (auto& value : values) array.push_back(std::move(value));
                node[key] = std::move(array);
            }
        }
        return node;
    }

    void report_unreachable() const {
        if (diagnostics_ == nullptr) return;
        std::set<rdf::Term> subjects;
        for (const auto& triple : graph_.triples()) subjects.insert(triple.subject);
        for (const auto& subject : subjects) {
            if (visited_.count(subject) == 0) {
                diagnostics_->warn("frame", "node " + node_id_text(subject) +
                                                " is not reachable from any framing root");
            }
        }
    }
};

class Expander {
public:
    explicit Expander(const Context& context) : context_(context) {}

    rdf::Graph run(const Json& framed) {
        if (framed.is_array()) {
            for (const auto& node : framed) expand_node(node);
        } else {
            expand_node(framed);
        }
        return std::move(graph_);
    }

private:
    const Context& context_;
    rdf::Graph graph_;
    int blank_counter_ = 0;

    bool is_id_key(const std::string& key) const {
        return key == "@id" || key == context_.id_key();
    }

    bool is_type_key(const std::string& key) const {
        return key == "@type" || key == context_.type_key();
    }

    rdf::Term node_term(const Json& node) {
        for (auto it = node.begin(); it != node.end(); ++it) {
            if (is_id_key(it.key()) && it.value().is_string()) {
                std::string id = it.value().get<std::string>();
                if (id.rfind("_:", 0) == 0) return rdf::Term::blank(id.substr(2));
                return rdf::Term::iri(id);
            }
        }
        return rdf::Term::blank("g" + std::to_string(blank_counter_++));
    }

    static std::string scalar_to_text(const Json& value) {
        if (value.is_string()) return value.get<std::string>();
        if (value.is_boolean()) return value.get<bool>() ? "true" : "false";
        return value.dump();
    }

    rdf::Term literal_from_value_object(const Json& value) {
        std::string text = scalar_to_text(value.at("@value"));
        std::string datatype;
        if (value.contains("@type") && value.at("@type").is_string()) {
            datatype = context_.expand_iri(value.at("@type").get<std::string>());
        }
        return rdf::Term::literal(std::move(text), std::move(datatype));
    }

    void expand_value(const rdf::Term& subject, const rdf::Term& predicate, const Json& value,
                      const TermDef* def) {
        if (value.is_array()) {
            for (const auto& element : value) expand_value(subject, predicate, element, def);
            return;
        }
        if (value.is_object()) {
            if (value.contains("@value")) {
                graph_.add(subject, predicate, literal_from_value_object(value));
                return;
            }
            rdf::Term child = expand_node(value);
            graph_.add(subject, predicate, child);
            return;
        }
        // Scalar: the term definition decides the kind.
        std::string text = scalar_to_text(value);
        if (def != nullptr && def->coercion == "@id") {
            if (text.rfind("_:", 0) == 0) {
                graph_.add(subject, predicate, rdf::Term::blank(text.substr(2)));
            } else {
                graph_.add(subject, predicate, rdf::Term::iri(text));
            }
            return;
        }
        std::string datatype;
        if (def != nullptr && !def->coercion.empty()) datatype = def->coercion;
        graph_.add(subject, predicate, rdf::Term::literal(std::move(text), std::move(datatype)));
    }

    rdf::Term expand_node(const Json& node) {
        if (!node.is_object()) {
            throw FramingError("framed node must be an object");
        }
        rdf::Term subject = node_term(node);
        for (auto it = node.begin(); it != node.end(); ++it) {
            const std::string& key = it.key();
            if (key == "@context" || is_id_key(key)) continue;
            if (is_type_key(key)) {
                const Json& types = it.value();
                auto add_type = [&](const Json& t) {
                    graph_.add(subject, rdf::Term::iri(rdf::kRdfType),
                               rdf::Term::iri(context_.expand_iri(t.get<std::string>())));
                };
                if (types.is_array()) {
                    for (const auto& t : types) add_type(t);
                } else {
                    add_type(types);
                }
                continue;
            }
            const TermDef* def = context_.term_definition(key);
            rdf::Term predicate = rdf::Term::iri(context_.expand_iri(key));
            expand_value(subject, predicate, it.value(), def);
        }
        return subject;
    }
};

}  // namespace

Json frame(const rdf::Graph& graph, const Context& context, const FrameOptions& options,
           Diagnostics* diagnostics) {
    return Framer(graph, context, options, diagnostics).run();
}

rdf::Graph expand_framed(const Json& framed, const Context& context) {
    return Expander(context).run(framed);
}

}  // namespace metaforge::jsonld
