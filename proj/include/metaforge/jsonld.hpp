#pragma once

#include <map>
#include <optional>
#include <string>

#include "metaforge/diag.hpp"
#include "metaforge/errors.hpp"
#include "metaforge/jsonutil.hpp"
#include "metaforge/rdf.hpp"

namespace metaforge::jsonld {

// A term definition from a JSON-LD @context: the IRI it maps to, an optional
// type coercion ("@id" or a datatype IRI) and an optional @set container.
struct TermDef {
    std::string term;
    std::string iri;
    std::string coercion;
    bool container_set = false;
};

class Context {
public:
    // Accepts either a bare @context object or a document wrapping one.
    // Throws FramingError on malformed definitions or when two terms map to
    // the same IRI (ambiguous compaction).
    static Context parse(const Json& source);

    // Longest-match compaction: exact term, then prefix-term CURIE, then the
    // IRI itself.
    std::string compact_iri(const std::string& iri) const;

    // Inverse mapping for document keys / type names.
    std::string expand_iri(const std::string& name) const;
    const TermDef* term_definition(const std::string& term) const;
    const TermDef* definition_for_iri(const std::string& iri) const;

    // Key aliases for node identifiers and types ("id"/"type" when the
    // context aliases them, "@id"/"@type" otherwise).
    const std::string& id_key() const { return id_key_; }
    const std::string& type_key() const { return type_key_; }

    const Json& source() const { return source_; }

private:
    Json source_ = Json::object();
    std::map<std::string, TermDef> terms_;
    std::map<std::string, std::string> iri_to_term_;
    std::string vocab_iri_;
    std::string id_key_ = "@id";
    std::string type_key_ = "@type";
};

struct FrameOptions {
    std::string root_type = "http://schema.org/SoftwareSourceCode";
    enum class ContextEmission { inline_object, url_reference };
    ContextEmission emission = ContextEmission::inline_object;
    std::string context_url = "https://w3id.org/codemeta/3.0/";
};

// Flat expanded form: one node object per subject, sorted deterministically,
// properties as full IRIs, literals as @value objects.
Json serialize_expanded(const rdf::Graph& graph);

std::string compact_iri(const std::string& iri, const Context& context);

// Frame the graph into the nested, compacted document shape: roots are the
// nodes of root_type that are never objects; every reachable node embeds at
// its first encounter on the depth-first walk and degrades to an {"id"}
// reference afterwards; keys are ordered @context, id, type, then
// alphabetically. Throws FramingError when no root exists.
Json frame(const rdf::Graph& graph, const Context& context, const FrameOptions& options,
           Diagnostics* diagnostics = nullptr);

// Re-expand a framed document produced with the same context back into the
// triple set (modulo blank-node labels).
rdf::Graph expand_framed(const Json& framed, const Context& context);

}  // namespace metaforge::jsonld
