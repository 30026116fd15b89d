#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "metaforge/diag.hpp"
#include "metaforge/errors.hpp"
#include "metaforge/parser.hpp"
#include "metaforge/query.hpp"
#include "metaforge/rdf.hpp"
#include "metaforge/sources.hpp"

namespace metaforge::engine {

// One row of extracted values. A field absent from `values` means "no data"
// and suppresses the triples depending on it. Sub-rows of nested iterators
// hang off their parent row, which keeps joins scoped.
struct BindingRow {
    std::string branch;  // "source.iterator" tag of the UNION branch
    std::map<std::string, std::vector<std::string>> values;
    std::map<std::string, std::vector<BindingRow>> children;
};

struct BindingTable {
    std::string expression;
    std::vector<BindingRow> rows;
};

// Outcome of a built-in function application: either a value or an error
// text. Errors suppress the dependent triple and surface as warnings.
struct FunctionResult {
    bool ok = false;
    std::string value;  // value when ok, error text otherwise

    static FunctionResult success(std::string v) { return {true, std::move(v)}; }
    static FunctionResult failure(std::string e) { return {false, std::move(e)}; }
};

// Built-in helper registry (the FUNCTIONS file named by mappings is never
// executed). Unknown names or wrong arity throw GenerationError; malformed
// input yields a failure result.
FunctionResult apply_function(const std::string& name, const std::vector<std::string>& args);
bool is_registered_function(const std::string& name, std::size_t arity);

// Evaluate one expression over the fetched documents. UNION concatenates the
// per-branch tables; every branch's root match becomes one row. When
// field_filter is non-null only the listed qualified paths ("md.name",
// "md.deps.version") are evaluated.
BindingTable evaluate_expression(const dsl::ResolvedMapping& mapping,
                                 const std::string& expression_name,
                                 const std::map<std::string, query::SourceDocument>& docs,
                                 Diagnostics* diagnostics = nullptr,
                                 const std::set<std::string>* field_filter = nullptr);

// Materialize every shape into an RDF graph: subjects from the subject spec,
// one triple per object value, shape links fanning out to every subject of
// the target shape, duplicates collapsing under set semantics.
rdf::Graph materialize_shapes(const dsl::ResolvedMapping& mapping,
                              const std::map<std::string, BindingTable>& tables,
                              Diagnostics* diagnostics = nullptr);

// The qualified field paths shapes actually consume; generate() evaluates
// only these.
std::set<std::string> shape_reachable_fields(const dsl::ResolvedMapping& mapping);

struct GenerateOptions {
    sources::FetchOptions fetch;
};

struct GenerateResult {
    rdf::Graph graph;
    Diagnostics diagnostics;
};

// parse -> resolve -> fetch (concurrently) -> evaluate -> materialize.
// Deterministic for fixed fixtures; sub-errors carry their stage label.
GenerateResult generate(const std::string& mapping_text, const GenerateOptions& options);
GenerateResult generate(const dsl::ResolvedMapping& mapping, const GenerateOptions& options);

}  // namespace metaforge::engine
