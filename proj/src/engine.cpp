#include "metaforge/engine.hpp"

#include <algorithm>
#include <future>
#include <utility>

namespace metaforge::engine {

namespace {

std::string join_path(const std::vector<std::string>& parts, std::size_t begin, std::size_t end) {
    std::string out;
    for (std::size_t i = begin; i < end; ++i) {
        if (i > begin) out += '.';
        out += parts[i];
    }
    return out;
}

// ------------------------------------------------------- expression tables

// An iterator query that lands on a JSON array iterates its elements: one
// row (or sub-row) per element.
std::vector<query::Value> iteration_matches(query::ValueSet&& matches) {
    std::vector<query::Value> out;
    for (auto& value : matches.values) {
        if (value.json_node != nullptr && value.json_node->is_array()) {
            const Json& array = *value.json_node;
            for (std::size_t i = 0; i < array.size(); ++i) {
                query::Value element;
                element.position = value.position + "[" + std::to_string(i) + "]";
                element.json_node = &array[i];
                out.push_back(std::move(element));
            }
        } else {
            out.push_back(std::move(value));
        }
    }
    return out;
}

struct BranchEvaluator {
    const dsl::ResolvedMapping& mapping;
    const query::SourceDocument& doc;
    Diagnostics* diag;
    const std::set<std::string>* filter;

    bool wants(const std::string& qualified) const {
        return filter == nullptr || filter->count(qualified) > 0;
    }

    bool wants_subtree(const std::string& prefix) const {
        if (filter == nullptr) return true;
        for (const auto& path : *filter) {
            if (path.size() > prefix.size() && path.compare(0, prefix.size(), prefix) == 0 &&
                path[prefix.size()] == '.') {
                return true;
            }
        }
        return false;
    }

    BindingRow build_row(const dsl::IteratorDecl& iterator, const std::string& path_prefix,
                         const query::Value& context, const std::string& branch_tag) const {
        BindingRow row;
        row.branch = branch_tag;
        for (const auto& field : iterator.fields) {
            std::string qualified = path_prefix + "." + field.name;
            if (!wants(qualified)) continue;
            query::ValueSet matches = query::eval(iterator.language, field.query, doc, &context);
            std::vector<std::string> texts;
            for (const auto& value : matches.values) {
                auto text = value.scalar_text();
                if (text) {
                    texts.push_back(std::move(*text));
                } else if (diag != nullptr) {
                    diag->warn("generate", "field " + qualified +
                                               " matched a non-scalar value at " + value.position +
                                               "; skipped");
                }
            }
            if (!texts.empty()) row.values[field.name] = std::move(texts);
        }
        for (const auto& child : iterator.children) {
            std::string child_prefix = path_prefix + "." + child.name;
            if (!wants(child_prefix) && !wants_subtree(child_prefix)) continue;
            auto matches = iteration_matches(
                query::eval(child.language, child.root_query, doc, &context));
            auto& sub_rows = row.children[child.name];
            for (const auto& match : matches) {
                sub_rows.push_back(build_row(child, child_prefix, match, branch_tag));
            }
        }
        return row;
    }

    std::vector<query::Value> root_matches(const dsl::ExpressionBranch& branch) const {
        const dsl::IteratorDecl& top = mapping.iterator(branch.iterator_path[0]);
        std::vector<query::Value> current =
            iteration_matches(query::eval(top.language, top.root_query, doc, nullptr));
        const dsl::IteratorDecl* decl = &top;
        for (std::size_t i = 1; i < branch.iterator_path.size(); ++i) {
            const dsl::IteratorDecl* next = nullptr;
            for (const auto& child : decl->children) {
                if (child.name == branch.iterator_path[i]) {
                    next = &child;
                    break;
                }
            }
            if (next == nullptr) {
                throw GenerationError("branch iterator '" + branch.iterator_path[i] +
                                      "' is not declared");
            }
            std::vector<query::Value> deeper;
            for (const auto& match : current) {
                auto sub = iteration_matches(
                    query::eval(next->language, next->root_query, doc, &match));
                for (auto& v : sub) deeper.push_back(std::move(v));
            }
            current = std::move(deeper);
            decl = next;
        }
        return current;
    }
};

// ----------------------------------------------------------- shape contexts

// Innermost-first stack of (qualified iterator path, row) bindings, e.g.
// [("md.softwareRequirements", subrow), ("md", row)].
struct Context {
    std::vector<std::pair<std::string, const BindingRow*>> frames;
};

void collect_values(const BindingRow& row, const std::vector<std::string>& chain,
                    std::size_t chain_pos, const std::string& field,
                    std::vector<std::string>& out) {
    if (chain_pos == chain.size()) {
        auto it = row.values.find(field);
        if (it != row.values.end()) {
            out.insert(out.end(), it->second.begin(), it->second.end());
        }
        return;
    }
    auto it = row.children.find(chain[chain_pos]);
    if (it == row.children.end()) return;
    for (const auto& sub : it->second) {
        collect_values(sub, chain, chain_pos + 1, field, out);
    }
}

std::vector<std::string> split_dots(const std::string& text) {
    std::vector<std::string> parts;
    std::string part;
    for (char c : text) {
        if (c == '.') {
            parts.push_back(std::exchange(part, ""));
        } else {
            part += c;
        }
    }
    if (!part.empty()) parts.push_back(part);
    return parts;
}

std::vector<std::string> resolve_path(const dsl::FieldPath& path, const Context& context,
                                      const std::map<std::string, BindingTable>& tables) {
    const auto& parts = path.parts;
    std::string container = join_path(parts, 0, parts.size() - 1);
    const std::string& field = parts.back();

    for (const auto& [frame_path, row] : context.frames) {
        if (frame_path == container) {
            auto it = row->values.find(field);
            return it != row->values.end() ? it->second : std::vector<std::string>{};
        }
    }
    // The path digs below the deepest bound frame: union across that frame's
    // sub-rows, keeping the join scoped to the current row.
    for (const auto& [frame_path, row] : context.frames) {
        if (container.size() > frame_path.size() &&
            container.compare(0, frame_path.size(), frame_path) == 0 &&
            container[frame_path.size()] == '.') {
            auto chain = split_dots(container.substr(frame_path.size() + 1));
            std::vector<std::string> out;
            collect_values(*row, chain, 0, field, out);
            return out;
        }
    }
    // No frame for this expression: union over its whole table.
    auto table_it = tables.find(parts[0]);
    if (table_it == tables.end()) return {};
    std::vector<std::string> chain(parts.begin() + 1, parts.end() - 1);
    std::vector<std::string> out;
    for (const auto& row : table_it->second.rows) {
        collect_values(row, chain, 0, field, out);
    }
    return out;
}

std::vector<std::string> eval_generator(const dsl::Generator& gen, const Context& context,
                                        const std::map<std::string, BindingTable>& tables,
                                        Diagnostics* diag, const std::string& where) {
    if (!gen.is_function) {
        return resolve_path(gen.path(), context, tables);
    }

    if (!is_registered_function(gen.function_name, gen.arguments.size())) {
        throw GenerationError("unknown function '" + gen.function_name + "/" +
                              std::to_string(gen.arguments.size()) + "' in " + where);
    }
    std::vector<std::vector<std::string>> arg_values;
    for (const auto& argument : gen.arguments) {
        arg_values.push_back(resolve_path(argument, context, tables));
        if (arg_values.back().empty()) return {};  // missing data suppresses the value
    }

    // Tuple up arguments: all-singles apply once; one multi-valued argument
    // maps; several multi-valued arguments take the cross product.
    std::vector<std::vector<std::string>> calls{{}};
    for (const auto& values : arg_values) {
        std::vector<std::vector<std::string>> next;
        for (const auto& call : calls) {
            for (const auto& value : values) {
                auto extended = call;
                extended.push_back(value);
                next.push_back(std::move(extended));
            }
        }
        calls = std::move(next);
    }

    std::vector<std::string> out;
    for (const auto& call : calls) {
        FunctionResult result = apply_function(gen.function_name, call);
        if (result.ok) {
            out.push_back(result.value);
        } else if (diag != nullptr) {
            diag->warn("generate", where + ": " + result.value + "; triple suppressed");
        }
    }
    return out;
}

// The deepest argument path decides the iteration granularity of a shape.
const dsl::FieldPath* driving_path(const dsl::ShapeDecl& shape) {
    const dsl::FieldPath* best = nullptr;
    auto consider = [&best](const dsl::Generator& gen) {
        for (const auto& argument : gen.arguments) {
            if (best == nullptr || argument.parts.size() > best->parts.size()) {
                best = &argument;
            }
        }
    };
    if (shape.subject.kind == dsl::SubjectKind::generated) {
        consider(shape.subject.generator);
        return best;
    }
    for (const auto& statement : shape.statements) {
        if (statement.object.kind == dsl::ObjectKind::generator) {
            // Row-level iteration is enough for fixed subjects: all values
            // land on the same node anyway.
            for (const auto& argument : statement.object.generator.arguments) {
                if (!argument.parts.empty()) return &argument;
            }
        }
    }
    return nullptr;
}

void expand_contexts(const BindingRow& row, const std::string& qualified,
                     const std::vector<std::string>& chain, std::size_t chain_pos,
                     Context stack, std::vector<Context>& out) {
    stack.frames.insert(stack.frames.begin(), {qualified, &row});
    if (chain_pos == chain.size()) {
        out.push_back(std::move(stack));
        return;
    }
    auto it = row.children.find(chain[chain_pos]);
    if (it == row.children.end()) return;
    for (const auto& sub : it->second) {
        expand_contexts(sub, qualified + "." + chain[chain_pos], chain, chain_pos + 1, stack, out);
    }
}

std::vector<Context> shape_contexts(const dsl::ShapeDecl& shape,
                                    const std::map<std::string, BindingTable>& tables) {
    const dsl::FieldPath* path = driving_path(shape);
    if (path == nullptr || path->parts.size() < 2) {
        return {Context{}};
    }
    auto table_it = tables.find(path->parts[0]);
    if (table_it == tables.end()) return {};

    std::vector<std::string> chain;
    if (shape.subject.kind == dsl::SubjectKind::generated) {
        chain.assign(path->parts.begin() + 1, path->parts.end() - 1);
    }
    std::vector<Context> out;
    for (const auto& row : table_it->second.rows) {
        expand_contexts(row, path->parts[0], chain, 0, Context{}, out);
    }
    return out;
}

struct Instance {
    rdf::Term subject;
    Context context;
};

}  // namespace

BindingTable evaluate_expression(const dsl::ResolvedMapping& mapping,
                                 const std::string& expression_name,
                                 const std::map<std::string, query::SourceDocument>& docs,
                                 Diagnostics* diagnostics,
                                 const std::set<std::string>* field_filter) {
    auto expr_it = mapping.expression_index.find(expression_name);
    if (expr_it == mapping.expression_index.end()) {
        throw GenerationError("unknown expression '" + expression_name + "'");
    }
    const dsl::ExpressionDecl& expression = mapping.document.expressions[expr_it->second];

    BindingTable table;
    table.expression = expression_name;
    for (const auto& branch : expression.branches) {
        std::string tag = branch.source + "." + join_path(branch.iterator_path, 0,
                                                          branch.iterator_path.size());
        auto doc_it = docs.find(branch.source);
        if (doc_it == docs.end()) {
            throw GenerationError("expression '" + expression_name + "': no document for source '" +
                                  branch.source + "'");
        }
        const dsl::IteratorDecl* decl = mapping.branch_iterator(branch);
        if (decl == nullptr) {
            throw GenerationError("expression '" + expression_name +
                                  "': branch iterator '" + tag + "' is not declared");
        }
        BranchEvaluator evaluator{mapping, doc_it->second, diagnostics, field_filter};
        try {
            for (const auto& match : evaluator.root_matches(branch)) {
                table.rows.push_back(evaluator.build_row(*decl, expression_name, match, tag));
            }
        } catch (const query::QueryError& e) {
            throw GenerationError("branch " + tag + " of expression '" + expression_name +
                                  "': " + e.message());
        }
    }
    return table;
}

rdf::Graph materialize_shapes(const dsl::ResolvedMapping& mapping,
                              const std::map<std::string, BindingTable>& tables,
                              Diagnostics* diagnostics) {
    const auto& shapes = mapping.document.shapes;

    // Pass 1: every shape's subjects, so links can fan out to all of them
    // regardless of declaration order.
    std::vector<std::vector<Instance>> instances(shapes.size());
    std::map<std::string, std::vector<rdf::Term>> shape_subjects;
    for (std::size_t i = 0; i < shapes.size(); ++i) {
        const dsl::ShapeDecl& shape = shapes[i];
        const std::string where = "shape " + shape.name.text();
        std::vector<rdf::Term> distinct;
        for (auto& context : shape_contexts(shape, tables)) {
            std::vector<rdf::Term> subjects;
            switch (shape.subject.kind) {
                case dsl::SubjectKind::generated: {
                    auto values = eval_generator(shape.subject.generator, context, tables,
                                                 diagnostics, where + " subject");
                    if (values.empty()) {
                        if (diagnostics != nullptr) {
                            diagnostics->warn("generate",
                                              where + ": subject generator produced no values; "
                                                      "instance skipped");
                        }
                        break;
                    }
                    std::string base = mapping.expand_prefix(shape.subject.prefix);
                    for (const auto& value : values) {
                        std::string iri = base + rdf::encode_iri_local_part(value);
                        if (!rdf::is_valid_absolute_iri(iri)) {
                            if (diagnostics != nullptr) {
                                diagnostics->warn("generate", where + ": generated subject '" +
                                                                  iri + "' is not a valid IRI; "
                                                                  "instance skipped");
                            }
                            continue;
                        }
                        subjects.push_back(rdf::Term::iri(iri));
                    }
                    break;
                }
                case dsl::SubjectKind::fixed:
                    subjects.push_back(rdf::Term::iri(
                        mapping.expand_prefix(shape.subject.prefix) + shape.subject.local));
                    break;
                case dsl::SubjectKind::blank:
                    subjects.push_back(rdf::Term::blank(shape.subject.local));
                    break;
            }
            for (auto& subject : subjects) {
                if (std::find(distinct.begin(), distinct.end(), subject) == distinct.end()) {
                    distinct.push_back(subject);
                }
                instances[i].push_back(Instance{std::move(subject), context});
            }
        }
        shape_subjects[shape.name.text()] = std::move(distinct);
    }

    // Pass 2: statements. A single-threaded fold in declaration order keeps
    // diagnostics reproducible.
    rdf::Graph graph;
    for (std::size_t i = 0; i < shapes.size(); ++i) {
        const dsl::ShapeDecl& shape = shapes[i];
        const std::string where = "shape " + shape.name.text();
        for (const Instance& instance : instances[i]) {
            for (const auto& statement : shape.statements) {
                rdf::Term predicate = statement.is_type
                                          ? rdf::Term::iri(rdf::kRdfType)
                                          : rdf::Term::iri(mapping.expand(statement.predicate));
                std::string datatype =
                    statement.datatype ? mapping.expand(*statement.datatype) : std::string{};
                switch (statement.object.kind) {
                    case dsl::ObjectKind::fixed_iri:
                        graph.add(instance.subject, predicate,
                                  rdf::Term::iri(mapping.expand(statement.object.fixed)));
                        break;
                    case dsl::ObjectKind::literal:
                        graph.add(instance.subject, predicate,
                                  rdf::Term::literal(statement.object.literal, datatype));
                        break;
                    case dsl::ObjectKind::generator: {
                        auto values =
                            eval_generator(statement.object.generator, instance.context, tables,
                                           diagnostics,
                                           where + " statement " +
                                               (statement.is_type ? "a"
                                                                  : statement.predicate.text()));
                        for (const auto& value : values) {
                            graph.add(instance.subject, predicate,
                                      rdf::Term::literal(value, datatype));
                        }
                        break;
                    }
                    case dsl::ObjectKind::shape_link: {
                        auto targets = shape_subjects.find(statement.object.link.text());
                        if (targets != shape_subjects.end()) {
                            for (const auto& target : targets->second) {
                                graph.add(instance.subject, predicate, target);
                            }
                        }
                        break;
                    }
                }
            }
        }
    }
    return graph;
}

std::set<std::string> shape_reachable_fields(const dsl::ResolvedMapping& mapping) {
    std::set<std::string> fields;
    auto add = [&fields](const dsl::Generator& gen) {
        for (const auto& argument : gen.arguments) fields.insert(argument.text());
    };
    for (const auto& shape : mapping.document.shapes) {
        if (shape.subject.kind == dsl::SubjectKind::generated) add(shape.subject.generator);
        for (const auto& statement : shape.statements) {
            if (statement.object.kind == dsl::ObjectKind::generator) {
                add(statement.object.generator);
            }
        }
    }
    return fields;
}

GenerateResult generate(const dsl::ResolvedMapping& mapping, const GenerateOptions& options) {
    GenerateResult result;

    // All declared sources are fetched up front, concurrently; evaluation
    // starts only once every document is in.
    std::vector<std::pair<std::string, std::future<query::SourceDocument>>> pending;
    for (const auto& source : mapping.document.sources) {
        sources::FetchSpec spec{source.locator, std::nullopt};
        pending.emplace_back(source.name, std::async(std::launch::async, [spec, &options] {
                                 return sources::fetch_source(spec, options.fetch);
                             }));
    }
    std::map<std::string, query::SourceDocument> docs;
    for (auto& [name, future] : pending) {
        docs.emplace(name, future.get());
    }

    std::set<std::string> filter = shape_reachable_fields(mapping);
    std::set<std::string> needed_expressions;
    for (const auto& path : filter) {
        auto dot = path.find('.');
        if (dot != std::string::npos) needed_expressions.insert(path.substr(0, dot));
    }

    std::map<std::string, BindingTable> tables;
    for (const auto& name : needed_expressions) {
        tables.emplace(name, evaluate_expression(mapping, name, docs, &result.diagnostics,
                                                 &filter));
    }
    result.graph = materialize_shapes(mapping, tables, &result.diagnostics);
    return result;
}

GenerateResult generate(const std::string& mapping_text, const GenerateOptions& options) {
    dsl::MappingDocument doc = dsl::parse_mapping(mapping_text);
    dsl::ResolvedMapping mapping = dsl::resolve_references(doc);
    return generate(mapping, options);
}

}  // namespace metaforge::engine
