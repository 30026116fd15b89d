#include <algorithm>
#include <cctype>
#include <set>

#include "metaforge/parser.hpp"

namespace metaforge::dsl {

namespace {

class Resolver {
public:
    explicit Resolver(const MappingDocument& doc) : doc_(doc) {}

    ResolvedMapping run() {
        ResolvedMapping resolved;
        resolved.document = doc_;

        index_declarations(resolved);
        check_iterators();
        check_expressions(resolved);
        check_shapes(resolved);

        if (!problems_.empty()) {
            throw ResolveError(std::move(problems_));
        }
        build_shape_links(resolved);
        return resolved;
    }

private:
    const MappingDocument& doc_;
    std::vector<std::string> problems_;

    void problem(std::string message) { problems_.push_back(std::move(message)); }

    void index_declarations(ResolvedMapping& resolved) {
        for (const auto& prefix : doc_.prefixes) {
            if (!resolved.prefix_map.emplace(prefix.label, prefix.iri).second) {
                problem("duplicate prefix label '" + prefix.label + "'");
            }
        }
        for (std::size_t i = 0; i < doc_.sources.size(); ++i) {
            if (!resolved.source_index.emplace(doc_.sources[i].name, i).second) {
                problem("duplicate source name '" + doc_.sources[i].name + "'");
            }
            check_locator(doc_.sources[i]);
        }
        for (std::size_t i = 0; i < doc_.iterators.size(); ++i) {
            if (!resolved.iterator_index.emplace(doc_.iterators[i].name, i).second) {
                problem("duplicate iterator name '" + doc_.iterators[i].name + "'");
            }
        }
        for (std::size_t i = 0; i < doc_.expressions.size(); ++i) {
            if (!resolved.expression_index.emplace(doc_.expressions[i].name, i).second) {
                problem("duplicate expression name '" + doc_.expressions[i].name + "'");
            }
        }
        for (std::size_t i = 0; i < doc_.shapes.size(); ++i) {
            if (!resolved.shape_index.emplace(doc_.shapes[i].name.text(), i).second) {
                problem("duplicate shape name '" + doc_.shapes[i].name.text() + "'");
            }
        }
    }

    void check_locator(const SourceDecl& source) {
        const std::string& locator = source.locator;
        auto scheme_end = locator.find("://");
        if (scheme_end == std::string::npos) return;  // bare path
        std::string scheme = locator.substr(0, scheme_end);
        if (scheme != "http" && scheme != "https" && scheme != "file") {
            problem("source '" + source.name + "' has unsupported locator scheme '" + scheme + "'");
        }
    }

    void check_iterator_fields(const IteratorDecl& iterator, const std::string& path) {
        std::set<std::string> names;
        for (const auto& field : iterator.fields) {
            if (!names.insert(field.name).second) {
                problem("duplicate field '" + field.name + "' in iterator " + path);
            }
        }
        for (const auto& child : iterator.children) {
            if (!names.insert(child.name).second) {
                problem("child iterator '" + child.name + "' collides with a field in iterator " +
                        path);
            }
            if (child.explicit_language && child.language != iterator.language) {
                problem("nested iterator '" + child.name + "' declares query language '" +
                        query_language_name(child.language) + "' but its parent uses '" +
                        query_language_name(iterator.language) + "'");
            }
            check_iterator_fields(child, path + "." + child.name);
        }
    }

    void check_iterators() {
        for (const auto& iterator : doc_.iterators) {
            check_iterator_fields(iterator, iterator.name);
        }
    }

    void check_expressions(const ResolvedMapping& resolved) {
        for (const auto& expression : doc_.expressions) {
            for (const auto& branch : expression.branches) {
                if (resolved.source_index.find(branch.source) == resolved.source_index.end()) {
                    problem("expression '" + expression.name + "' references undeclared source '" +
                            branch.source + "'");
                }
                if (resolved.branch_iterator(branch) == nullptr) {
                    std::string path = branch.iterator_path.empty() ? "?" : branch.iterator_path[0];
                    for (std::size_t i = 1; i < branch.iterator_path.size(); ++i) {
                        path += "." + branch.iterator_path[i];
                    }
                    problem("expression '" + expression.name +
                            "' references undeclared iterator '" + path + "'");
                }
            }
        }
    }

    void check_prefix(const ResolvedMapping& resolved, const std::string& prefix,
                      const std::string& where) {
        if (resolved.prefix_map.find(prefix) == resolved.prefix_map.end()) {
            problem("undeclared prefix '" + prefix + "' in " + where);
        }
    }

    // A field path resolves when at least one UNION branch of its expression
    // provides it: intermediate parts name nested iterators, the last part a
    // field.
    bool path_resolves(const ResolvedMapping& resolved, const FieldPath& path) const {
        if (path.parts.size() < 2) return false;
        auto expr_it = resolved.expression_index.find(path.parts[0]);
        if (expr_it == resolved.expression_index.end()) return false;
        const ExpressionDecl& expression = resolved.document.expressions[expr_it->second];
        for (const auto& branch : expression.branches) {
            const IteratorDecl* iterator = resolved.branch_iterator(branch);
            if (iterator == nullptr) continue;
            const IteratorDecl* current = iterator;
            bool ok = true;
            for (std::size_t i = 1; i + 1 < path.parts.size() && ok; ++i) {
                ok = false;
                for (const auto& child : current->children) {
                    if (child.name == path.parts[i]) {
                        current = &child;
                        ok = true;
                        break;
                    }
                }
            }
            if (!ok) continue;
            const std::string& leaf = path.parts.back();
            for (const auto& field : current->fields) {
                if (field.name == leaf) return true;
            }
        }
        return false;
    }

    void check_generator(const ResolvedMapping& resolved, const Generator& gen,
                         const std::string& where) {
        if (gen.is_function) {
            bool declared = std::any_of(doc_.functions.begin(), doc_.functions.end(),
                                        [&](const FunctionsDecl& f) {
                                            return f.label == gen.function_namespace;
                                        });
            if (!declared) {
                problem("undeclared FUNCTIONS label '" + gen.function_namespace + "' in " + where);
            }
        }
        for (const auto& argument : gen.arguments) {
            if (argument.parts.empty()) continue;
            if (resolved.expression_index.find(argument.parts[0]) ==
                resolved.expression_index.end()) {
                problem("undeclared expression '" + argument.parts[0] + "' in " + where);
            } else if (!path_resolves(resolved, argument)) {
                problem("field path '" + argument.text() + "' does not resolve in " + where);
            }
        }
    }

    static bool is_valid_blank_label(const std::string& label) {
        if (label.empty()) return false;
        return std::all_of(label.begin(), label.end(), [](unsigned char c) {
            return std::isalnum(c) != 0;
        });
    }

    void check_shapes(const ResolvedMapping& resolved) {
        for (const auto& shape : doc_.shapes) {
            const std::string where = "shape " + shape.name.text();
            check_prefix(resolved, shape.name.prefix, where);
            switch (shape.subject.kind) {
                case SubjectKind::generated:
                    check_prefix(resolved, shape.subject.prefix, where + " subject");
                    check_generator(resolved, shape.subject.generator, where + " subject");
                    break;
                case SubjectKind::fixed:
                    check_prefix(resolved, shape.subject.prefix, where + " subject");
                    break;
                case SubjectKind::blank:
                    if (!is_valid_blank_label(shape.subject.local)) {
                        problem("blank node label '" + shape.subject.local + "' in " + where +
                                " must be alphanumeric");
                    }
                    break;
            }
            for (const auto& statement : shape.statements) {
                if (!statement.is_type) {
                    check_prefix(resolved, statement.predicate.prefix,
                                 where + " predicate " + statement.predicate.text());
                }
                switch (statement.object.kind) {
                    case ObjectKind::generator:
                        check_generator(resolved, statement.object.generator, where);
                        break;
                    case ObjectKind::shape_link:
                        if (resolved.shape_index.find(statement.object.link.text()) ==
                            resolved.shape_index.end()) {
                            problem("undeclared shape '" + statement.object.link.text() +
                                    "' linked from " + where);
                        }
                        break;
                    case ObjectKind::fixed_iri:
                        check_prefix(resolved, statement.object.fixed.prefix, where);
                        break;
                    case ObjectKind::literal:
                        break;
                }
                if (statement.datatype) {
                    check_prefix(resolved, statement.datatype->prefix, where + " datatype");
                }
            }
        }
    }

    void build_shape_links(ResolvedMapping& resolved) {
        for (const auto& shape : doc_.shapes) {
            for (const auto& statement : shape.statements) {
                if (statement.object.kind == ObjectKind::shape_link) {
                    ShapeLink link;
                    link.kind = ShapeLink::Kind::reference;
                    link.from_shape = shape.name.text();
                    link.to_shape = statement.object.link.text();
                    link.predicate = statement.is_type ? "a" : statement.predicate.text();
                    resolved.shape_links.push_back(std::move(link));
                }
            }
        }
        // A fixed subject lying inside another shape's generator prefix can
        // alias that shape's subjects at materialization time; report the
        // potential merge.
        for (const auto& fixed : doc_.shapes) {
            if (fixed.subject.kind != SubjectKind::fixed) continue;
            std::string iri =
                resolved.expand_prefix(fixed.subject.prefix) + fixed.subject.local;
            for (const auto& other : doc_.shapes) {
                if (&other == &fixed || other.subject.kind != SubjectKind::generated) continue;
                const std::string& base = resolved.expand_prefix(other.subject.prefix);
                if (!base.empty() && iri.size() > base.size() && iri.compare(0, base.size(), base) == 0) {
                    ShapeLink link;
                    link.kind = ShapeLink::Kind::subject_overlap;
                    link.from_shape = fixed.name.text();
                    link.to_shape = other.name.text();
                    resolved.shape_links.push_back(std::move(link));
                }
            }
        }
    }
};

}  // namespace

std::string ResolvedMapping::expand(const PrefixedName& name) const {
    return expand_prefix(name.prefix) + name.local;
}

std::string ResolvedMapping::expand_prefix(const std::string& prefix) const {
    auto it = prefix_map.find(prefix);
    if (it == prefix_map.end()) {
        throw ResolveError({"undeclared prefix '" + prefix + "'"});
    }
    return it->second;
}

const SourceDecl& ResolvedMapping::source(const std::string& name) const {
    return document.sources.at(source_index.at(name));
}

const IteratorDecl& ResolvedMapping::iterator(const std::string& name) const {
    return document.iterators.at(iterator_index.at(name));
}

const ExpressionDecl& ResolvedMapping::expression(const std::string& name) const {
    return document.expressions.at(expression_index.at(name));
}

const ShapeDecl& ResolvedMapping::shape(const std::string& name) const {
    return document.shapes.at(shape_index.at(name));
}

const IteratorDecl* ResolvedMapping::branch_iterator(const ExpressionBranch& branch) const {
    if (branch.iterator_path.empty()) return nullptr;
    auto it = iterator_index.find(branch.iterator_path[0]);
    if (it == iterator_index.end()) return nullptr;
    const IteratorDecl* current = &document.iterators[it->second];
    for (std::size_t i = 1; i < branch.iterator_path.size(); ++i) {
        const IteratorDecl* next = nullptr;
        for (const auto& child : current->children) {
            if (child.name == branch.iterator_path[i]) {
                next = &child;
                break;
            }
        }
        if (next == nullptr) return nullptr;
        current = next;
    }
    return current;
}

ResolvedMapping resolve_references(const MappingDocument& doc) {
    return Resolver(doc).run();
}

}  // namespace metaforge::dsl
