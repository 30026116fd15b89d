#include "metaforge/parser.hpp"

namespace metaforge::dsl {

namespace {

// Query text is re-wrapped in <...>; a literal '>' must be re-escaped so the
// output parses back to the same AST.
std::string angle(const std::string& text) {
    std::string out = "<";
    for (char c : text) {
        if (c == '>') out += '\\';
        out += c;
    }
    out += '>';
    return out;
}

std::string quoted(const std::string& text) {
    std::string out = "\"";
    for (char c : text) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            default: out += c;
        }
    }
    out += '"';
    return out;
}

std::string generator_text(const Generator& gen) {
    if (!gen.is_function) return gen.path().text();
    std::string out = gen.function_namespace + "." + gen.function_name + "(";
    for (std::size_t i = 0; i < gen.arguments.size(); ++i) {
        if (i > 0) out += ", ";
        out += gen.arguments[i].text();
    }
    out += ")";
    return out;
}

void print_iterator(std::string& out, const IteratorDecl& iterator, int depth) {
    std::string indent(static_cast<std::size_t>(depth) * 4, ' ');
    out += indent + "ITERATOR " + iterator.name + " ";
    if (depth == 0) {
        out += angle(std::string(query_language_name(iterator.language)) + ": " +
                     iterator.root_query);
    } else {
        out += angle(iterator.root_query);
    }
    out += " {\n";
    std::string inner(static_cast<std::size_t>(depth + 1) * 4, ' ');
    for (const auto& field : iterator.fields) {
        out += inner + "FIELD " + field.name + " " + angle(field.query) + "\n";
    }
    for (const auto& child : iterator.children) {
        print_iterator(out, child, depth + 1);
    }
    out += indent + "}\n";
}

}  // namespace

std::string print_mapping(const MappingDocument& doc) {
    std::string out;
    for (const auto& prefix : doc.prefixes) {
        out += "PREFIX " + prefix.label + ": " + angle(prefix.iri) + "\n";
    }
    for (const auto& source : doc.sources) {
        out += "SOURCE " + source.name + " " + angle(source.locator) + "\n";
    }
    for (const auto& functions : doc.functions) {
        out += "FUNCTIONS " + functions.label + " " + angle(functions.locator) + "\n";
    }
    for (const auto& iterator : doc.iterators) {
        print_iterator(out, iterator, 0);
    }
    for (const auto& expression : doc.expressions) {
        out += "EXPRESSION " + expression.name + " <";
        for (std::size_t i = 0; i < expression.branches.size(); ++i) {
            if (i > 0) out += " UNION ";
            const auto& branch = expression.branches[i];
            out += branch.source;
            for (const auto& part : branch.iterator_path) out += "." + part;
        }
        out += ">\n";
    }
    for (const auto& shape : doc.shapes) {
        out += "\n" + shape.name.text() + " ";
        switch (shape.subject.kind) {
            case SubjectKind::generated:
                out += shape.subject.prefix + ":[" + generator_text(shape.subject.generator) + "]";
                break;
            case SubjectKind::fixed:
                out += shape.subject.prefix + ":" + shape.subject.local;
                break;
            case SubjectKind::blank:
                out += "_:" + shape.subject.local;
                break;
        }
        out += " {\n";
        for (const auto& statement : shape.statements) {
            out += "    ";
            if (statement.is_type) {
                out += "a " + statement.object.fixed.text();
            } else {
                out += statement.predicate.text() + " ";
                switch (statement.object.kind) {
                    case ObjectKind::generator:
                        out += "[" + generator_text(statement.object.generator) + "]";
                        break;
                    case ObjectKind::shape_link:
                        out += "@" + statement.object.link.text();
                        break;
                    case ObjectKind::literal:
                        out += quoted(statement.object.literal);
                        break;
                    case ObjectKind::fixed_iri:
                        out += statement.object.fixed.text();
                        break;
                }
                if (statement.datatype) {
                    out += " " + statement.datatype->text();
                }
            }
            out += " ;\n";
        }
        out += "}\n";
    }
    return out;
}

}  // namespace metaforge::dsl
