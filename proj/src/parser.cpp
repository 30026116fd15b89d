#include "metaforge/parser.hpp"

#include <cctype>
#include <utility>

namespace metaforge::dsl {

const char* query_language_name(QueryLanguage language) {
    return language == QueryLanguage::jsonpath ? "jsonpath" : "xpath";
}

std::string FieldPath::text() const {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i > 0) out += '.';
        out += parts[i];
    }
    return out;
}

namespace {

enum class TokKind {
    ident,
    angle,    // <...> verbatim content
    string,   // "..." content
    lbrace,
    rbrace,
    lbracket,
    rbracket,
    lparen,
    rparen,
    colon,
    semicolon,
    comma,
    dot,
    at,
    end,
};

struct Token {
    TokKind kind = TokKind::end;
    std::string text;
    int line = 1;
    int column = 1;
};

class Lexer {
public:
    explicit Lexer(const std::string& text) : text_(text) {}

    std::vector<Token> run() {
        std::vector<Token> tokens;
        for (;;) {
            skip_trivia();
            Token token;
            token.line = line_;
            token.column = column_;
            if (eof()) {
                token.kind = TokKind::end;
                tokens.push_back(token);
                return tokens;
            }
            char c = peek();
            if (c == '<') {
                token.kind = TokKind::angle;
                token.text = read_angle();
            } else if (c == '"') {
                token.kind = TokKind::string;
                token.text = read_string();
            } else if (is_ident_start(c)) {
                token.kind = TokKind::ident;
                while (!eof() && is_ident_char(peek())) token.text += advance();
            } else {
                switch (c) {
                    case '{': token.kind = TokKind::lbrace; break;
                    case '}': token.kind = TokKind::rbrace; break;
                    case '[': token.kind = TokKind::lbracket; break;
                    case ']': token.kind = TokKind::rbracket; break;
                    case '(': token.kind = TokKind::lparen; break;
                    case ')': token.kind = TokKind::rparen; break;
                    case ':': token.kind = TokKind::colon; break;
                    case ';': token.kind = TokKind::semicolon; break;
                    case ',': token.kind = TokKind::comma; break;
                    case '.': token.kind = TokKind::dot; break;
                    case '@': token.kind = TokKind::at; break;
                    default:
                        throw ParseError(line_, column_,
                                         std::string("unexpected character '") + c + "'");
                }
                advance();
            }
            tokens.push_back(std::move(token));
        }
    }

private:
    const std::string& text_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int column_ = 1;

    bool eof() const { return pos_ >= text_.size(); }
    char peek(std::size_t ahead = 0) const {
        return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
    }

    char advance() {
        char c = text_[pos_++];
        if (c == '\n') {
            ++line_;
            column_ = 1;
        } else {
            ++column_;
        }
        return c;
    }

    static bool is_ident_start(char c) {
        return std::isalpha(static_cast<unsigned char>(c)) != 0 || c == '_';
    }

    static bool is_ident_char(char c) {
        return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_' || c == '-';
    }

    // Whitespace and ## line comments.
    void skip_trivia() {
        for (;;) {
            while (!eof() && std::isspace(static_cast<unsigned char>(peek())) != 0) advance();
            if (!eof() && peek() == '#' && peek(1) == '#') {
                while (!eof() && peek() != '\n') advance();
                continue;
            }
            return;
        }
    }

    // Verbatim up to the first unescaped '>' ("\>" yields a literal '>').
    std::string read_angle() {
        int start_line = line_;
        int start_column = column_;
        advance();  // <
        std::string out;
        while (!eof()) {
            char c = advance();
            if (c == '\\' && !eof() && peek() == '>') {
                out += advance();
            } else if (c == '>') {
                return out;
            } else {
                out += c;
            }
        }
        throw ParseError(start_line, start_column, "unterminated '<...>' text");
    }

    std::string read_string() {
        int start_line = line_;
        int start_column = column_;
        advance();  // "
        std::string out;
        while (!eof()) {
            char c = advance();
            if (c == '\\' && !eof()) {
                char e = advance();
                switch (e) {
                    case '"': out += '"'; break;
                    case '\\': out += '\\'; break;
                    case 'n': out += '\n'; break;
                    case 'r': out += '\r'; break;
                    case 't': out += '\t'; break;
                    default:
                        out += '\\';
                        out += e;
                }
            } else if (c == '"') {
                return out;
            } else if (c == '\n') {
                throw ParseError(start_line, start_column, "unterminated string literal");
            } else {
                out += c;
            }
        }
        throw ParseError(start_line, start_column, "unterminated string literal");
    }
};

const char* kUnsupportedKeywords[] = {"MATCHER", "JOIN", "MATCHING"};

class Parser {
public:
    explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

    MappingDocument run() {
        MappingDocument doc;
        while (peek().kind != TokKind::end) {
            const Token& token = peek();
            if (token.kind != TokKind::ident) {
                fail(token, "expected a declaration or shape");
            }
            if (token.text == "PREFIX") {
                doc.prefixes.push_back(parse_prefix());
            } else if (token.text == "SOURCE") {
                doc.sources.push_back(parse_source());
            } else if (token.text == "FUNCTIONS") {
                doc.functions.push_back(parse_functions());
            } else if (token.text == "ITERATOR") {
                doc.iterators.push_back(parse_iterator(nullptr));
            } else if (token.text == "EXPRESSION") {
                doc.expressions.push_back(parse_expression());
            } else if (is_unsupported(token.text)) {
                fail(token, "unsupported construct " + token.text);
            } else {
                doc.shapes.push_back(parse_shape());
            }
        }
        return doc;
    }

private:
    std::vector<Token> tokens_;
    std::size_t pos_ = 0;

    [[noreturn]] static void fail(const Token& token, const std::string& message) {
        throw ParseError(token.line, token.column, message);
    }

    static bool is_unsupported(const std::string& word) {
        for (const char* kw : kUnsupportedKeywords) {
            if (word == kw) return true;
        }
        return false;
    }

    const Token& peek(std::size_t ahead = 0) const {
        std::size_t i = pos_ + ahead;
        return i < tokens_.size() ? tokens_[i] : tokens_.back();
    }

    const Token& take() {
        const Token& token = peek();
        if (token.kind != TokKind::end) ++pos_;
        return token;
    }

    const Token& expect(TokKind kind, const std::string& what) {
        const Token& token = peek();
        if (token.kind != kind) fail(token, "expected " + what);
        return take();
    }

    std::string expect_ident(const std::string& what) {
        const Token& token = peek();
        if (token.kind != TokKind::ident) fail(token, "expected " + what);
        if (is_unsupported(token.text)) fail(token, "unsupported construct " + token.text);
        return take().text;
    }

    static SourceLoc loc_of(const Token& token) { return SourceLoc{token.line, token.column}; }

    PrefixDecl parse_prefix() {
        PrefixDecl decl;
        decl.loc = loc_of(take());  // PREFIX
        decl.label = expect_ident("prefix label");
        expect(TokKind::colon, "':' after prefix label");
        decl.iri = expect(TokKind::angle, "'<IRI>'").text;
        return decl;
    }

    SourceDecl parse_source() {
        SourceDecl decl;
        decl.loc = loc_of(take());  // SOURCE
        decl.name = expect_ident("source name");
        decl.locator = expect(TokKind::angle, "'<locator>'").text;
        return decl;
    }

    FunctionsDecl parse_functions() {
        FunctionsDecl decl;
        decl.loc = loc_of(take());  // FUNCTIONS
        decl.label = expect_ident("functions label");
        decl.locator = expect(TokKind::angle, "'<locator>'").text;
        return decl;
    }

    static std::string trimmed(const std::string& text) {
        std::size_t b = text.find_first_not_of(" \t\r\n");
        if (b == std::string::npos) return "";
        std::size_t e = text.find_last_not_of(" \t\r\n");
        return text.substr(b, e - b + 1);
    }

    IteratorDecl parse_iterator(const IteratorDecl* parent) {
        IteratorDecl decl;
        decl.loc = loc_of(take());  // ITERATOR
        decl.name = expect_ident("iterator name");
        const Token& angle = peek();
        std::string query = trimmed(expect(TokKind::angle, "'<query>'").text);

        if (query.rfind("jsonpath:", 0) == 0) {
            decl.language = QueryLanguage::jsonpath;
            decl.explicit_language = true;
            decl.root_query = trimmed(query.substr(9));
        } else if (query.rfind("xpath:", 0) == 0) {
            decl.language = QueryLanguage::xpath;
            decl.explicit_language = true;
            decl.root_query = trimmed(query.substr(6));
        } else if (parent != nullptr) {
            decl.language = parent->language;
            decl.root_query = query;
        } else {
            fail(angle, "top-level iterator query must start with 'jsonpath:' or 'xpath:'");
        }

        expect(TokKind::lbrace, "'{'");
        while (peek().kind != TokKind::rbrace) {
            const Token& token = peek();
            if (token.kind != TokKind::ident) fail(token, "expected FIELD or ITERATOR");
            if (token.text == "FIELD") {
                FieldDecl field;
                field.loc = loc_of(take());
                field.name = expect_ident("field name");
                field.query = trimmed(expect(TokKind::angle, "'<query>'").text);
                decl.fields.push_back(std::move(field));
            } else if (token.text == "ITERATOR") {
                decl.children.push_back(parse_iterator(&decl));
            } else if (is_unsupported(token.text)) {
                fail(token, "unsupported construct " + token.text);
            } else {
                fail(token, "expected FIELD or ITERATOR");
            }
        }
        take();  // }
        return decl;
    }

    ExpressionDecl parse_expression() {
        ExpressionDecl decl;
        decl.loc = loc_of(take());  // EXPRESSION
        decl.name = expect_ident("expression name");
        const Token& angle = peek();
        std::string body = expect(TokKind::angle, "'<branches>'").text;

        // The branch list is whitespace-tokenized: path (UNION path)*.
        std::vector<std::string> words;
        std::string word;
        for (char c : body) {
            if (std::isspace(static_cast<unsigned char>(c)) != 0) {
                if (!word.empty()) words.push_back(std::exchange(word, ""));
            } else {
                word += c;
            }
        }
        if (!word.empty()) words.push_back(word);

        bool expect_path = true;
        for (const auto& w : words) {
            if (is_unsupported(w) || w == "AS") {
                fail(angle, "unsupported construct " + w + " in expression");
            }
            if (expect_path) {
                decl.branches.push_back(parse_branch(angle, w));
            } else if (w != "UNION") {
                fail(angle, "expected UNION between expression branches");
            }
            expect_path = !expect_path;
        }
        if (decl.branches.empty() || expect_path) {
            fail(angle, "expression must list source.iterator branches joined by UNION");
        }
        return decl;
    }

    ExpressionBranch parse_branch(const Token& at, const std::string& word) {
        ExpressionBranch branch;
        branch.loc = loc_of(at);
        std::string part;
        for (char c : word) {
            if (c == '.') {
                if (part.empty()) fail(at, "empty path segment in '" + word + "'");
                branch.iterator_path.push_back(std::exchange(part, ""));
            } else {
                part += c;
            }
        }
        if (!part.empty()) branch.iterator_path.push_back(part);
        if (branch.iterator_path.size() < 2) {
            fail(at, "expression branch '" + word + "' must be source.iterator");
        }
        branch.source = branch.iterator_path.front();
        branch.iterator_path.erase(branch.iterator_path.begin());
        return branch;
    }

    PrefixedName parse_pname(const std::string& what) {
        PrefixedName name;
        name.prefix = expect_ident(what + " prefix");
        expect(TokKind::colon, "':' in " + what);
        name.local = expect_ident(what + " local part");
        return name;
    }

    FieldPath parse_field_path() {
        FieldPath path;
        path.parts.push_back(expect_ident("field path segment"));
        while (peek().kind == TokKind::dot) {
            take();
            path.parts.push_back(expect_ident("field path segment"));
        }
        return path;
    }

    Generator parse_generator() {
        Generator gen;
        FieldPath head = parse_field_path();
        if (peek().kind == TokKind::lparen) {
            const Token& paren = take();
            if (head.parts.size() != 2) {
                fail(paren, "function call must be namespace.function(...)");
            }
            gen.is_function = true;
            gen.function_namespace = head.parts[0];
            gen.function_name = head.parts[1];
            if (peek().kind != TokKind::rparen) {
                gen.arguments.push_back(parse_field_path());
                while (peek().kind == TokKind::comma) {
                    take();
                    gen.arguments.push_back(parse_field_path());
                }
            }
            expect(TokKind::rparen, "')'");
        } else {
            gen.arguments.push_back(std::move(head));
        }
        return gen;
    }

    SubjectSpec parse_subject() {
        SubjectSpec subject;
        const Token& first = peek();
        subject.loc = loc_of(first);
        std::string prefix = expect_ident("subject prefix");
        expect(TokKind::colon, "':' in subject");
        if (prefix == "_") {
            subject.kind = SubjectKind::blank;
            subject.local = expect_ident("blank node label");
            return subject;
        }
        subject.prefix = prefix;
        if (peek().kind == TokKind::lbracket) {
            take();
            subject.kind = SubjectKind::generated;
            subject.generator = parse_generator();
            expect(TokKind::rbracket, "']'");
        } else {
            subject.kind = SubjectKind::fixed;
            subject.local = expect_ident("subject local part");
        }
        return subject;
    }

    Statement parse_statement() {
        Statement statement;
        const Token& first = peek();
        statement.loc = loc_of(first);
        if (first.kind == TokKind::ident && first.text == "a" && peek(1).kind != TokKind::colon) {
            take();
            statement.is_type = true;
            statement.object.kind = ObjectKind::fixed_iri;
            statement.object.fixed = parse_pname("type");
        } else {
            statement.predicate = parse_pname("predicate");
            switch (peek().kind) {
                case TokKind::lbracket:
                    take();
                    statement.object.kind = ObjectKind::generator;
                    statement.object.generator = parse_generator();
                    expect(TokKind::rbracket, "']'");
                    break;
                case TokKind::at:
                    take();
                    statement.object.kind = ObjectKind::shape_link;
                    statement.object.link = parse_pname("shape link");
                    break;
                case TokKind::string:
                    statement.object.kind = ObjectKind::literal;
                    statement.object.literal = take().text;
                    break;
                case TokKind::ident:
                    statement.object.kind = ObjectKind::fixed_iri;
                    statement.object.fixed = parse_pname("object");
                    break;
                default:
                    fail(peek(), "expected an object ([generator], @shape, \"literal\" or prefix:name)");
            }
            if (peek().kind == TokKind::ident) {
                statement.datatype = parse_pname("datatype");
            }
        }
        expect(TokKind::semicolon, "';' after statement");
        return statement;
    }

    ShapeDecl parse_shape() {
        ShapeDecl shape;
        shape.loc = loc_of(peek());
        shape.name = parse_pname("shape name");
        shape.subject = parse_subject();
        expect(TokKind::lbrace, "'{'");
        while (peek().kind != TokKind::rbrace) {
            if (peek().kind == TokKind::end) fail(peek(), "unterminated shape body");
            shape.statements.push_back(parse_statement());
        }
        take();  // }
        return shape;
    }
};

}  // namespace

MappingDocument parse_mapping(const std::string& text) {
    Lexer lexer(text);
    Parser parser(lexer.run());
    return parser.run();
}

}  // namespace metaforge::dsl
