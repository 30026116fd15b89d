#include "metaforge/xmldom.hpp"

#include <cctype>
#include <stdexcept>

namespace metaforge::xml {

std::vector<const Element*> Element::child_elements() const {
    std::vector<const Element*> out;
    for (const auto& c : content) {
        if (c.element) out.push_back(c.element.get());
    }
    return out;
}

const std::string* Element::attribute(const std::string& attr_name) const {
    for (const auto& [key, value] : attributes) {
        if (key == attr_name) return &value;
    }
    return nullptr;
}

std::string Element::text_content() const {
    std::string out;
    for (const auto& c : content) {
        if (c.element) {
            out += c.element->text_content();
        } else {
            out += c.text;
        }
    }
    return out;
}

std::string trim(const std::string& text) {
    std::size_t begin = 0;
    std::size_t end = text.size();
    auto is_space = [](unsigned char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; };
    while (begin < end && is_space(text[begin])) ++begin;
    while (end > begin && is_space(text[end - 1])) --end;
    return text.substr(begin, end - begin);
}

namespace {

class Parser {
public:
    explicit Parser(const std::string& text) : text_(text) {}

    std::unique_ptr<Element> parse_document() {
        skip_bom();
        skip_misc();
        if (!starts_with("<")) fail("expected root element");
        auto root = parse_element(nullptr);
        skip_misc();
        if (pos_ < text_.size()) fail("content after root element");
        return root;
    }

private:
    const std::string& text_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int column_ = 1;

    [[noreturn]] void fail(const std::string& message) const {
        throw std::runtime_error("xml: line " + std::to_string(line_) + ", column " +
                                 std::to_string(column_) + ": " + message);
    }

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

    bool starts_with(const std::string& token) const {
        return text_.compare(pos_, token.size(), token) == 0;
    }

    void expect(const std::string& token) {
        if (!starts_with(token)) fail("expected '" + token + "'");
        for (std::size_t i = 0; i < token.size(); ++i) advance();
    }

    void skip_bom() {
        if (starts_with("\xEF\xBB\xBF")) pos_ += 3;
    }

    void skip_whitespace() {
        while (!eof() && std::isspace(static_cast<unsigned char>(peek())) != 0) advance();
    }

    // Whitespace, XML declaration, comments: anything allowed outside the
    // root element.
    void skip_misc() {
        for (;;) {
            skip_whitespace();
            if (starts_with("<?")) {
                skip_until("?>");
            } else if (starts_with("<!--")) {
                skip_until("-->");
            } else if (starts_with("<!DOCTYPE")) {
                fail("DOCTYPE is not supported");
            } else {
                return;
            }
        }
    }

    void skip_until(const std::string& terminator) {
        while (!eof() && !starts_with(terminator)) advance();
        if (eof()) fail("unterminated '" + terminator + "' construct");
        expect(terminator);
    }

    static bool is_name_start(char c) {
        return std::isalpha(static_cast<unsigned char>(c)) != 0 || c == '_' || c == ':';
    }

    static bool is_name_char(char c) {
        return is_name_start(c) || std::isdigit(static_cast<unsigned char>(c)) != 0 || c == '-' ||
               c == '.';
    }

    std::string parse_name() {
        if (eof() || !is_name_start(peek())) fail("expected name");
        std::string name;
        while (!eof() && is_name_char(peek())) name += advance();
        return name;
    }

    static std::string local_of(const std::string& name) {
        auto colon = name.rfind(':');
        return colon == std::string::npos ? name : name.substr(colon + 1);
    }

    void append_codepoint(std::string& out, unsigned long cp) {
        if (cp <= 0x7f) {
            out += static_cast<char>(cp);
        } else if (cp <= 0x7ff) {
            out += static_cast<char>(0xc0 | (cp >> 6));
            out += static_cast<char>(0x80 | (cp & 0x3f));
        } else if (cp <= 0xffff) {
            out += static_cast<char>(0xe0 | (cp >> 12));
            out += static_cast<char>(0x80 | ((cp >> 6) & 0x3f));
            out += static_cast<char>(0x80 | (cp & 0x3f));
        } else if (cp <= 0x10ffff) {
            out += static_cast<char>(0xf0 | (cp >> 18));
            out += static_cast<char>(0x80 | ((cp >> 12) & 0x3f));
            out += static_cast<char>(0x80 | ((cp >> 6) & 0x3f));
            out += static_cast<char>(0x80 | (cp & 0x3f));
        } else {
            fail("character reference out of range");
        }
    }

    void parse_entity(std::string& out) {
        expect("&");
        std::string entity;
        while (!eof() && peek() != ';') {
            entity += advance();
            if (entity.size() > 10) fail("unterminated entity reference");
        }
        if (eof()) fail("unterminated entity reference");
        advance();  // ;
        if (entity == "lt") out += '<';
        else if (entity == "gt") out += '>';
        else if (entity == "amp") out += '&';
        else if (entity == "quot") out += '"';
        else if (entity == "apos") out += '\'';
        else if (entity.size() > 1 && entity[0] == '#') {
            try {
                unsigned long cp = (entity[1] == 'x' || entity[1] == 'X')
                                       ? std::stoul(entity.substr(2), nullptr, 16)
                                       : std::stoul(entity.substr(1), nullptr, 10);
                append_codepoint(out, cp);
            } catch (const std::logic_error&) {
                fail("bad character reference '&" + entity + ";'");
            }
        } else {
            fail("unknown entity '&" + entity + ";'");
        }
    }

    std::string parse_attribute_value() {
        if (peek() != '"' && peek() != '\'') fail("expected quoted attribute value");
        char quote = advance();
        std::string value;
        while (!eof() && peek() != quote) {
            if (peek() == '&') {
                parse_entity(value);
            } else if (peek() == '<') {
                fail("'<' in attribute value");
            } else {
                value += advance();
            }
        }
        if (eof()) fail("unterminated attribute value");
        advance();
        return value;
    }

    std::unique_ptr<Element> parse_element(const Element* parent) {
        expect("<");
        auto element = std::make_unique<Element>();
        element->parent = parent;
        element->name = parse_name();
        element->local_name = local_of(element->name);

        for (;;) {
            skip_whitespace();
            if (eof()) fail("unterminated start tag");
            if (peek() == '/') {
                expect("/>");
                return element;
            }
            if (peek() == '>') {
                advance();
                break;
            }
            std::string attr_name = parse_name();
            skip_whitespace();
            expect("=");
            skip_whitespace();
            element->attributes.emplace_back(attr_name, parse_attribute_value());
        }

        // Content until the matching end tag.
        std::string pending_text;
        auto flush_text = [&] {
            if (!pending_text.empty()) {
                Element::Content chunk;
                chunk.text = std::move(pending_text);
                element->content.push_back(std::move(chunk));
                pending_text.clear();
            }
        };

        for (;;) {
            if (eof()) fail("unterminated element '" + element->name + "'");
            if (starts_with("</")) {
                flush_text();
                expect("</");
                std::string closing = parse_name();
                if (closing != element->name) {
                    fail("mismatched end tag '" + closing + "' for '" + element->name + "'");
                }
                skip_whitespace();
                expect(">");
                return element;
            }
            if (starts_with("<!--")) {
                skip_until("-->");
            } else if (starts_with("<![CDATA[")) {
                expect("<![CDATA[");
                while (!eof() && !starts_with("]]>")) pending_text += advance();
                expect("]]>");
            } else if (starts_with("<?")) {
                skip_until("?>");
            } else if (peek() == '<') {
                flush_text();
                Element::Content chunk;
                chunk.element = parse_element(element.get());
                element->content.push_back(std::move(chunk));
            } else if (peek() == '&') {
                parse_entity(pending_text);
            } else {
                pending_text += advance();
            }
        }
    }
};

}  // namespace

Document Document::parse(const std::string& text) {
    Document doc;
    Parser parser(text);
    doc.root_ = parser.parse_document();
    return doc;
}

}  // namespace metaforge::xml
