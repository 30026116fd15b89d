#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace metaforge::xml {

// Minimal immutable XML DOM: elements, attributes and text, in document
// order. Enough for the XPath subset evaluated over POM-style documents;
// DTDs and processing instructions beyond the XML declaration are rejected.
class Element {
public:
    std::string name;        // qualified name as written, e.g. "mvn:project"
    std::string local_name;  // name after the last ':'
    const Element* parent = nullptr;
    std::vector<std::pair<std::string, std::string>> attributes;

    struct Content {
        // Exactly one of the two is set; document order is preserved.
        std::string text;
        std::unique_ptr<Element> element;
    };
    std::vector<Content> content;

    std::vector<const Element*> child_elements() const;
    const std::string* attribute(const std::string& name) const;

    // Concatenated descendant text in document order, untrimmed.
    std::string text_content() const;
};

class Document {
public:
    // Throws std::runtime_error with a line/column position on malformed
    // input.
    static Document parse(const std::string& text);

    const Element& root() const { return *root_; }

private:
    std::unique_ptr<Element> root_;
};

std::string trim(const std::string& text);

}  // namespace metaforge::xml
