#include <doctest.h>

#include "metaforge/xmldom.hpp"

using namespace metaforge;

TEST_CASE("basic element structure with attributes") {
    auto doc = xml::Document::parse(
        "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        "<root a=\"1\" b='two &gt; one'>\n"
        "  <child>text</child>\n"
        "  <child/>\n"
        "</root>\n");
    const xml::Element& root = doc.root();
    CHECK(root.name == "root");
    REQUIRE(root.attributes.size() == 2);
    CHECK(*root.attribute("b") == "two > one");
    auto children = root.child_elements();
    REQUIRE(children.size() == 2);
    CHECK(children[0]->text_content() == "text");
    CHECK(children[0]->parent == &root);
}

TEST_CASE("namespace prefixes populate local names") {
    auto doc = xml::Document::parse("<mvn:project xmlns:mvn='urn:x'><mvn:version>1</mvn:version></mvn:project>");
    CHECK(doc.root().name == "mvn:project");
    CHECK(doc.root().local_name == "project");
    CHECK(doc.root().child_elements()[0]->local_name == "version");
}

TEST_CASE("entities and character references decode") {
    auto doc = xml::Document::parse("<r>&lt;a&gt; &amp; &quot;b&quot; &apos;c&apos; &#65;&#x42;</r>");
    CHECK(doc.root().text_content() == "<a> & \"b\" 'c' AB");
}

TEST_CASE("CDATA and comments") {
    auto doc = xml::Document::parse("<r><!-- note --><![CDATA[x < y & z]]></r>");
    CHECK(doc.root().text_content() == "x < y & z");
}

TEST_CASE("mixed content preserves document order") {
    auto doc = xml::Document::parse("<r>alpha<b>beta</b>gamma</r>");
    CHECK(doc.root().text_content() == "alphabetagamma");
}

TEST_CASE("UTF-8 text passes through untouched") {
    auto doc = xml::Document::parse("<r>García González</r>");
    CHECK(doc.root().text_content() == "García González");
}

TEST_CASE("malformed input is rejected with a position") {
    CHECK_THROWS_WITH(xml::Document::parse("<a><b></a>"), doctest::Contains("mismatched"));
    CHECK_THROWS(xml::Document::parse("<a>"));
    CHECK_THROWS(xml::Document::parse("no markup"));
    CHECK_THROWS_WITH(xml::Document::parse("<!DOCTYPE html><a/>"), doctest::Contains("DOCTYPE"));
    CHECK_THROWS(xml::Document::parse("<a>&unknown;</a>"));
}

TEST_CASE("trim removes surrounding whitespace only") {
    CHECK(xml::trim("  a b \n") == "a b");
    CHECK(xml::trim("\n\t") == "");
    CHECK(xml::trim("inner  space") == "inner  space");
}
