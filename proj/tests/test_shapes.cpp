#include <doctest.h>

#include "metaforge/resources.hpp"
#include "metaforge/shapes.hpp"
#include "support/testutil.hpp"

using namespace metaforge;
using rdf::Term;

namespace {

const char* kPerson = "http://schema.org/Person";

rdf::Graph merged_graph() { return testutil::generate_template("merged").graph; }

}  // namespace

TEST_CASE("the bundled schema accepts both golden graphs") {
    auto schema = resources::bundled_shape_schema();
    for (const char* id : {"github", "merged"}) {
        auto report = shapes::validate(testutil::generate_template(id).graph, schema);
        CHECK(report.conforms);
    }
}

TEST_CASE("a malformed dateCreated value violates the datatype pattern") {
    auto schema = resources::bundled_shape_schema();
    rdf::Graph graph = merged_graph();

    rdf::Graph mutated;
    for (const auto& triple : graph.triples()) {
        if (triple.predicate.value == "http://schema.org/dateCreated") {
            mutated.add(triple.subject, triple.predicate,
                        Term::literal("22-02-2018", triple.object.datatype));
        } else {
            mutated.add(triple);
        }
    }
    auto report = shapes::validate(mutated, schema);
    CHECK_FALSE(report.conforms);
    int violations = 0;
    for (const auto& entry : report.entries) {
        if (entry.severity == shapes::Severity::violation) {
            ++violations;
            CHECK(entry.path == "http://schema.org/dateCreated");
            CHECK(entry.constraint == "pattern");
        }
    }
    CHECK(violations == 1);
}

TEST_CASE("a Person without name or givenName+familyName fails the anyOf group") {
    auto schema = resources::bundled_shape_schema();
    rdf::Graph graph;
    Term person = Term::iri("http://example.org/somebody");
    graph.add(person, Term::iri(rdf::kRdfType), Term::iri(kPerson));
    graph.add(person, Term::iri("http://schema.org/email"), Term::literal("x@y.z"));
    auto report = shapes::validate(graph, schema);
    CHECK_FALSE(report.conforms);
    REQUIRE(report.entries.size() >= 1);
    bool found = false;
    for (const auto& entry : report.entries) {
        if (entry.constraint == "anyOf") {
            found = true;
            CHECK(entry.path.find("http://schema.org/name") != std::string::npos);
            CHECK(entry.path.find("http://schema.org/givenName") != std::string::npos);
        }
    }
    CHECK(found);

    // givenName alone is not enough; the pair completes it.
    graph.add(person, Term::iri("http://schema.org/givenName"), Term::literal("A"));
    CHECK_FALSE(shapes::validate(graph, schema).conforms);
    graph.add(person, Term::iri("http://schema.org/familyName"), Term::literal("B"));
    CHECK(shapes::validate(graph, schema).conforms);
}

TEST_CASE("unknown properties are warnings, not violations") {
    auto schema = resources::bundled_shape_schema();
    rdf::Graph graph = merged_graph();
    graph.add(Term::iri("https://github.com/herminiogg/ShExML"),
              Term::iri("http://schema.org/somethingElse"), Term::literal("extra"));
    auto report = shapes::validate(graph, schema);
    CHECK(report.conforms);
    CHECK(report.has_warnings());
    bool found = false;
    for (const auto& entry : report.entries) {
        if (entry.constraint == "unknownProperty" &&
            entry.path == "http://schema.org/somethingElse") {
            found = true;
            CHECK(entry.severity == shapes::Severity::warning);
        }
    }
    CHECK(found);
}

TEST_CASE("author accepts Person and Role nodes but not literals or plain IRIs") {
    auto schema = resources::bundled_shape_schema();
    rdf::Graph graph = merged_graph();
    Term root = Term::iri("https://github.com/herminiogg/ShExML");
    Term author_iri = Term::iri("http://schema.org/author");

    rdf::Graph with_literal = graph;
    with_literal.add(root, author_iri, Term::literal("somebody"));
    auto report = shapes::validate(with_literal, schema);
    CHECK_FALSE(report.conforms);

    rdf::Graph with_untyped = graph;
    with_untyped.add(root, author_iri, Term::iri("http://example.org/untyped"));
    CHECK_FALSE(shapes::validate(with_untyped, schema).conforms);
}

TEST_CASE("nodes without a targeted class are ignored (open world)") {
    auto schema = resources::bundled_shape_schema();
    rdf::Graph graph = merged_graph();
    graph.add(Term::iri("http://example.org/unrelatedthing"),
              Term::iri("http://schema.org/whatever"), Term::literal("x"));
    CHECK(shapes::validate(graph, schema).conforms);
}

TEST_CASE("the bundled schema has no maxCount and no closed shapes") {
    // Keeps validation monotone: adding a conforming triple can only add
    // warnings, never violations.
    Json document = resources::load_json(resources::bundled_shape_schema_path());
    for (const auto& shape : document.at("shapes")) {
        CHECK_FALSE(shape.contains("closed"));
        if (!shape.contains("properties")) continue;
        for (const auto& constraint : shape.at("properties")) {
            CHECK_FALSE(constraint.contains("maxCount"));
        }
    }
}

TEST_CASE("adding conforming triples never invalidates the merged golden") {
    auto schema = resources::bundled_shape_schema();
    rdf::Graph graph = merged_graph();
    REQUIRE(shapes::validate(graph, schema).conforms);
    graph.add(Term::iri("https://github.com/herminiogg/ShExML"),
              Term::iri("http://schema.org/keywords"), Term::literal("another-keyword"));
    graph.add(Term::iri("https://github.com/herminiogg/ShExML"),
              Term::iri("http://schema.org/dateModified"),
              Term::literal("2026-01-01", "http://www.w3.org/2001/XMLSchema#date"));
    CHECK(shapes::validate(graph, schema).conforms);
}

TEST_CASE("maxCount is enforced when a schema uses it") {
    Json document = Json::parse(R"({
      "shapes": [{
        "targetClass": "http://T",
        "properties": [{"path": "http://p", "maxCount": 1}]
      }]
    })");
    auto schema = shapes::parse_shape_schema(document);
    rdf::Graph graph;
    Term node = Term::iri("http://n");
    graph.add(node, Term::iri(rdf::kRdfType), Term::iri("http://T"));
    graph.add(node, Term::iri("http://p"), Term::literal("a"));
    CHECK(shapes::validate(graph, schema).conforms);
    graph.add(node, Term::iri("http://p"), Term::literal("b"));
    auto report = shapes::validate(graph, schema);
    CHECK_FALSE(report.conforms);
    CHECK(report.entries[0].constraint == "maxCount");
}

TEST_CASE("one-of constraints restrict literal values") {
    auto schema = resources::bundled_shape_schema();
    rdf::Graph graph = merged_graph();
    rdf::Graph mutated;
    for (const auto& triple : graph.triples()) {
        if (triple.predicate.value == "http://schema.org/developmentStatus") {
            mutated.add(triple.subject, triple.predicate, Term::literal("bogus-status"));
        } else {
            mutated.add(triple);
        }
    }
    auto report = shapes::validate(mutated, schema);
    CHECK_FALSE(report.conforms);
    CHECK(report.entries.size() >= 1);
}

TEST_CASE("reports are deterministic and sorted by focus and path") {
    auto schema = resources::bundled_shape_schema();
    rdf::Graph graph = merged_graph();
    graph.add(Term::iri("https://github.com/herminiogg/ShExML"),
              Term::iri("http://schema.org/zzz"), Term::literal("1"));
    graph.add(Term::iri("http://example.org/parboiled_3"),
              Term::iri("http://schema.org/aaa"), Term::literal("2"));
    auto first = shapes::validate(graph, schema);
    auto second = shapes::validate(graph, schema);
    CHECK(first.to_text() == second.to_text());
    for (std::size_t i = 1; i < first.entries.size(); ++i) {
        CHECK(std::tie(first.entries[i - 1].focus, first.entries[i - 1].path) <=
              std::tie(first.entries[i].focus, first.entries[i].path));
    }
}

TEST_CASE("validate_framed re-expands and delegates") {
    auto schema = resources::bundled_shape_schema();
    auto graph = merged_graph();
    auto context = resources::bundled_context();
    Json framed = testutil::frame_with_bundled_context(graph);
    auto report = shapes::validate_framed(framed, context, schema);
    CHECK(report.conforms);
}

TEST_CASE("report rendering covers text and json forms") {
    auto schema = resources::bundled_shape_schema();
    rdf::Graph graph;
    Term person = Term::iri("http://example.org/p");
    graph.add(person, Term::iri(rdf::kRdfType), Term::iri(kPerson));
    auto report = shapes::validate(graph, schema);
    CHECK_FALSE(report.conforms);
    CHECK(report.to_text().find("does not conform") != std::string::npos);
    Json json = report.to_json();
    CHECK(json.at("conforms") == false);
    CHECK(json.at("entries").size() == report.entries.size());
}

TEST_CASE("validating the SSC shape flags a literal softwareRequirements value") {
    auto schema = resources::bundled_shape_schema();
    rdf::Graph graph = merged_graph();
    graph.add(Term::iri("https://github.com/herminiogg/ShExML"),
              Term::iri("http://schema.org/softwareRequirements"),
              Term::literal("not-a-node"));
    auto report = shapes::validate(graph, schema);
    CHECK_FALSE(report.conforms);
    int violations = 0;
    for (const auto& entry : report.entries) {
        if (entry.severity == shapes::Severity::violation) {
            ++violations;
            CHECK(entry.path == "http://schema.org/softwareRequirements");
        }
    }
    CHECK(violations == 1);
}
