#include <doctest.h>

#include <random>

#include "metaforge/jsonld.hpp"
#include "metaforge/resources.hpp"
#include "support/testutil.hpp"

using namespace metaforge;
using rdf::Term;

namespace {

const std::string kRootType = "http://schema.org/SoftwareSourceCode";

jsonld::Context bundled() { return resources::bundled_context(); }

}  // namespace

TEST_CASE("an empty graph expands to an empty node array") {
    CHECK(jsonld::serialize_expanded(rdf::Graph{}) == Json::array());
}

TEST_CASE("a single typed node expands to one node object with @type") {
    rdf::Graph graph;
    graph.add(Term::iri("http://a"), Term::iri(rdf::kRdfType), Term::iri("http://T"));
    Json nodes = jsonld::serialize_expanded(graph);
    REQUIRE(nodes.size() == 1);
    CHECK(nodes[0].at("@id") == "http://a");
    CHECK(nodes[0].at("@type") == Json::array({"http://T"}));
}

TEST_CASE("the merged graph's expanded form contains the root node id") {
    auto graph = testutil::generate_template("merged").graph;
    Json nodes = jsonld::serialize_expanded(graph);
    bool found = false;
    for (const auto& node : nodes) {
        if (node.at("@id") == "https://github.com/herminiogg/ShExML") found = true;
    }
    CHECK(found);
    // Deterministic: serializing again gives the identical document.
    CHECK(jsonld::serialize_expanded(graph) == nodes);
}

TEST_CASE("expanded literals carry @value and optional @type") {
    rdf::Graph graph;
    graph.add(Term::iri("http://a"), Term::iri("http://p"),
              Term::literal("2018-02-22", "http://www.w3.org/2001/XMLSchema#date"));
    Json nodes = jsonld::serialize_expanded(graph);
    const Json& value = nodes[0].at("http://p")[0];
    CHECK(value.at("@value") == "2018-02-22");
    CHECK(value.at("@type") == "http://www.w3.org/2001/XMLSchema#date");
}

TEST_CASE("IRI compaction picks terms, then prefix CURIEs, then passes through") {
    auto context = bundled();
    CHECK(jsonld::compact_iri("http://schema.org/name", context) == "name");
    CHECK(jsonld::compact_iri("https://w3id.org/codemeta/3.0/issueTracker", context) ==
          "issueTracker");
    CHECK(jsonld::compact_iri("http://unmapped.example/x", context) ==
          "http://unmapped.example/x");
    CHECK(jsonld::compact_iri("http://schema.org/SoftwareSourceCode", context) ==
          "SoftwareSourceCode");
}

TEST_CASE("context collisions are rejected as ambiguous") {
    Json bad = Json::parse(R"({"a": "http://x/p", "b": {"@id": "http://x/p"}})");
    CHECK_THROWS_AS(jsonld::Context::parse(bad), FramingError);
}

TEST_CASE("load_context accepts both wrapped and bare @context objects") {
    Json wrapped = Json::parse(R"({"@context": {"name": "http://schema.org/name"}})");
    Json bare = Json::parse(R"({"name": "http://schema.org/name"})");
    CHECK(jsonld::Context::parse(wrapped).compact_iri("http://schema.org/name") == "name");
    CHECK(jsonld::Context::parse(bare).compact_iri("http://schema.org/name") == "name");

    Json expanded_form = Json::parse(R"({
        "xsd": "http://www.w3.org/2001/XMLSchema#",
        "when": {"@id": "http://x/when", "@type": "xsd:date"},
        "tags": {"@id": "http://x/tags", "@container": "@set"}
    })");
    auto context = jsonld::Context::parse(expanded_form);
    REQUIRE(context.term_definition("when") != nullptr);
    CHECK(context.term_definition("when")->coercion == "http://www.w3.org/2001/XMLSchema#date");
    CHECK(context.term_definition("tags")->container_set);
}

TEST_CASE("keyword entries like @vocab and @version are tolerated") {
    Json source = Json::parse(R"({
        "@version": 1.1,
        "@vocab": "http://vocab.example/",
        "name": "http://schema.org/name"
    })");
    auto context = jsonld::Context::parse(source);
    CHECK(context.compact_iri("http://schema.org/name") == "name");
    CHECK(context.expand_iri("bareterm") == "http://vocab.example/bareterm");
    CHECK(context.expand_iri("http://already.example/iri") == "http://already.example/iri");
}

TEST_CASE("the github graph frames the author as an embedded Person object") {
    auto graph = testutil::generate_template("github").graph;
    Json framed = testutil::frame_with_bundled_context(graph);
    const Json& author = framed.at("author");
    REQUIRE(author.is_object());
    CHECK(author.at("id") == "https://github.com/herminiogg");
    CHECK(author.at("type") == "Person");
    CHECK(author.at("name") == "herminiogg");
}

TEST_CASE("framing fails without a root of the requested type") {
    rdf::Graph graph;
    graph.add(Term::iri("http://a"), Term::iri("http://p"), Term::literal("x"));
    CHECK_THROWS_AS(testutil::frame_with_bundled_context(graph), FramingError);
}

TEST_CASE("a typed node that is somebody's object is not a root") {
    rdf::Graph graph;
    Term root = Term::iri("http://root");
    Term child = Term::iri("http://child");
    for (const auto& node : {root, child}) {
        graph.add(node, Term::iri(rdf::kRdfType), Term::iri(kRootType));
    }
    graph.add(root, Term::iri("http://schema.org/softwareRequirements"), child);
    Json framed = testutil::frame_with_bundled_context(graph);
    CHECK(framed.at("id") == "http://root");
    CHECK(framed.at("softwareRequirements").at("id") == "http://child");
}

TEST_CASE("the merged graph frames author array and nested affiliations") {
    auto graph = testutil::generate_template("merged").graph;
    Json framed = testutil::frame_with_bundled_context(graph);

    const Json& author = framed.at("author");
    REQUIRE(author.is_array());
    REQUIRE(author.size() == 2);
    CHECK(author[0].at("type") == "Role");
    CHECK_FALSE(author[0].contains("id"));  // anonymous blank node
    CHECK(author[0].at("roleName") == "Main author");
    CHECK(author[1].at("type") == "Person");
    CHECK(author[1].at("affiliation").at("name") == "Kazerne Dossin");

    const Json& contributor = framed.at("contributor");
    REQUIRE(contributor.is_object());
    CHECK(contributor.at("affiliation").at("type") == "Organization");
    CHECK(contributor.at("affiliation").at("id") == "https://niod.knaw.nl/en");

    // Key order: @context, id, type, then alphabetical.
    std::vector<std::string> keys;
    for (auto it = framed.begin(); it != framed.end(); ++it) keys.push_back(it.key());
    REQUIRE(keys.size() > 3);
    CHECK(keys[0] == "@context");
    CHECK(keys[1] == "id");
    CHECK(keys[2] == "type");
    CHECK(std::is_sorted(keys.begin() + 3, keys.end()));
}

TEST_CASE("date literals appear as plain strings under coercing terms") {
    auto graph = testutil::generate_template("merged").graph;
    Json framed = testutil::frame_with_bundled_context(graph);
    CHECK(framed.at("dateCreated") == "2018-02-22");
    CHECK(framed.at("dateModified") == "2025-09-10");
}

TEST_CASE("url-reference context emission produces the context IRI string") {
    auto graph = testutil::generate_template("github").graph;
    auto context = bundled();
    jsonld::FrameOptions options;
    options.emission = jsonld::FrameOptions::ContextEmission::url_reference;
    Json framed = jsonld::frame(graph, context, options);
    CHECK(framed.at("@context") == "https://w3id.org/codemeta/3.0/");
}

TEST_CASE("framing round-trips the golden graphs exactly") {
    auto context = bundled();
    for (const char* id : {"github", "merged"}) {
        auto graph = testutil::generate_template(id).graph;
        Json framed = testutil::frame_with_bundled_context(graph);
        rdf::Graph back = jsonld::expand_framed(framed, context);
        CHECK(testutil::graphs_isomorphic(graph, back));
    }
}

TEST_CASE("framing is idempotent byte-for-byte") {
    auto context = bundled();
    jsonld::FrameOptions options;
    auto graph = testutil::generate_template("merged").graph;
    Json framed = jsonld::frame(graph, context, options);
    Json again = jsonld::frame(jsonld::expand_framed(framed, context), context, options);
    CHECK(again.dump(2) == framed.dump(2));
}

TEST_CASE("no literal value is lost by framing") {
    auto graph = testutil::generate_template("merged").graph;
    std::string dumped = testutil::frame_with_bundled_context(graph).dump();
    for (const auto& triple : graph.triples()) {
        if (triple.object.is_literal()) {
            CHECK(dumped.find(Json(triple.object.value).dump()) != std::string::npos);
        }
    }
}

TEST_CASE("multiply-referenced blank nodes keep an explicit blank id") {
    rdf::Graph graph;
    Term root = Term::iri("http://root");
    Term blank = Term::blank("shared");
    graph.add(root, Term::iri(rdf::kRdfType), Term::iri(kRootType));
    graph.add(blank, Term::iri(rdf::kRdfType), Term::iri("http://schema.org/Person"));
    graph.add(blank, Term::iri("http://schema.org/name"), Term::literal("B"));
    graph.add(root, Term::iri("http://p/one"), blank);
    graph.add(root, Term::iri("http://p/two"), blank);
    Json framed = testutil::frame_with_bundled_context(graph);
    auto context = bundled();
    CHECK(framed.dump().find("_:shared") != std::string::npos);
    CHECK(testutil::graphs_isomorphic(graph, jsonld::expand_framed(framed, context)));
}

TEST_CASE("unreachable nodes are reported on the diagnostics channel") {
    rdf::Graph graph;
    graph.add(Term::iri("http://root"), Term::iri(rdf::kRdfType), Term::iri(kRootType));
    graph.add(Term::iri("http://orphan"), Term::iri("http://p"), Term::literal("x"));
    Diagnostics diag;
    jsonld::FrameOptions options;
    auto context = bundled();
    jsonld::frame(graph, context, options, &diag);
    REQUIRE(diag.size() == 1);
    CHECK(diag.entries()[0].message.find("http://orphan") != std::string::npos);
}

TEST_CASE("random graphs round-trip through framing") {
    auto context = bundled();
    jsonld::FrameOptions options;
    std::mt19937 rng(1234);
    for (int round = 0; round < 50; ++round) {
        rdf::Graph graph = testutil::random_frameable_graph(rng, kRootType);
        Json framed = jsonld::frame(graph, context, options);
        rdf::Graph back = jsonld::expand_framed(framed, context);
        bool ok = testutil::graphs_isomorphic(graph, back);
        CHECK(ok);
        if (!ok) {
            MESSAGE("seed round " << round << "\n" << rdf::serialize_ntriples(graph));
            break;
        }
    }
}
