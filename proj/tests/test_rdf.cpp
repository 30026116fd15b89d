#include <doctest.h>

#include <random>

#include "metaforge/rdf.hpp"
#include "support/testutil.hpp"

using namespace metaforge;
using rdf::Term;

TEST_CASE("inserting the same triple twice keeps set semantics") {
    rdf::Graph graph;
    graph.add(Term::iri("http://a"), Term::iri("http://p"), Term::literal("x"));
    graph.add(Term::iri("http://a"), Term::iri("http://p"), Term::literal("x"));
    CHECK(graph.size() == 1);
}

TEST_CASE("triples are retrievable by subject") {
    rdf::Graph graph;
    Term subject = Term::iri("https://github.com/herminiogg/ShExML");
    graph.add(subject, Term::iri("http://schema.org/version"), Term::literal("0.6.0"));
    graph.add(Term::iri("http://other"), Term::iri("http://schema.org/version"),
              Term::literal("1.0"));
    auto triples = graph.with_subject(subject);
    REQUIRE(triples.size() == 1);
    CHECK(triples[0].object.value == "0.6.0");
}

TEST_CASE("literal subjects and non-IRI predicates are rejected") {
    rdf::Graph graph;
    CHECK_THROWS_AS(graph.add(Term::literal("x"), Term::iri("http://p"), Term::literal("y")),
                    std::invalid_argument);
    CHECK_THROWS_AS(graph.add(Term::iri("http://a"), Term::blank("b"), Term::literal("y")),
                    std::invalid_argument);
    CHECK_NOTHROW(graph.add(Term::blank("b"), Term::iri("http://p"), Term::literal("y")));
}

TEST_CASE("empty graph serializes to empty text") {
    CHECK(rdf::serialize_ntriples(rdf::Graph{}).empty());
}

TEST_CASE("a one-triple graph serializes to one terminated line") {
    rdf::Graph graph;
    graph.add(Term::iri("http://a"), Term::iri("http://p"), Term::literal("x"));
    std::string text = rdf::serialize_ntriples(graph);
    CHECK(text == "<http://a> <http://p> \"x\" .\n");
}

TEST_CASE("serialization is deterministic and sorted") {
    rdf::Graph forward;
    rdf::Graph backward;
    std::vector<std::tuple<std::string, std::string, std::string>> triples = {
        {"http://b", "http://p", "2"},
        {"http://a", "http://q", "1"},
        {"http://a", "http://p", "0"},
    };
    for (const auto& [s, p, o] : triples) {
        forward.add(Term::iri(s), Term::iri(p), Term::literal(o));
    }
    for (auto it = triples.rbegin(); it != triples.rend(); ++it) {
        backward.add(Term::iri(std::get<0>(*it)), Term::iri(std::get<1>(*it)),
                     Term::literal(std::get<2>(*it)));
    }
    CHECK(rdf::serialize_ntriples(forward) == rdf::serialize_ntriples(backward));
    CHECK(rdf::serialize_ntriples(forward).find("<http://a> <http://p>") == 0);
}

TEST_CASE("escaping covers quotes, backslashes and control characters") {
    rdf::Graph graph;
    graph.add(Term::iri("http://a"), Term::iri("http://p"),
              Term::literal("line\r\nquote \"q\" slash \\ tab\t"));
    graph.add(Term::blank("mainAuthor"), Term::iri("http://p"),
              Term::literal("date", "http://www.w3.org/2001/XMLSchema#date"));
    std::string text = rdf::serialize_ntriples(graph);
    CHECK(text.find("\\r\\n") != std::string::npos);
    CHECK(text.find("\\\"q\\\"") != std::string::npos);
    CHECK(text.find("\\\\") != std::string::npos);
    CHECK(text.find("_:mainAuthor") != std::string::npos);
    CHECK(text.find("^^<http://www.w3.org/2001/XMLSchema#date>") != std::string::npos);

    rdf::Graph parsed = rdf::parse_ntriples(text);
    CHECK(parsed == graph);
    CHECK(rdf::serialize_ntriples(parsed) == text);
}

TEST_CASE("explicit xsd:string datatypes normalize to plain literals") {
    CHECK(Term::literal("x", rdf::kXsdString) == Term::literal("x"));
}

TEST_CASE("subjects_of_type returns sorted matches") {
    rdf::Graph graph;
    for (const char* iri : {"http://b", "http://a", "http://c"}) {
        graph.add(Term::iri(iri), Term::iri(rdf::kRdfType), Term::iri("http://T"));
    }
    graph.add(Term::iri("http://x"), Term::iri(rdf::kRdfType), Term::iri("http://Other"));
    auto subjects = graph.subjects_of_type("http://T");
    REQUIRE(subjects.size() == 3);
    CHECK(subjects[0].value == "http://a");
    CHECK(subjects[2].value == "http://c");
}

TEST_CASE("graph union is commutative and associative on random graphs") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> pick(0, 4);
    auto random_graph = [&] {
        rdf::Graph graph;
        for (int i = 0; i < 6; ++i) {
            graph.add(Term::iri("http://s" + std::to_string(pick(rng))),
                      Term::iri("http://p" + std::to_string(pick(rng))),
                      Term::literal(std::to_string(pick(rng))));
        }
        return graph;
    };
    for (int round = 0; round < 20; ++round) {
        rdf::Graph a = random_graph();
        rdf::Graph b = random_graph();
        rdf::Graph c = random_graph();

        rdf::Graph ab = a;
        ab.merge(b);
        rdf::Graph ba = b;
        ba.merge(a);
        CHECK(ab == ba);

        rdf::Graph ab_c = ab;
        ab_c.merge(c);
        rdf::Graph bc = b;
        bc.merge(c);
        rdf::Graph a_bc = a;
        a_bc.merge(bc);
        CHECK(ab_c == a_bc);
    }
}

TEST_CASE("IRI local-part encoding keeps path characters and escapes illegal ones") {
    CHECK(rdf::encode_iri_local_part("herminiogg/ShExML") == "herminiogg/ShExML");
    CHECK(rdf::encode_iri_local_part("Kazerne Dossin") == "Kazerne%20Dossin");
    CHECK(rdf::encode_iri_local_part("a<b>c\"d") == "a%3Cb%3Ec%22d");
    CHECK(rdf::encode_iri_local_part("tab\there") == "tab%09here");
    CHECK(rdf::encode_iri_local_part("García") == "García");  // raw UTF-8 is legal in IRIs
    CHECK(rdf::encode_iri_local_part("v0.6.0:tag") == "v0.6.0:tag");
}

TEST_CASE("absolute-IRI validation") {
    CHECK(rdf::is_valid_absolute_iri("https://github.com/herminiogg/ShExML"));
    CHECK(rdf::is_valid_absolute_iri("http://example.org/Kazerne%20Dossin"));
    CHECK_FALSE(rdf::is_valid_absolute_iri("no-scheme/path"));
    CHECK_FALSE(rdf::is_valid_absolute_iri("http://bad space.org/"));
    CHECK_FALSE(rdf::is_valid_absolute_iri(""));
}

TEST_CASE("ntriples parser round-trips a serialized graph") {
    std::mt19937 rng(21);
    auto graph = testutil::random_frameable_graph(rng, "http://schema.org/SoftwareSourceCode");
    std::string text = rdf::serialize_ntriples(graph);
    CHECK(rdf::serialize_ntriples(rdf::parse_ntriples(text)) == text);
}
