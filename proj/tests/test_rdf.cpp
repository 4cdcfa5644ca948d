#include "ontochat/rdf/graph.hpp"
#include "ontochat/rdf/term.hpp"
#include "ontochat/rdf/turtle.hpp"
#include "ontochat/rdf/vocab.hpp"

#include <catch_amalgamated.hpp>

#include <vector>

using namespace ontochat::rdf;

namespace {

std::vector<Triple> triples(const Graph& g) { return {g.begin(), g.end()}; }

const std::string kXsd = "http://www.w3.org/2001/XMLSchema#";

} // namespace

TEST_CASE("term keys are N-Triples renderings", "[rdf]") {
    CHECK(Term::iri("http://x/a").key() == "<http://x/a>");
    CHECK(Term::blank("b0").key() == "_:b0");
    CHECK(Term::literal("hi").key() == "\"hi\"");
    CHECK(Term::literal("5", kXsd + "integer").key() == "\"5\"^^<" + kXsd + "integer>");
    CHECK(Term::lang_literal("Hallo", "DE").key() == "\"Hallo\"@de");
    CHECK(Term::literal("a\"b\n").key() == "\"a\\\"b\\n\"");
}

TEST_CASE("term classification and numeric values", "[rdf]") {
    CHECK(Term::integer(42).is_numeric());
    CHECK(Term::integer(42).numeric_value() == 42.0);
    CHECK(Term::literal("2.5", kXsd + "decimal").numeric_value() == 2.5);
    CHECK(Term::literal("1e3", kXsd + "double").numeric_value() == 1000.0);
    CHECK_FALSE(Term::literal("12").is_numeric());
    CHECK(Term::literal("12").is_string());
    CHECK(Term::lang_literal("x", "en").is_string());
    CHECK_FALSE(Term::literal("abc", kXsd + "integer").numeric_value().has_value());
    CHECK(Term::boolean(true).datatype() == kXsd + "boolean");
}

TEST_CASE("terms order by key bytes", "[rdf]") {
    CHECK(Term::literal("a") < Term::iri("http://a"));  // '"' < '<'
    CHECK(Term::iri("http://a") < Term::blank("x"));    // '<' < '_'
    CHECK(Term::iri("http://a") == Term::iri("http://a"));
}

TEST_CASE("local_name splits on the last separator", "[rdf]") {
    CHECK(local_name("http://x.org/ns#Foo") == "Foo");
    CHECK(local_name("http://x.org/ns/Bar") == "Bar");
    CHECK(local_name("urn:isbn:123") == "123");
}

TEST_CASE("graph rejects invalid triples and deduplicates", "[rdf]") {
    Graph g;
    Triple t{Term::iri("http://s"), Term::iri("http://p"), Term::literal("o")};
    CHECK(g.insert(t));
    CHECK_FALSE(g.insert(t));
    CHECK(g.size() == 1);
    CHECK_THROWS_AS(g.insert({Term::literal("x"), Term::iri("http://p"), Term::literal("o")}), std::invalid_argument);
    CHECK_THROWS_AS(g.insert({Term::iri("http://s"), Term::blank("p"), Term::literal("o")}), std::invalid_argument);
}

TEST_CASE("graph match uses all bound positions", "[rdf]") {
    Graph g;
    Term s1 = Term::iri("http://s1"), s2 = Term::iri("http://s2");
    Term p = Term::iri("http://p"), q = Term::iri("http://q");
    g.insert({s1, p, Term::integer(1)});
    g.insert({s1, q, Term::integer(2)});
    g.insert({s2, p, Term::integer(1)});
    CHECK(g.match({s1, std::nullopt, std::nullopt}).size() == 2);
    CHECK(g.match({std::nullopt, p, std::nullopt}).size() == 2);
    CHECK(g.match({std::nullopt, p, Term::integer(1)}).size() == 2);
    CHECK(g.match({s2, q, std::nullopt}).empty());
    CHECK(g.match({}).size() == 3);

    Graph copy = g;
    CHECK(triples(copy) == triples(g));
    CHECK(copy.match({s1, std::nullopt, std::nullopt}).size() == 2);
}

TEST_CASE("turtle parser covers the supported syntax", "[rdf]") {
    auto doc = parse_turtle(R"(
@prefix ex: <http://example.org/> .
PREFIX x: <http://x.org/>
# comment
ex:a a ex:C ;
    ex:name "Alice"@en , 'single' ;
    ex:age 42 ;
    ex:height 1.75 ;
    ex:big 1.5e3 ;
    ex:ok true ;
    ex:typed "7"^^<http://www.w3.org/2001/XMLSchema#integer> ;
    ex:long """line1
line2""" ;
    ex:esc "tab\tquote\" é" ;
    x:rel _:b1 .
_:b1 ex:p <http://example.org/abs> .
ex:a ex:local\-name ex:x .
)");
    const Graph& g = doc.graph;
    CHECK(g.size() == 13);
    Term a = Term::iri("http://example.org/a");
    auto get = [&](const std::string& p) {
        auto m = g.match({a, Term::iri("http://example.org/" + p), std::nullopt});
        REQUIRE(m.size() >= 1);
        return m.front().object;
    };
    CHECK(get("age") == Term::literal("42", kXsd + "integer"));
    CHECK(get("height") == Term::literal("1.75", kXsd + "decimal"));
    CHECK(get("big") == Term::literal("1.5e3", kXsd + "double"));
    CHECK(get("ok") == Term::literal("true", kXsd + "boolean"));
    CHECK(get("long").value() == "line1\nline2");
    CHECK(get("esc").value() == "tab\tquote\" \xc3\xa9");
    CHECK(g.match({a, Term::iri("http://example.org/name"), std::nullopt}).size() == 2);
    CHECK(g.contains({a, Term::iri(std::string(vocab::kRdfType)), Term::iri("http://example.org/C")}));
    CHECK(g.contains({a, Term::iri("http://example.org/local-name"), Term::iri("http://example.org/x")}));
    CHECK(g.prefixes().at("x") == "http://x.org/");
}

TEST_CASE("turtle syntax errors carry positions", "[rdf]") {
    try {
        parse_turtle("@prefix ex: <http://e/> .\nex:a ex:b .\n");
        FAIL("expected a syntax error");
    } catch (const TurtleSyntaxError& e) {
        CHECK(e.line() == 2);
        CHECK(e.column() >= 10);
    }
    CHECK_THROWS_AS(parse_turtle("ex:a ex:b ex:c ."), TurtleSyntaxError);  // undeclared prefix
    CHECK_THROWS_AS(parse_turtle("<http://a> <http://b> \"unterminated ."), TurtleSyntaxError);
}

TEST_CASE("turtle features outside the subset are named", "[rdf]") {
    CHECK_THROWS_AS(parse_turtle("<http://a> <http://b> [ <http://c> 1 ] ."), UnsupportedFeature);
    CHECK_THROWS_AS(parse_turtle("<http://a> <http://b> ( 1 2 ) ."), UnsupportedFeature);
    CHECK_THROWS_AS(parse_turtle("@base <http://a/> ."), UnsupportedFeature);
    CHECK_THROWS_AS(parse_turtle("<a> <http://b> 1 ."), UnsupportedFeature);
}

TEST_CASE("turtle diagnostics report duplicates", "[rdf]") {
    auto doc = parse_turtle("<http://a> <http://b> 1 .\n<http://a> <http://b> 1 .\n");
    CHECK(doc.graph.size() == 1);
    CHECK(doc.diagnostics.size() == 1);
}

TEST_CASE("serialization round-trips and is canonical", "[rdf]") {
    std::string src = R"(
@prefix ex: <http://example.org/> .
ex:b ex:p "x"@en , "y" , 3 , 2.5 , "z"^^ex:dt , false .
ex:a ex:q _:n1 ; a ex:K .
_:n1 ex:r "multi\nline \"quoted\"" .
ex:a ex:weird "-0"^^<http://www.w3.org/2001/XMLSchema#integer> .
)";
    auto g1 = parse_turtle(src).graph;
    std::string out = serialize_turtle(g1);
    auto g2 = parse_turtle(out).graph;
    CHECK(triples(g1) == triples(g2));
    CHECK(serialize_turtle(g2) == out);
    CHECK(out.find("@prefix ex: <http://example.org/> .") == 0);
    // predicates in N-Triples byte order: ex:q, ex:weird, then rdf:type
    CHECK(out.find("ex:a ex:q _:n1 ;\n") != std::string::npos);
    CHECK(out.find(";\n    a ex:K .\n") != std::string::npos);
}

TEST_CASE("compact_iri prefers the longest namespace", "[rdf]") {
    PrefixMap p = {{"a", "http://x.org/"}, {"b", "http://x.org/ns#"}};
    CHECK(compact_iri("http://x.org/ns#Foo", p) == "b:Foo");
    CHECK(compact_iri("http://x.org/Bar", p) == "a:Bar");
    CHECK(compact_iri("http://other/Baz", p) == "<http://other/Baz>");
}
