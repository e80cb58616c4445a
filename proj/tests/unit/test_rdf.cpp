#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "parrot/errors.hpp"
#include "parrot/namespaces.hpp"
#include "parrot/turtle.hpp"
#include "random_graph.hpp"

using namespace parrot;
using rdf::Graph;
using rdf::Term;
using rdf::Triple;

namespace {

const std::string kParrotPrefixes =
    "@prefix parrot: <https://w3id.org/parrot#> .\n"
    "@prefix rdf: <http://www.w3.org/1999/02/22-rdf-syntax-ns#> .\n";

Term ex(const std::string& local) { return Term::iri("http://e/" + local); }

}  // namespace

TEST(TermTest, LiteralRejectsLanguageAndDatatype) {
    EXPECT_THROW(Term::literal("x", "en", "http://www.w3.org/2001/XMLSchema#string"), std::invalid_argument);
    EXPECT_THROW(Term::iri(""), std::invalid_argument);
    EXPECT_THROW(Term::iri("http://e/a b"), std::invalid_argument);
}

TEST(TermTest, PredicateMustBeIri) {
    EXPECT_THROW(Triple(ex("a"), Term::blank("b"), ex("c")), std::invalid_argument);
    EXPECT_THROW(Triple(Term::literal("x"), ex("p"), ex("c")), std::invalid_argument);
}

TEST(TurtleParse, SingleStatement) {
    Graph g = rdf::parse_turtle("@prefix ex: <http://e/> . ex:a ex:b ex:c .");
    ASSERT_EQ(g.size(), 1u);
    EXPECT_EQ(g.triples()[0], Triple(ex("a"), ex("b"), ex("c")));
}

TEST(TurtleParse, PredicateListExpands) {
    Graph g = rdf::parse_turtle(kParrotPrefixes +
                                "parrot:Mobile_Phone a parrot:Device ; parrot:entails parrot:P14_Asynchronous_Notice .");
    ASSERT_EQ(g.size(), 2u);
    const Term phone = Term::iri(ns::parrot("Mobile_Phone"));
    EXPECT_TRUE(g.contains(Triple(phone, Term::iri(ns::kRdfType), Term::iri(ns::parrot("Device")))));
    EXPECT_TRUE(g.contains(Triple(phone, Term::iri(ns::parrot("entails")), Term::iri(ns::parrot("P14_Asynchronous_Notice")))));
}

TEST(TurtleParse, ObjectListsLiteralsAndComments) {
    Graph g = rdf::parse_turtle(
        "# header\n"
        "PREFIX ex: <http://e/>\n"
        "ex:a ex:p ex:b, ex:c ; # trailing comment\n"
        "     ex:q \"hi\"@en, \"1\"^^<http://www.w3.org/2001/XMLSchema#integer>, \"\"\"multi\nline\"\"\" ;\n"
        "     ex:r _:x .\n"
        "_:x ex:p 'single \\\"quoted\\\"' .\n");
    EXPECT_EQ(g.size(), 7u);
    EXPECT_TRUE(g.contains(Triple(ex("a"), ex("q"), Term::literal("hi", "en"))));
    EXPECT_TRUE(g.contains(Triple(ex("a"), ex("q"), Term::literal("multi\nline"))));
    EXPECT_TRUE(g.contains(Triple(Term::blank("x"), ex("p"), Term::literal("single \"quoted\""))));
}

TEST(TurtleParse, EscapedLocalNames) {
    Graph g = rdf::parse_turtle("@prefix ex: <http://e/> . ex:Mobile\\_Phone ex:b ex:c.");
    ASSERT_EQ(g.size(), 1u);
    EXPECT_EQ(g.triples()[0].subject, ex("Mobile_Phone"));
}

TEST(TurtleParse, MissingDotIsErrorAtEndOfInput) {
    try {
        rdf::parse_turtle("@prefix ex: <http://e/> .\nex:a ex:b ex:c");
        FAIL() << "expected ParseError";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 2u);
        EXPECT_EQ(e.column(), 15u);
        EXPECT_NE(std::string(e.what()).find("end of input"), std::string::npos);
    }
}

TEST(TurtleParse, ErrorKinds) {
    auto message = [](const std::string& text) -> std::string {
        try {
            rdf::parse_turtle(text);
        } catch (const ParseError& e) {
            return e.what();
        }
        return "no error";
    };
    EXPECT_NE(message("zz:a zz:b zz:c .").find("unknown prefix 'zz:'"), std::string::npos);
    EXPECT_NE(message("<http://e/a b> <http://e/p> <http://e/c> .").find("bad IRI"), std::string::npos);
    EXPECT_NE(message("<http://e/a> <http://e/p> <http://e/c").find("bad IRI"), std::string::npos);
    EXPECT_NE(message("<http://e/a> <http://e/p> \"open .").find("unclosed literal"), std::string::npos);
    EXPECT_NE(message("<http://e/a> <http://e/p> [ ] .").find("not supported"), std::string::npos);
    EXPECT_NE(message("<http://e/a> <http://e/p> 42 .").find("not supported"), std::string::npos);
}

TEST(TurtleParse, ErrorPositionIsLineAndColumn) {
    try {
        rdf::parse_turtle("@prefix ex: <http://e/> .\n\n   nope:x ex:p ex:o .");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 3u);
        EXPECT_EQ(e.column(), 4u);
    }
}

TEST(TurtleParse, DuplicatePrefixLastWinsWithWarning) {
    std::vector<std::string> warnings;
    Graph g = rdf::parse_turtle("@prefix ex: <http://one/> .\n@prefix ex: <http://two/> .\nex:a ex:b ex:c .", &warnings);
    ASSERT_EQ(warnings.size(), 1u);
    EXPECT_EQ(g.triples()[0].subject, Term::iri("http://two/a"));
}

TEST(TurtleParse, PrefixedAndAbsoluteFormsAreEqual) {
    Graph a = rdf::parse_turtle("@prefix ex: <http://e/> . ex:a ex:b ex:c .");
    Graph b = rdf::parse_turtle("<http://e/a> <http://e/b> <http://e/c> .");
    EXPECT_EQ(a, b);
}

TEST(TurtleParse, IrisAreCaseSensitive) {
    Graph g = rdf::parse_turtle("@prefix ex: <http://e/> . ex:Device ex:b ex:c . ex:device ex:b ex:c .");
    EXPECT_EQ(g.size(), 2u);
}

TEST(TurtleSerialize, EmptyGraphHasOnlyPrefixes) {
    Graph g;
    EXPECT_EQ(rdf::serialize_turtle(g), "");
    g.prefixes()["ex"] = "http://e/";
    EXPECT_EQ(rdf::serialize_turtle(g), "@prefix ex: <http://e/> .\n");
}

TEST(TurtleSerialize, SingleTripleSingleStatement) {
    Graph g;
    g.prefixes()["ex"] = "http://e/";
    g.insert(ex("a"), ex("b"), ex("c"));
    EXPECT_EQ(rdf::serialize_turtle(g), "@prefix ex: <http://e/> .\n\nex:a ex:b ex:c .\n");
}

TEST(TurtleSerialize, DeterministicAndRoundTrips) {
    std::mt19937 rng(7);
    for (int i = 0; i < 200; ++i) {
        Graph g = proptest::random_graph(rng, 40, 12, 4);
        g.insert(ex("weird"), ex("p"), Term::literal("quote \" back\\slash\nnl\ttab"));
        const std::string text = rdf::serialize_turtle(g);
        Graph back = rdf::parse_turtle(text);
        ASSERT_EQ(back, g) << text;
        EXPECT_EQ(rdf::serialize_turtle(back), text);
    }
}

TEST(TurtleSerialize, UnsafeLocalNamesFallBackToIriRefs) {
    Graph g;
    g.prefixes()["ex"] = "http://e/";
    g.insert(Term::iri("http://e/a/b"), ex("p"), Term::iri("http://e/x.y."));
    const std::string text = rdf::serialize_turtle(g);
    EXPECT_NE(text.find("<http://e/a/b>"), std::string::npos);
    EXPECT_EQ(rdf::parse_turtle(text), g);
}

TEST(GraphTest, InsertIsSetSemantics) {
    Graph g;
    EXPECT_TRUE(g.insert(ex("a"), ex("b"), ex("c")));
    EXPECT_EQ(g.size(), 1u);
    EXPECT_FALSE(g.insert(ex("a"), ex("b"), ex("c")));
    EXPECT_EQ(g.size(), 1u);
    auto hits = g.match(ex("a"), std::nullopt, std::nullopt);
    ASSERT_EQ(hits.size(), 1u);
    EXPECT_EQ(hits[0].object, ex("c"));
}

TEST(GraphTest, MatchOnEmptyGraph) {
    Graph g;
    EXPECT_TRUE(g.match(ex("x"), ex("y"), ex("z")).empty());
    EXPECT_TRUE(g.match(std::nullopt, std::nullopt, std::nullopt).empty());
}

TEST(GraphTest, IndexCoherenceAgainstLinearScan) {
    std::mt19937 rng(2024);
    for (int round = 0; round < 1000; ++round) {
        Graph g = proptest::random_graph(rng, 60, 10, 3);
        const Triple probe = proptest::random_triple(rng, 10, 3);
        const int mask = round % 8;
        std::optional<Term> s, p, o;
        if (mask & 1) s = probe.subject;
        if (mask & 2) p = probe.predicate;
        if (mask & 4) o = probe.object;
        // Bias half the probes towards an existing triple so hits are common.
        if (round % 2 == 0 && !g.empty()) {
            const Triple& t = g.triples()[static_cast<std::size_t>(round) % g.size()];
            if (s) s = t.subject;
            if (p) p = t.predicate;
            if (o) o = t.object;
        }
        auto got = g.match(s, p, o);
        std::vector<Triple> want;
        for (const auto& t : g.triples()) {
            if ((!s || t.subject == *s) && (!p || t.predicate == *p) && (!o || t.object == *o)) want.push_back(t);
        }
        std::sort(got.begin(), got.end());
        std::sort(want.begin(), want.end());
        ASSERT_EQ(got, want) << "round " << round;
    }
}
