#include <gtest/gtest.h>

#include <random>

#include "parrot/errors.hpp"
#include "parrot/query.hpp"
#include "parrot/turtle.hpp"
#include "random_graph.hpp"

using namespace parrot;
using query::BindingSet;
using query::Filter;
using rdf::Term;

namespace {

const std::string kCq1 =
    "SELECT ?Device ?PrivacyPattern\n"
    "WHERE {  \n"
    "?Device rdf:type PARROT:Device.\n"
    "?Device PARROT:entails ?PrivacyPattern. \n"
    "filter (?Device = PARROT:Mobile\\_Phone ) }";

std::string unsupported_keyword(const std::string& text) {
    try {
        query::parse_query(text);
    } catch (const UnsupportedFeature& e) {
        return e.keyword();
    }
    return "";
}

}  // namespace

TEST(QueryParse, PaperCq1Structure) {
    const auto q = query::parse_query(kCq1);
    EXPECT_EQ(q.select, (std::vector<std::string>{"Device", "PrivacyPattern"}));
    ASSERT_EQ(q.patterns.size(), 2u);
    ASSERT_EQ(q.filters.size(), 1u);
    EXPECT_EQ(q.filters[0].variable, "Device");
    EXPECT_EQ(q.filters[0].op, Filter::Op::Equals);
    EXPECT_EQ(q.filters[0].value, Term::iri(ns::parrot("Mobile_Phone")));
    EXPECT_EQ(std::get<Term>(q.patterns[0].predicate), Term::iri(ns::kRdfType));
    EXPECT_EQ(std::get<Term>(q.patterns[0].object), Term::iri(ns::parrot("Device")));
}

TEST(QueryParse, AKeywordExpandsToRdfType) {
    const auto q = query::parse_query("SELECT ?x WHERE { ?x a <http://e/C> }");
    ASSERT_EQ(q.patterns.size(), 1u);
    EXPECT_EQ(std::get<Term>(q.patterns[0].predicate), Term::iri(ns::kRdfType));
}

TEST(QueryParse, KeywordsAreCaseInsensitive) {
    const auto q = query::parse_query(
        "prefix ex: <http://e/> select ?x where { ?x ex:p ?y . FILTER (?y != ex:z) }");
    EXPECT_EQ(q.filters.at(0).op, Filter::Op::NotEquals);
    EXPECT_EQ(q.filters.at(0).value, Term::iri("http://e/z"));
}

TEST(QueryParse, UnsupportedFeaturesNameTheKeyword) {
    EXPECT_EQ(unsupported_keyword("PREFIX ex: <http://e/> SELECT ?x WHERE { ?x ex:p ?y } ORDER BY ?x"), "ORDER BY");
    EXPECT_EQ(unsupported_keyword("PREFIX ex: <http://e/> SELECT ?x WHERE { ?x ex:p ?y } GROUP BY ?x"), "GROUP BY");
    EXPECT_EQ(unsupported_keyword("PREFIX ex: <http://e/> SELECT ?x WHERE { ?x ex:p ?y OPTIONAL { ?x ex:q ?z } }"),
              "OPTIONAL");
    EXPECT_EQ(unsupported_keyword("PREFIX ex: <http://e/> SELECT ?x WHERE { { ?x ex:p ?y } UNION { ?x ex:q ?y } }"),
              "nested group patterns");
    EXPECT_EQ(unsupported_keyword("PREFIX ex: <http://e/> SELECT ?x WHERE { ?x ex:p ?y } LIMIT 3"), "LIMIT");
    EXPECT_EQ(unsupported_keyword("ASK { ?x ?p ?o }"), "ASK");
    EXPECT_EQ(unsupported_keyword("SELECT * WHERE { ?x ?p ?o }"), "SELECT *");
    EXPECT_EQ(unsupported_keyword("PREFIX ex: <http://e/> SELECT ?x WHERE { ?x ex:p/ex:q ?y }"), "property paths");
}

TEST(QueryParse, SyntaxErrors) {
    EXPECT_THROW(query::parse_query("SELECT ?x WHERE { ?x ?p ?o"), ParseError);
    EXPECT_THROW(query::parse_query("SELECT WHERE { ?x ?p ?o }"), ParseError);
    EXPECT_THROW(query::parse_query("SELECT ?x WHERE { ?x nope:p ?o }"), ParseError);
    EXPECT_THROW(query::parse_query("SELECT ?z WHERE { ?x ?p ?o }"), ParseError);
    EXPECT_THROW(query::parse_query("SELECT ?x WHERE { ?x ?p ?o FILTER (?q = rdf:type) }"), ParseError);
    EXPECT_THROW(query::parse_query("SELECT ?x WHERE { ?x ?p ?o FILTER (?x = \"lit\") }"), ParseError);
}

TEST(QueryEval, EmptyGraphGivesEmptyResult) {
    rdf::Graph g;
    EXPECT_TRUE(query::evaluate(query::parse_query(kCq1), g).empty());
    EXPECT_TRUE(query::evaluate_oracle(query::parse_query(kCq1), g).empty());
}

TEST(QueryEval, FullScanOfThreeSubjects) {
    auto g = rdf::parse_turtle("@prefix ex: <http://e/> . ex:a ex:p ex:x . ex:b ex:p ex:x . ex:c ex:q \"v\" .");
    const auto result = query::evaluate(query::parse_query("SELECT ?s WHERE { ?s ?p ?o }"), g);
    ASSERT_EQ(result.rows.size(), 3u);
    EXPECT_EQ(result.rows[0][0], Term::iri("http://e/a"));
    EXPECT_EQ(result.rows[2][0], Term::iri("http://e/c"));
}

TEST(QueryEval, ProjectionDeduplicates) {
    auto g = rdf::parse_turtle("@prefix ex: <http://e/> . ex:a ex:p ex:x, ex:y, ex:z .");
    const auto result = query::evaluate(query::parse_query("SELECT ?s WHERE { ?s ex:p ?o }", {{"ex", "http://e/"}}), g);
    EXPECT_EQ(result.rows.size(), 1u);
}

TEST(QueryEval, RepeatedVariableWithinPattern) {
    auto g = rdf::parse_turtle("@prefix ex: <http://e/> . ex:a ex:p ex:a . ex:a ex:p ex:b .");
    const auto q = query::parse_query("SELECT ?s WHERE { ?s ex:p ?s }", {{"ex", "http://e/"}});
    EXPECT_EQ(query::evaluate(q, g).rows.size(), 1u);
    EXPECT_EQ(query::evaluate_oracle(q, g), query::evaluate(q, g));
}

TEST(QueryEval, ContradictoryEqualityFiltersGiveNothing) {
    auto g = rdf::parse_turtle("@prefix ex: <http://e/> . ex:a ex:p ex:b .");
    const auto q = query::parse_query(
        "SELECT ?s WHERE { ?s ex:p ?o FILTER(?s = ex:a) FILTER(?s = ex:b) }", {{"ex", "http://e/"}});
    EXPECT_TRUE(query::evaluate(q, g).empty());
    EXPECT_TRUE(query::evaluate_oracle(q, g).empty());
}

TEST(QueryProperty, EvaluateMatchesOracle) {
    std::mt19937 rng(99);
    int nonempty = 0;
    for (int i = 0; i < 500; ++i) {
        const auto g = proptest::random_graph(rng, 50, 8, 3);
        const auto q = proptest::random_query(rng, 8, 3);
        const auto fast = query::evaluate(q, g);
        const auto slow = query::evaluate_oracle(q, g);
        ASSERT_EQ(fast, slow) << "instance " << i;
        nonempty += fast.empty() ? 0 : 1;
    }
    // The generator must actually exercise joins, not only empty answers.
    EXPECT_GT(nonempty, 150);
}

TEST(QueryProperty, FilterSoundnessAndDeterminism) {
    std::mt19937 rng(5);
    for (int i = 0; i < 200; ++i) {
        const auto g = proptest::random_graph(rng, 50, 8, 3);
        const auto q = proptest::random_query(rng, 8, 3);
        const auto a = query::evaluate(q, g);
        EXPECT_EQ(a, query::evaluate(q, g));
        for (const auto& f : q.filters) {
            auto it = std::find(a.vars.begin(), a.vars.end(), f.variable);
            if (it == a.vars.end()) continue;
            const auto col = static_cast<std::size_t>(it - a.vars.begin());
            for (const auto& row : a.rows) EXPECT_EQ(row[col] == f.value, f.op == Filter::Op::Equals);
        }
    }
}

TEST(QueryProperty, MonotoneUnderInsertion) {
    std::mt19937 rng(11);
    for (int i = 0; i < 200; ++i) {
        auto g = proptest::random_graph(rng, 40, 8, 3);
        auto q = proptest::random_query(rng, 8, 3);
        q.filters.clear();
        const auto before = query::evaluate(q, g);
        g.insert(proptest::random_triple(rng, 8, 3));
        const auto after = query::evaluate(q, g);
        for (const auto& row : before.rows) {
            EXPECT_TRUE(std::binary_search(after.rows.begin(), after.rows.end(), row));
        }
    }
}
