#include <gtest/gtest.h>

#include <fstream>
#include <map>
#include <sstream>

#include "parrot/errors.hpp"
#include "parrot/knowledge_base.hpp"
#include "parrot/linter.hpp"
#include "parrot/turtle.hpp"

using namespace parrot;
using lint::Finding;
using lint::Severity;

namespace {

const std::filesystem::path kData = PARROT_TEST_DATA_DIR;
const std::filesystem::path kFixtures = PARROT_FIXTURE_DIR;

const std::string kPrefixes = R"(
@prefix p: <https://w3id.org/parrot#> .
@prefix ex: <http://example.org/> .
@prefix rdfs: <http://www.w3.org/2000/01/rdf-schema#> .
@prefix owl: <http://www.w3.org/2002/07/owl#> .
@prefix dcterms: <http://purl.org/dc/terms/> .
<https://w3id.org/parrot> a owl:Ontology ; dcterms:license <http://example.org/l> .
dcterms:license a owl:AnnotationProperty ; rdfs:label "license" .
)";

rdf::Graph ttl(const std::string& body) { return rdf::parse_turtle(kPrefixes + body); }

rdf::Graph fixture() {
    std::ifstream in(kFixtures / "parrot_prefix.ttl");
    std::ostringstream s;
    s << in.rdbuf();
    return rdf::parse_turtle(s.str());
}

std::map<std::string, int> counts(const std::vector<Finding>& fs) {
    std::map<std::string, int> out;
    for (const auto& f : fs) ++out[f.pitfall];
    return out;
}

std::vector<std::string> locals(const std::vector<Finding>& fs, const std::string& id) {
    std::vector<std::string> out;
    for (const auto& f : fs)
        if (f.pitfall == id)
            for (const auto& e : f.elements) out.emplace_back(rdf::local_name(e));
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

TEST(Lint, PreFixFixtureCounts) {
    auto fs = lint::lint(fixture());
    auto c = counts(fs);
    EXPECT_EQ(c["P07"], 3);
    EXPECT_EQ(c["P13"], 3);
    EXPECT_EQ(c["P19"], 3);
    EXPECT_EQ(c["P10"], 1);
    EXPECT_EQ(c["P08"], 6);
    EXPECT_EQ(c["P22"], 1);
    EXPECT_EQ(c["P41"], 1);
    EXPECT_EQ(locals(fs, "P08"), (std::vector<std::string>{"Device", "Goal", "Guideline", "Sensor", "Strategy", "entails"}));
    EXPECT_EQ(locals(fs, "P19"), (std::vector<std::string>{"entails", "fully_inspired_by", "partially_inspired_by"}));
    EXPECT_EQ(locals(fs, "P07"), (std::vector<std::string>{"Goals_of_Rost_and_Bock", "Principles_of_Cavoukian_and_Jonas",
                                                           "Principles_of_Wright_and_Raab"}));
}

TEST(Lint, ShippedKbIsCleanAtImportant) {
    auto g = kb::load_directory(kData / "kb");
    auto fs = lint::lint(g, lint::shipped_config());
    EXPECT_FALSE(lint::any_at_or_above(fs, Severity::Important)) << lint::findings_to_text(fs);
    auto c = counts(fs);
    for (const char* id : {"P07", "P08", "P10", "P19"}) EXPECT_EQ(c[id], 0) << id;
}

TEST(Lint, EmptyGraphOnlyHeaderRules) {
    auto c = counts(lint::lint(rdf::Graph{}));
    EXPECT_EQ(c, (std::map<std::string, int>{{"P38", 1}, {"P41", 1}}));
}

TEST(Lint, OrderedBySeverityThenId) {
    auto fs = lint::lint(fixture());
    for (std::size_t i = 1; i < fs.size(); ++i) {
        EXPECT_GE(fs[i - 1].severity, fs[i].severity);
        if (fs[i - 1].severity == fs[i].severity) EXPECT_LE(fs[i - 1].pitfall, fs[i].pitfall);
    }
}

TEST(Lint, RulesAreIndependent) {
    auto g = fixture();
    std::vector<Finding> joined;
    for (const auto& r : lint::registry()) {
        auto part = lint::run_rule(r.id, g);
        for (const auto& f : part) EXPECT_EQ(f.severity, r.severity) << r.id;
        joined.insert(joined.end(), part.begin(), part.end());
    }
    auto all = lint::lint(g);
    std::sort(joined.begin(), joined.end(), [](const Finding& a, const Finding& b) { return a.message < b.message; });
    std::sort(all.begin(), all.end(), [](const Finding& a, const Finding& b) { return a.message < b.message; });
    EXPECT_EQ(joined, all);
    EXPECT_THROW(lint::run_rule("P99", g), UnknownEntity);
}

TEST(Lint, UnionDomainDoesNotTriggerP19) {
    auto g = ttl(R"(
p:A a owl:Class ; rdfs:label "A" . p:B a owl:Class ; rdfs:label "B" . p:C a owl:Class ; rdfs:label "C" .
_:u a owl:Class ; owl:unionOf _:l0 .
_:l0 <http://www.w3.org/1999/02/22-rdf-syntax-ns#first> p:A ; <http://www.w3.org/1999/02/22-rdf-syntax-ns#rest> _:l1 .
_:l1 <http://www.w3.org/1999/02/22-rdf-syntax-ns#first> p:B ; <http://www.w3.org/1999/02/22-rdf-syntax-ns#rest> <http://www.w3.org/1999/02/22-rdf-syntax-ns#nil> .
p:rel a owl:ObjectProperty ; rdfs:label "rel" ; rdfs:domain _:u ; rdfs:range p:C .
p:two a owl:ObjectProperty ; rdfs:label "two" ; rdfs:domain p:A, p:B ; rdfs:range p:C .
)");
    EXPECT_EQ(locals(lint::run_rule("P19", g), "P19"), std::vector<std::string>{"two"});
    EXPECT_TRUE(lint::run_rule("P34", g).empty());
}

TEST(Lint, SingleRuleCases) {
    auto g = ttl(R"(
p:A a owl:Class ; rdfs:label "A" ; rdfs:subClassOf p:B .
p:B a owl:Class ; rdfs:label "B" ; rdfs:subClassOf p:A .
p:Lonely a owl:Class ; rdfs:label "Lonely" .
p:X a p:Undeclared ; p:undeclared_prop p:A .
p:half a owl:ObjectProperty ; rdfs:label "half" ; rdfs:domain p:A .
p:badName a owl:ObjectProperty ; rdfs:label "bad" ; rdfs:domain p:A ; rdfs:range p:B ; owl:inverseOf p:half .
p:Cats_and_Dogs a owl:Class ; rdfs:label "Cats and Dogs" ; rdfs:subClassOf p:Lonely .
)");
    EXPECT_EQ(locals(lint::run_rule("P06", g), "P06"), (std::vector<std::string>{"A", "B"}));
    EXPECT_EQ(locals(lint::run_rule("P11", g), "P11"), std::vector<std::string>{"half"});
    EXPECT_TRUE(lint::run_rule("P13", g).empty());
    EXPECT_EQ(locals(lint::run_rule("P34", g), "P34"), std::vector<std::string>{"Undeclared"});
    EXPECT_EQ(locals(lint::run_rule("P35", g), "P35"), std::vector<std::string>{"undeclared_prop"});
    EXPECT_EQ(locals(lint::run_rule("P07", g), "P07"), std::vector<std::string>{"Cats_and_Dogs"});
    auto p22 = lint::run_rule("P22", g);
    ASSERT_EQ(p22.size(), 1u);
    EXPECT_NE(p22[0].message.find("badName"), std::string::npos);
    EXPECT_TRUE(lint::run_rule("P38", g).empty());
    EXPECT_TRUE(lint::run_rule("P41", g).empty());

    lint::LintConfig cfg;
    cfg.conjunction_allowlist = {"Cats_and_Dogs"};
    EXPECT_TRUE(lint::run_rule("P07", g, cfg).empty());
}

TEST(Lint, UnconnectedIndividual) {
    auto g = ttl(R"(
p:A a owl:Class ; rdfs:label "A" .
p:rel a owl:ObjectProperty ; rdfs:label "rel" ; rdfs:domain p:A ; rdfs:range p:A .
p:Alone a p:A ; rdfs:label "Alone" .
p:Linked a p:A ; p:rel p:Other .
p:Other a p:A .
)");
    EXPECT_EQ(locals(lint::run_rule("P04", g), "P04"), std::vector<std::string>{"Alone"});
}

TEST(Lint, ForeignFindingsAreFilteredByDefault) {
    auto g = ttl("ex:Thing a owl:Class .\np:Mine a owl:Class .\n");
    EXPECT_EQ(locals(lint::run_rule("P08", g), "P08"), std::vector<std::string>{"Mine"});
    lint::LintConfig cfg;
    cfg.include_foreign = true;
    auto all = lint::run_rule("P08", g, cfg);
    ASSERT_EQ(all.size(), 2u);
    EXPECT_EQ(std::count_if(all.begin(), all.end(), [](const Finding& f) { return f.foreign; }), 1);
}

TEST(Lint, JsonShape) {
    auto text = lint::findings_to_json(lint::lint(rdf::Graph{}));
    EXPECT_NE(text.find(R"("pitfall": "P38")"), std::string::npos);
    EXPECT_NE(text.find(R"("severity": "important")"), std::string::npos);
    EXPECT_NE(text.find(R"("elements": [])"), std::string::npos);
    EXPECT_EQ(lint::findings_to_json({}), "[]\n");
    EXPECT_EQ(lint::parse_severity("critical"), Severity::Critical);
    EXPECT_THROW(lint::parse_severity("red"), SchemaError);
}
