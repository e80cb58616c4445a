#pragma once

// Seeded generators for property tests.

#include <random>
#include <string>
#include <vector>

#include "parrot/graph.hpp"
#include "parrot/query.hpp"

namespace parrot::proptest {

inline const std::string kEx = "http://example.org/";

inline rdf::Term random_node(std::mt19937& rng, int vocab) {
    std::uniform_int_distribution<int> pick(0, vocab - 1);
    return rdf::Term::iri(kEx + "n" + std::to_string(pick(rng)));
}

inline rdf::Term random_object(std::mt19937& rng, int vocab) {
    std::uniform_int_distribution<int> kind(0, 9);
    std::uniform_int_distribution<int> pick(0, vocab - 1);
    switch (kind(rng)) {
        case 0: return rdf::Term::literal("v" + std::to_string(pick(rng)));
        case 1: return rdf::Term::literal("v" + std::to_string(pick(rng)), "en");
        case 2: return rdf::Term::blank("b" + std::to_string(pick(rng)));
        default: return random_node(rng, vocab);
    }
}

inline rdf::Triple random_triple(std::mt19937& rng, int vocab, int predicates) {
    std::uniform_int_distribution<int> blank(0, 9);
    std::uniform_int_distribution<int> pick(0, vocab - 1);
    std::uniform_int_distribution<int> pred(0, predicates - 1);
    rdf::Term s = blank(rng) == 0 ? rdf::Term::blank("b" + std::to_string(pick(rng))) : random_node(rng, vocab);
    return rdf::Triple(s, rdf::Term::iri(kEx + "p" + std::to_string(pred(rng))), random_object(rng, vocab));
}

inline rdf::Graph random_graph(std::mt19937& rng, int triples, int vocab, int predicates) {
    rdf::Graph g;
    g.prefixes()["ex"] = kEx;
    for (int i = 0; i < triples; ++i) g.insert(random_triple(rng, vocab, predicates));
    return g;
}

/// Random 1-3 pattern query over at most three variables, with an optional
/// filter. Constants are drawn from the same vocabulary as the graph.
inline query::Query random_query(std::mt19937& rng, int vocab, int predicates) {
    static const std::vector<std::string> kVars = {"a", "b", "c"};
    std::uniform_int_distribution<int> npat(1, 3);
    std::uniform_int_distribution<int> coin(0, 2);
    std::uniform_int_distribution<int> var(0, 2);
    std::uniform_int_distribution<int> pred(0, predicates - 1);

    query::Query q;
    const int n = npat(rng);
    for (int i = 0; i < n; ++i) {
        query::TriplePattern p;
        p.subject = coin(rng) == 0 ? query::Slot(random_node(rng, vocab)) : query::Slot(query::Var{kVars[var(rng)]});
        p.predicate = coin(rng) == 0 ? query::Slot(query::Var{kVars[var(rng)]})
                                     : query::Slot(rdf::Term::iri(kEx + "p" + std::to_string(pred(rng))));
        p.object = coin(rng) == 0 ? query::Slot(random_object(rng, vocab)) : query::Slot(query::Var{kVars[var(rng)]});
        q.patterns.push_back(std::move(p));
    }
    auto vars = query::pattern_variables(q);
    if (vars.empty()) {
        q.patterns.front().subject = query::Var{"a"};
        vars = query::pattern_variables(q);
    }
    std::shuffle(vars.begin(), vars.end(), rng);
    std::uniform_int_distribution<std::size_t> nsel(1, vars.size());
    q.select.assign(vars.begin(), vars.begin() + static_cast<long>(nsel(rng)));
    if (coin(rng) == 0) {
        query::Filter f;
        f.variable = vars[std::uniform_int_distribution<std::size_t>(0, vars.size() - 1)(rng)];
        f.op = coin(rng) == 0 ? query::Filter::Op::NotEquals : query::Filter::Op::Equals;
        f.value = random_node(rng, vocab);
        q.filters.push_back(std::move(f));
    }
    return q;
}

}  // namespace parrot::proptest
