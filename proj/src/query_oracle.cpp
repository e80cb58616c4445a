#include <set>
#include <unordered_map>
#include <unordered_set>

#include "parrot/query.hpp"

namespace parrot::query {

namespace {

struct OracleState {
    const Query& query;
    std::vector<std::string> vars;
    std::vector<rdf::Term> domain;
    std::unordered_set<rdf::Triple, rdf::TripleHash> facts;
    // patterns_at[d]: patterns whose last variable (in `vars` order) is vars[d-1].
    std::vector<std::vector<std::size_t>> patterns_at;
    std::vector<std::vector<std::size_t>> filters_at;
    std::unordered_map<std::string, std::size_t> slot_of;
    std::vector<const rdf::Term*> assignment;
    std::set<Row> rows;

    const rdf::Term& value(const Slot& s) const {
        if (const auto* t = std::get_if<rdf::Term>(&s)) return *t;
        return *assignment[slot_of.at(std::get<Var>(s).name)];
    }

    bool pattern_holds(std::size_t i) const {
        const auto& p = query.patterns[i];
        const rdf::Term& s = value(p.subject);
        const rdf::Term& pr = value(p.predicate);
        if (s.is_literal() || !pr.is_iri()) return false;
        rdf::Triple t;
        t.subject = s;
        t.predicate = pr;
        t.object = value(p.object);
        return facts.count(t) != 0;
    }

    bool filter_holds(std::size_t i) const {
        const auto& f = query.filters[i];
        const bool equal = *assignment[slot_of.at(f.variable)] == f.value;
        return equal == (f.op == Filter::Op::Equals);
    }

    bool checks_pass(std::size_t depth) const {
        for (auto i : patterns_at[depth]) {
            if (!pattern_holds(i)) return false;
        }
        for (auto i : filters_at[depth]) {
            if (!filter_holds(i)) return false;
        }
        return true;
    }

    void loop(std::size_t depth) {
        if (depth == vars.size()) {
            Row row;
            for (const auto& v : query.select) row.push_back(*assignment[slot_of.at(v)]);
            rows.insert(std::move(row));
            return;
        }
        for (const auto& term : domain) {
            assignment[depth] = &term;
            if (checks_pass(depth + 1)) loop(depth + 1);
        }
    }
};

}  // namespace

BindingSet evaluate_oracle(const Query& query, const rdf::Graph& graph) {
    BindingSet result;
    result.vars = query.select;
    if (query.patterns.empty()) return result;

    OracleState st{query, pattern_variables(query), {}, {}, {}, {}, {}, {}, {}};
    std::set<rdf::Term> terms;
    for (const auto& t : graph.triples()) {
        st.facts.insert(t);
        terms.insert(t.subject);
        terms.insert(t.predicate);
        terms.insert(t.object);
    }
    st.domain.assign(terms.begin(), terms.end());
    for (std::size_t i = 0; i < st.vars.size(); ++i) st.slot_of[st.vars[i]] = i;
    st.assignment.assign(st.vars.size(), nullptr);

    // Each check runs at the innermost loop that completes its variables.
    st.patterns_at.assign(st.vars.size() + 1, {});
    st.filters_at.assign(st.vars.size() + 1, {});
    for (std::size_t i = 0; i < query.patterns.size(); ++i) {
        std::size_t last = 0;
        for (const Slot* s : {&query.patterns[i].subject, &query.patterns[i].predicate, &query.patterns[i].object}) {
            if (const auto* v = std::get_if<Var>(s)) last = std::max(last, st.slot_of[v->name] + 1);
        }
        st.patterns_at[last].push_back(i);
    }
    for (std::size_t i = 0; i < query.filters.size(); ++i) {
        st.filters_at[st.slot_of.at(query.filters[i].variable) + 1].push_back(i);
    }
    if (!st.checks_pass(0)) return result;

    st.loop(0);
    result.rows.assign(st.rows.begin(), st.rows.end());
    return result;
}

}  // namespace parrot::query
