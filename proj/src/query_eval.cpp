#include <algorithm>
#include <optional>
#include <unordered_map>

#include "parrot/query.hpp"

namespace parrot::query {

namespace {

using Bindings = std::unordered_map<std::string, rdf::Term>;

std::optional<rdf::Term> resolve(const Slot& slot, const Bindings& b) {
    if (const auto* term = std::get_if<rdf::Term>(&slot)) return *term;
    auto it = b.find(std::get<Var>(slot).name);
    if (it == b.end()) return std::nullopt;
    return it->second;
}

bool slot_bound(const Slot& slot, const std::vector<std::string>& bound) {
    if (std::holds_alternative<rdf::Term>(slot)) return true;
    const auto& name = std::get<Var>(slot).name;
    return std::find(bound.begin(), bound.end(), name) != bound.end();
}

/// Greedy ordering: most bound positions first, then the smallest index
/// bucket of a constant position, then textual order.
std::vector<std::size_t> plan(const Query& q, const rdf::Graph& g, std::vector<std::string> bound) {
    std::vector<std::size_t> order;
    std::vector<bool> used(q.patterns.size(), false);
    for (std::size_t step = 0; step < q.patterns.size(); ++step) {
        std::size_t best = q.patterns.size();
        int best_bound = -1;
        std::size_t best_size = 0;
        for (std::size_t i = 0; i < q.patterns.size(); ++i) {
            if (used[i]) continue;
            const auto& p = q.patterns[i];
            const Slot* slots[3] = {&p.subject, &p.predicate, &p.object};
            int n = 0;
            std::size_t size = g.size();
            for (int k = 0; k < 3; ++k) {
                if (!slot_bound(*slots[k], bound)) continue;
                ++n;
                if (const auto* t = std::get_if<rdf::Term>(slots[k])) size = std::min(size, g.count_at(k, *t));
            }
            if (n > best_bound || (n == best_bound && size < best_size)) {
                best = i;
                best_bound = n;
                best_size = size;
            }
        }
        used[best] = true;
        order.push_back(best);
        for (const Slot* s : {&q.patterns[best].subject, &q.patterns[best].predicate, &q.patterns[best].object}) {
            if (const auto* v = std::get_if<Var>(s)) bound.push_back(v->name);
        }
    }
    return order;
}

class Evaluator {
public:
    Evaluator(const Query& q, const rdf::Graph& g) : q_(q), g_(g) {}

    std::vector<Row> run() {
        Bindings initial;
        std::vector<std::string> prebound;
        // An equality filter fixes its variable up front.
        for (const auto& f : q_.filters) {
            if (f.op != Filter::Op::Equals) continue;
            auto [it, inserted] = initial.emplace(f.variable, f.value);
            if (!inserted && it->second != f.value) return {};
            prebound.push_back(f.variable);
        }
        if (!filters_hold(initial)) return {};
        order_ = plan(q_, g_, prebound);
        search(0, initial);
        return std::move(rows_);
    }

private:
    bool filters_hold(const Bindings& b) const {
        for (const auto& f : q_.filters) {
            auto it = b.find(f.variable);
            if (it == b.end()) continue;
            const bool equal = it->second == f.value;
            if (equal != (f.op == Filter::Op::Equals)) return false;
        }
        return true;
    }

    static bool bind(Bindings& b, const Slot& slot, const rdf::Term& value, std::vector<std::string>& added) {
        const auto* v = std::get_if<Var>(&slot);
        if (v == nullptr) return true;
        auto it = b.find(v->name);
        if (it != b.end()) return it->second == value;
        b.emplace(v->name, value);
        added.push_back(v->name);
        return true;
    }

    void search(std::size_t depth, Bindings& b) {
        if (depth == order_.size()) {
            Row row;
            row.reserve(q_.select.size());
            for (const auto& v : q_.select) row.push_back(b.at(v));
            rows_.push_back(std::move(row));
            return;
        }
        const auto& p = q_.patterns[order_[depth]];
        const auto candidates = g_.match(resolve(p.subject, b), resolve(p.predicate, b), resolve(p.object, b));
        for (const auto& t : candidates) {
            std::vector<std::string> added;
            const bool ok = bind(b, p.subject, t.subject, added) && bind(b, p.predicate, t.predicate, added) &&
                            bind(b, p.object, t.object, added);
            if (ok && filters_hold(b)) search(depth + 1, b);
            for (const auto& name : added) b.erase(name);
        }
    }

    const Query& q_;
    const rdf::Graph& g_;
    std::vector<std::size_t> order_;
    std::vector<Row> rows_;
};

}  // namespace

BindingSet evaluate(const Query& query, const rdf::Graph& graph) {
    BindingSet result;
    result.vars = query.select;
    if (graph.empty() || query.patterns.empty()) return result;
    result.rows = Evaluator(query, graph).run();
    std::sort(result.rows.begin(), result.rows.end());
    result.rows.erase(std::unique(result.rows.begin(), result.rows.end()), result.rows.end());
    return result;
}

}  // namespace parrot::query
