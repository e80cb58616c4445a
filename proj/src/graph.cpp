#include "parrot/graph.hpp"

namespace parrot::rdf {

bool Graph::insert(const Triple& triple) {
    if (!set_.insert(triple).second) return false;
    const std::size_t id = triples_.size();
    triples_.push_back(triple);
    by_subject_[triple.subject].push_back(id);
    by_predicate_[triple.predicate].push_back(id);
    by_object_[triple.object].push_back(id);
    return true;
}

const std::vector<std::size_t>* Graph::bucket(const Index& index, const Term& key) const {
    static const std::vector<std::size_t> kEmpty;
    auto it = index.find(key);
    return it == index.end() ? &kEmpty : &it->second;
}

std::size_t Graph::count_at(int position, const Term& term) const {
    switch (position) {
        case 0: return bucket(by_subject_, term)->size();
        case 1: return bucket(by_predicate_, term)->size();
        default: return bucket(by_object_, term)->size();
    }
}

std::vector<Triple> Graph::match(const std::optional<Term>& s, const std::optional<Term>& p,
                                 const std::optional<Term>& o) const {
    std::vector<Triple> out;
    if (!s && !p && !o) {
        out = triples_;
        return out;
    }
    if (s && p && o) {
        Triple t;
        t.subject = *s;
        t.predicate = *p;
        t.object = *o;
        if (contains(t)) out.push_back(std::move(t));
        return out;
    }

    const std::vector<std::size_t>* best = nullptr;
    auto consider = [&](const std::optional<Term>& key, const Index& index) {
        if (!key) return;
        const auto* b = bucket(index, *key);
        if (best == nullptr || b->size() < best->size()) best = b;
    };
    consider(s, by_subject_);
    consider(p, by_predicate_);
    consider(o, by_object_);

    for (std::size_t id : *best) {
        const Triple& t = triples_[id];
        if (s && t.subject != *s) continue;
        if (p && t.predicate != *p) continue;
        if (o && t.object != *o) continue;
        out.push_back(t);
    }
    return out;
}

void Graph::merge(const Graph& other) {
    for (const auto& t : other.triples_) insert(t);
    for (const auto& [label, ns] : other.prefixes_) prefixes_.emplace(label, ns);
}

bool operator==(const Graph& a, const Graph& b) {
    if (a.size() != b.size()) return false;
    for (const auto& t : a.triples_) {
        if (!b.contains(t)) return false;
    }
    return true;
}

}  // namespace parrot::rdf
