#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "parrot/term.hpp"

namespace parrot::rdf {

using PrefixMap = std::map<std::string, std::string>;

/// A set of triples with subject, predicate and object indexes.
///
/// Insertion order is preserved in `triples()`; duplicates are ignored.
/// Once loading is finished a Graph is only read, so it can be shared
/// between threads without locking.
class Graph {
public:
    /// Returns true if the triple was not present before.
    bool insert(const Triple& triple);
    bool insert(Term s, Term p, Term o) { return insert(Triple(std::move(s), std::move(p), std::move(o))); }

    bool contains(const Triple& triple) const { return set_.count(triple) != 0; }
    std::size_t size() const noexcept { return triples_.size(); }
    bool empty() const noexcept { return triples_.empty(); }
    const std::vector<Triple>& triples() const noexcept { return triples_; }

    /// Triples agreeing with every bound position. Candidates come from the
    /// smallest index bucket among the bound positions.
    std::vector<Triple> match(const std::optional<Term>& s, const std::optional<Term>& p,
                              const std::optional<Term>& o) const;

    /// Number of triples whose `position` (0=s, 1=p, 2=o) equals `term`.
    std::size_t count_at(int position, const Term& term) const;

    PrefixMap& prefixes() noexcept { return prefixes_; }
    const PrefixMap& prefixes() const noexcept { return prefixes_; }

    /// Merges all triples (and missing prefixes) of `other` into this graph.
    void merge(const Graph& other);

    /// Set equality over triples; prefixes are presentation only.
    friend bool operator==(const Graph& a, const Graph& b);

private:
    using Index = std::unordered_map<Term, std::vector<std::size_t>, TermHash>;

    const std::vector<std::size_t>* bucket(const Index& index, const Term& key) const;

    std::vector<Triple> triples_;
    std::unordered_set<Triple, TripleHash> set_;
    Index by_subject_;
    Index by_predicate_;
    Index by_object_;
    PrefixMap prefixes_;
};

}  // namespace parrot::rdf
