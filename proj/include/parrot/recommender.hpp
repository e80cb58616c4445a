#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "parrot/corpus.hpp"
#include "parrot/dfd.hpp"
#include "parrot/knowledge_base.hpp"
#include "parrot/query.hpp"

namespace parrot::rec {

struct Entry {
    kb::PatternEntry pattern;
    /// Mapped individual whose entails link produced the entry.
    rdf::Term via;
    std::vector<kb::ChainLink> chain;
    kb::TagSet tags;

    friend bool operator==(const Entry&, const Entry&) = default;
};

struct Annotation {
    std::string node_id;
    std::vector<Entry> entries;

    friend bool operator==(const Annotation&, const Annotation&) = default;
};

struct Report {
    std::string dfd_name;
    std::vector<Annotation> annotations;
    std::vector<kb::PatternEntry> global_patterns;
    std::vector<std::string> unmatched_nodes;
    /// Distinct patterns per tag over annotations and global patterns.
    std::map<kb::HoepmanTag, int> tag_summary;

    friend bool operator==(const Report&, const Report&) = default;
};

/// Annotates every node in input order. Nodes that map to no individual
/// are listed as unmatched; mapped nodes whose individuals entail nothing
/// get an annotation with no entries. Global patterns are reported once
/// and kept out of the per-node entries.
Report annotate(const dfd::Dfd& dfd, const rdf::Graph& graph, const std::vector<dfd::MappingRule>& rules);

/// Recount of tag_summary from the report contents.
std::map<kb::HoepmanTag, int> summarize_tags(const Report& report);

struct CqOutcome {
    enum class Kind { Answered, Missing, NotAvailable, Unclassified };
    Kind kind = Kind::Missing;
    query::BindingSet bindings;
};

std::string to_string(CqOutcome::Kind kind);

/// Answered iff the query has solutions; otherwise the record's own
/// availability decides between the remaining outcomes.
CqOutcome answer_cq(const query::Query& query, const rdf::Graph& graph, const cq::CqRecord& record);

/// "markdown" or "json"; anything else throws SchemaError.
std::string render_report(const Report& report, std::string_view format);

/// Inverse of the JSON rendering. Throws ParseError/SchemaError.
Report report_from_json(std::string_view text);

}  // namespace parrot::rec
