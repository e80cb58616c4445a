#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "parrot/corpus.hpp"
#include "parrot/recommender.hpp"

namespace parrot::cq {

/// Counts over the valid-family records; recomputed on every call.
struct CorpusStats {
    int total = 0;
    std::map<std::string, int> per_use_case;
    std::map<CqType, int> per_type;
    std::map<std::pair<CqType, std::string>, int> per_sub_type;
    std::map<kb::HoepmanTag, int> per_tag;
    std::map<Availability, int> per_availability;

    friend bool operator==(const CorpusStats&, const CorpusStats&) = default;
};

CorpusStats compute_stats(const std::vector<CqRecord>& records);

struct TagDiff {
    kb::TagSet missing;
    kb::TagSet unexpected;

    bool empty() const { return missing.empty() && unexpected.empty(); }
    friend bool operator==(const TagDiff&, const TagDiff&) = default;
};

/// Tags of every privacy pattern bound in `bindings`, united.
kb::TagSet answer_tags(const query::BindingSet& bindings, const rdf::Graph& graph);

/// Compares the answer's tag union with the record's expected tags.
TagDiff diff_tags(const CqRecord& record, const query::BindingSet& bindings, const rdf::Graph& graph);

struct RecordResult {
    std::string id;
    rec::CqOutcome outcome;
    /// Flagged answered but the query returned nothing.
    bool regression = false;
    TagDiff tags;
    std::string error;
};

struct CorpusRun {
    CorpusStats stats;
    std::vector<RecordResult> results;
    /// Outcome counts from the replay, keyed like `per_availability`.
    std::map<Availability, int> replay;

    std::vector<std::string> regressions() const;
    std::vector<std::string> tag_mismatches() const;
};

/// Replays every valid-family record. Records with a query file are
/// evaluated; the rest take their outcome from corpus metadata. Query
/// errors are recorded per record, never thrown.
CorpusRun run_corpus(const std::vector<CqRecord>& records, const rdf::Graph& graph);

std::string stats_to_json(const CorpusRun& run);
std::string stats_to_markdown(const CorpusRun& run);

}  // namespace parrot::cq
