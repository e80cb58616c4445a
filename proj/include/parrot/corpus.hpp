#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "parrot/knowledge_base.hpp"

namespace parrot::cq {

enum class CqType { DataCollection, Device, Process, Storage, Dignity };
enum class Status { Valid, Duplicated, Modified, Discarded };
/// Unclassified covers records the availability replay leaves unassigned.
enum class Availability { Answered, Missing, NotAvailable, Unclassified };

std::string to_string(CqType type);
std::string to_string(Status status);
std::string to_string(Availability availability);

/// Use cases in the order the corpus numbers them.
const std::vector<std::string>& use_cases();
/// Legal sub-types of a type, in table order.
const std::vector<std::string>& sub_types(CqType type);
std::vector<CqType> all_types();

struct CqRecord {
    std::string id;
    std::string use_case;
    std::string text;
    CqType type = CqType::DataCollection;
    std::string sub_type;
    Status status = Status::Valid;
    std::string discard_reason;
    kb::TagSet expected_tags;
    Availability availability = Availability::Missing;
    /// Resolved against the corpus file's directory at load time.
    std::optional<std::filesystem::path> query_file;
    std::string provenance;

    bool valid_family() const { return status != Status::Discarded; }
};

/// One JSON object per line; blank lines are skipped. Relative query paths
/// are resolved against `base_dir`. Throws ParseError for malformed lines
/// and SchemaError for unknown values, illegal type/sub-type pairs, missing
/// or unexpected query files, and duplicate ids.
std::vector<CqRecord> parse_corpus(std::string_view jsonl, const std::filesystem::path& base_dir = {});
std::vector<CqRecord> load_corpus(const std::filesystem::path& path);

/// Text of the record's query file; throws if the record has none.
std::string read_query(const CqRecord& record);

}  // namespace parrot::cq
