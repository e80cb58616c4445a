#pragma once

#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "parrot/graph.hpp"

namespace parrot::kb {

using rdf::Graph;
using rdf::Term;

enum class SchemeLevel { Principle, Strategy, Guideline, Goal, PrivacyPattern };

enum class HoepmanTag { Minimise, Hide, Separate, Aggregate, Inform, Control, Enforce, Demonstrate };

enum class Strength { Full, Partial };

using TagSet = std::set<HoepmanTag>;

std::string to_string(SchemeLevel level);
std::string to_string(HoepmanTag tag);
std::string to_string(Strength strength);

/// Accepts both spellings of "Minimise"; throws SchemaError otherwise.
HoepmanTag parse_tag(std::string_view name);
std::vector<HoepmanTag> all_tags();

struct PatternEntry {
    Term id;
    int number = 0;
    std::string name;
    TagSet tags;
    bool global = false;

    friend bool operator==(const PatternEntry&, const PatternEntry&) = default;
};

struct ChainLink {
    Term element;
    SchemeLevel level;
    Strength strength;

    friend bool operator==(const ChainLink&, const ChainLink&) = default;
};

struct ValidationIssue {
    std::string code;
    std::string subject;
    std::string message;
};

/// Schema IRIs the engine knows about. Everything else comes from data.
namespace iri {
const Term& entails();
const Term& fully_inspired_by();
const Term& partially_inspired_by();
const Term& hoepman_tag();
const Term& catalog_number();
const Term& applies_globally();
const Term& provenance();
const Term& privacy_pattern();
const Term& rdf_type();
const Term& subclass_of();
const Term& rdfs_label();
const Term& rdfs_comment();
}  // namespace iri

/// IRI local name used for a pattern compiled from the catalog CSV,
/// e.g. (35, "Enable/Disable Function") -> "P35_Enable_Disable_Function".
std::string pattern_local_name(int number, std::string_view name);

/// Compiles catalog rows `catalog_number,name,tags,provenance` (header line
/// required, tags separated by ';') into pattern individuals.
Graph compile_pattern_csv(std::string_view csv);

/// Adds an rdf:type triple for every superclass reachable from an asserted
/// type. Returns the number of triples added.
std::size_t materialize_subclass_closure(Graph& graph);

/// Data directory holding kb/, corpus/, dfds/ and rules.json. Honors the
/// PARROT_DATA_DIR environment variable.
std::filesystem::path default_data_dir();

/// Parses every .ttl file and patterns.csv under `kb_dir`, closes the class
/// hierarchy and validates. Throws parrot::Error on any failure.
Graph load_directory(const std::filesystem::path& kb_dir);

/// load_directory(default_data_dir() / "kb").
Graph load_builtin();

std::vector<ValidationIssue> validate_kb(const Graph& graph);

bool has_type(const Graph& graph, const Term& node, const Term& cls);

/// Every class reachable from `cls` through rdfs:subClassOf, including `cls`.
std::set<Term> superclasses(const Graph& graph, const Term& cls);

/// Scheme level of an element by its (closed) types; nullopt if none applies.
std::optional<SchemeLevel> scheme_level(const Graph& graph, const Term& element);

bool is_pattern(const Graph& graph, const Term& node);

/// Throws UnknownEntity if `pattern` is not a privacy pattern.
TagSet tags_of(const Graph& graph, const Term& pattern);
std::vector<ChainLink> explanation_chain(const Graph& graph, const Term& pattern);
PatternEntry pattern_entry(const Graph& graph, const Term& pattern);

/// All patterns ordered by catalog number, then IRI.
std::vector<PatternEntry> pattern_catalog(const Graph& graph);
std::optional<PatternEntry> find_pattern(const Graph& graph, int number);

/// Patterns reachable from `source` by one entails triple, sorted by IRI.
std::vector<Term> entails_targets(const Graph& graph, const Term& source);

}  // namespace parrot::kb
