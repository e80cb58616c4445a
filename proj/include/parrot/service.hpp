#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "parrot/dfd.hpp"
#include "parrot/errors.hpp"
#include "parrot/graph.hpp"
#include "parrot/linter.hpp"

namespace parrot::service {

/// Immutable state shared by every request.
struct Engine {
    rdf::Graph kb;
    std::vector<dfd::MappingRule> rules;
    std::string rules_text;
};

/// Loads the KB directory and rule file; empty paths fall back to the
/// default data directory.
Engine load_engine(const std::filesystem::path& kb_dir = {}, const std::filesystem::path& rules_path = {});

// JSON bodies shared by the CLI and the HTTP handlers. All throw
// parrot::Error subclasses on bad input.

/// Report JSON for a DFD document.
std::string annotate_json(const Engine& engine, std::string_view dfd_text);
/// `{"vars": [...], "rows": [{"var": {"type": .., "value": ..}}]}`
std::string query_json(const Engine& engine, std::string_view query_text);
std::string patterns_json(const Engine& engine);
/// Throws UnknownEntity when the catalog has no such number.
std::string pattern_json(const Engine& engine, int number);
/// Parses Turtle and lints it. Empty input is a parse error.
std::string lint_json(std::string_view turtle, const lint::LintConfig& config = {});

/// `{"code": .., "message": .., "detail": {..}}`
std::string error_json(const Error& error);
int http_status(const Error& error);

struct Request {
    std::string method;
    std::string path;
    std::string body;
    std::string content_type;
    std::map<std::string, std::string> params;
};

struct Response {
    int status = 200;
    std::string body;
    std::string content_type = "application/json";
};

/// Routes one request. Never throws; errors become JSON error bodies.
Response handle(const Engine& engine, const Request& request);

}  // namespace parrot::service
