#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "parrot/cq_harness.hpp"
#include "parrot/http_server.hpp"
#include "parrot/knowledge_base.hpp"
#include "parrot/linter.hpp"
#include "parrot/recommender.hpp"
#include "parrot/service.hpp"
#include "parrot/turtle.hpp"

using namespace parrot;

namespace {

std::string read_input(const std::string& path) {
    std::ostringstream buf;
    if (path == "-") {
        buf << std::cin.rdbuf();
        return buf.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("internal", "cannot read " + path);
    buf << in.rdbuf();
    return buf.str();
}

std::string env_or(const char* name, std::string fallback) {
    const char* v = std::getenv(name);
    return v && *v ? v : fallback;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Privacy-by-design advisor for IoT data-flow diagrams"};
    app.require_subcommand(1);

    std::string kb_dir = env_or("PARROT_KB", "");
    std::string rules_path = env_or("PARROT_RULES", "");
    app.add_option("--kb", kb_dir, "Knowledge-base directory (default: bundled data, env PARROT_KB)");
    app.add_option("--rules", rules_path, "Mapping rule file (env PARROT_RULES)");

    std::string input;
    std::string format;

    auto* annotate = app.add_subcommand("annotate", "Annotate a DFD with privacy patterns");
    annotate->add_option("dfd", input, "DFD JSON file, or - for stdin")->required();
    annotate->add_option("--format", format, "json or markdown")->check(CLI::IsMember({"json", "markdown"}));

    auto* query = app.add_subcommand("query", "Run a SELECT query against the knowledge base");
    query->add_option("file", input, "Query file, or - for stdin")->required();

    std::string fail_on = "important";
    bool include_foreign = false;
    bool allow_known = false;
    auto* lint_cmd = app.add_subcommand("lint", "Scan a Turtle ontology for pitfalls");
    lint_cmd->add_option("file", input, "Turtle file, or - for stdin")->required();
    lint_cmd->add_option("--format", format, "json or text")->check(CLI::IsMember({"json", "text"}));
    lint_cmd->add_option("--fail-on", fail_on, "Exit 1 if any finding is at or above this severity")
        ->check(CLI::IsMember({"critical", "important", "minor"}));
    lint_cmd->add_flag("--include-foreign", include_foreign, "Also report elements outside the parrot namespace");
    lint_cmd->add_flag("--allow-known", allow_known, "Accept the scheme names that join two authors with 'and'");

    auto* cq_cmd = app.add_subcommand("cq", "Competency-question harness");
    cq_cmd->require_subcommand(1);
    std::string corpus_path;
    auto* cq_run = cq_cmd->add_subcommand("run", "Replay the corpus and print statistics");
    cq_run->add_option("--corpus", corpus_path, "Corpus JSON-lines file");
    cq_run->add_option("--format", format, "json or markdown")->check(CLI::IsMember({"json", "markdown"}));

    service::ServerOptions server_opts;
    server_opts.host = env_or("PARROT_HOST", server_opts.host);
    server_opts.port = std::atoi(env_or("PARROT_PORT", std::to_string(server_opts.port)).c_str());
    server_opts.cors_origin = env_or("PARROT_CORS_ORIGIN", server_opts.cors_origin);
    auto* serve = app.add_subcommand("serve", "Start the HTTP API");
    serve->add_option("--host", server_opts.host, "Listen address (env PARROT_HOST)");
    serve->add_option("--port", server_opts.port, "Listen port, 0 for any (env PARROT_PORT)");
    serve->add_option("--cors-origin", server_opts.cors_origin, "Allowed browser origin (env PARROT_CORS_ORIGIN)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*lint_cmd) {
            lint::LintConfig cfg = allow_known ? lint::shipped_config() : lint::LintConfig{};
            cfg.include_foreign = include_foreign;
            auto text = read_input(input);
            if (text.find_first_not_of(" \t\r\n") == std::string::npos)
                throw ParseError("empty Turtle document", 1, 1);
            auto findings = lint::lint(rdf::parse_turtle(text), cfg);
            // Same body as POST /lint.
            std::cout << (format == "text" ? lint::findings_to_text(findings) : lint::findings_to_json(findings));
            return lint::any_at_or_above(findings, lint::parse_severity(fail_on)) ? 1 : 0;
        }

        auto engine = service::load_engine(kb_dir, rules_path);

        if (*annotate) {
            auto text = read_input(input);
            if (format == "markdown") {
                auto report = rec::annotate(dfd::parse_dfd(text), engine.kb, engine.rules);
                std::cout << rec::render_report(report, "markdown");
            } else {
                std::cout << service::annotate_json(engine, text);
            }
            return 0;
        }
        if (*query) {
            std::cout << service::query_json(engine, read_input(input));
            return 0;
        }
        if (*cq_run) {
            auto path = corpus_path.empty() ? kb::default_data_dir() / "corpus" / "corpus.jsonl"
                                            : std::filesystem::path(corpus_path);
            auto run = cq::run_corpus(cq::load_corpus(path), engine.kb);
            std::cout << (format == "json" ? cq::stats_to_json(run) : cq::stats_to_markdown(run));
            return run.regressions().empty() && run.tag_mismatches().empty() ? 0 : 1;
        }
        if (*serve) {
            service::HttpServer server(engine, server_opts);
            int port = server.bind();
            std::cerr << "listening on http://" << server_opts.host << ":" << port << "\n";
            server.listen();
            return 0;
        }
    } catch (const Error& e) {
        std::cerr << service::error_json(e);
        return 2;
    } catch (const std::exception& e) {
        std::cerr << service::error_json(Error("internal", e.what()));
        return 2;
    }
    return 0;
}
