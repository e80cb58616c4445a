#include "parrot/cq_harness.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "json.hpp"

#include "parrot/errors.hpp"

namespace parrot::cq {

using json = nlohmann::ordered_json;

namespace {

Availability replay_kind(rec::CqOutcome::Kind kind) {
    switch (kind) {
        case rec::CqOutcome::Kind::Answered: return Availability::Answered;
        case rec::CqOutcome::Kind::Missing: return Availability::Missing;
        case rec::CqOutcome::Kind::NotAvailable: return Availability::NotAvailable;
        case rec::CqOutcome::Kind::Unclassified: return Availability::Unclassified;
    }
    return Availability::Unclassified;
}

std::vector<Availability> all_availability() {
    return {Availability::Answered, Availability::Missing, Availability::NotAvailable, Availability::Unclassified};
}

std::string percent(int part, int whole) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.1f%%", whole ? 100.0 * part / whole : 0.0);
    return buf;
}

}  // namespace

CorpusStats compute_stats(const std::vector<CqRecord>& records) {
    CorpusStats s;
    for (const auto& uc : use_cases()) s.per_use_case[uc] = 0;
    for (auto t : all_types()) {
        s.per_type[t] = 0;
        for (const auto& st : sub_types(t)) s.per_sub_type[{t, st}] = 0;
    }
    for (auto t : kb::all_tags()) s.per_tag[t] = 0;
    for (auto a : all_availability()) s.per_availability[a] = 0;
    for (const auto& r : records) {
        if (!r.valid_family()) continue;
        ++s.total;
        ++s.per_use_case[r.use_case];
        ++s.per_type[r.type];
        ++s.per_sub_type[{r.type, r.sub_type}];
        for (auto t : r.expected_tags) ++s.per_tag[t];
        ++s.per_availability[r.availability];
    }
    return s;
}

kb::TagSet answer_tags(const query::BindingSet& bindings, const rdf::Graph& graph) {
    kb::TagSet out;
    std::set<rdf::Term> seen;
    for (const auto& row : bindings.rows)
        for (const auto& t : row)
            if (seen.insert(t).second && kb::is_pattern(graph, t)) {
                auto tags = kb::tags_of(graph, t);
                out.insert(tags.begin(), tags.end());
            }
    return out;
}

TagDiff diff_tags(const CqRecord& record, const query::BindingSet& bindings, const rdf::Graph& graph) {
    auto got = answer_tags(bindings, graph);
    TagDiff d;
    std::set_difference(record.expected_tags.begin(), record.expected_tags.end(), got.begin(), got.end(),
                        std::inserter(d.missing, d.missing.end()));
    std::set_difference(got.begin(), got.end(), record.expected_tags.begin(), record.expected_tags.end(),
                        std::inserter(d.unexpected, d.unexpected.end()));
    return d;
}

std::vector<std::string> CorpusRun::regressions() const {
    std::vector<std::string> out;
    for (const auto& r : results)
        if (r.regression) out.push_back(r.id);
    return out;
}

std::vector<std::string> CorpusRun::tag_mismatches() const {
    std::vector<std::string> out;
    for (const auto& r : results)
        if (!r.tags.empty()) out.push_back(r.id);
    return out;
}

CorpusRun run_corpus(const std::vector<CqRecord>& records, const rdf::Graph& graph) {
    CorpusRun run;
    run.stats = compute_stats(records);
    for (auto a : all_availability()) run.replay[a] = 0;
    for (const auto& r : records) {
        if (!r.valid_family()) continue;
        RecordResult res;
        res.id = r.id;
        if (r.query_file) {
            try {
                auto q = query::parse_query(read_query(r));
                res.outcome = rec::answer_cq(q, graph, r);
                if (res.outcome.kind == rec::CqOutcome::Kind::Answered)
                    res.tags = diff_tags(r, res.outcome.bindings, graph);
            } catch (const Error& e) {
                res.error = e.code() + ": " + e.what();
                res.outcome.kind = rec::CqOutcome::Kind::Missing;
            }
            res.regression = res.outcome.kind != rec::CqOutcome::Kind::Answered;
        } else {
            switch (r.availability) {
                case Availability::NotAvailable: res.outcome.kind = rec::CqOutcome::Kind::NotAvailable; break;
                case Availability::Unclassified: res.outcome.kind = rec::CqOutcome::Kind::Unclassified; break;
                default: res.outcome.kind = rec::CqOutcome::Kind::Missing; break;
            }
        }
        ++run.replay[replay_kind(res.outcome.kind)];
        run.results.push_back(std::move(res));
    }
    return run;
}

std::string stats_to_json(const CorpusRun& run) {
    const auto& s = run.stats;
    json doc;
    doc["total"] = s.total;
    doc["use_cases"] = json::object();
    for (const auto& [k, v] : s.per_use_case) doc["use_cases"][k] = v;
    doc["types"] = json::object();
    for (auto t : all_types()) {
        json subs = json::object();
        for (const auto& st : sub_types(t)) subs[st] = s.per_sub_type.at({t, st});
        doc["types"][to_string(t)] = {{"total", s.per_type.at(t)}, {"sub_types", subs}};
    }
    doc["tags"] = json::object();
    for (const auto& [k, v] : s.per_tag) doc["tags"][kb::to_string(k)] = v;
    doc["availability"] = json::object();
    for (const auto& [k, v] : s.per_availability) doc["availability"][to_string(k)] = v;
    doc["replay"] = json::object();
    for (const auto& [k, v] : run.replay) doc["replay"][to_string(k)] = v;
    doc["answered_fraction"] = {{"answered", run.replay.at(Availability::Answered)}, {"total", s.total}};
    doc["regressions"] = run.regressions();
    doc["tag_mismatches"] = run.tag_mismatches();
    json errors = json::object();
    for (const auto& r : run.results)
        if (!r.error.empty()) errors[r.id] = r.error;
    doc["errors"] = errors;
    return doc.dump(2) + "\n";
}

std::string stats_to_markdown(const CorpusRun& run) {
    const auto& s = run.stats;
    std::ostringstream out;
    out << "## Use cases\n\n| Use case | CQs |\n|---|---|\n";
    for (const auto& uc : use_cases()) out << "| " << uc << " | " << s.per_use_case.at(uc) << " |\n";
    out << "| Total | " << s.total << " |\n";
    out << "\n## Types and sub-types\n\n| Type | Sub-type | CQs |\n|---|---|---|\n";
    for (auto t : all_types()) {
        for (const auto& st : sub_types(t)) out << "| " << to_string(t) << " | " << st << " | " << s.per_sub_type.at({t, st}) << " |\n";
        out << "| " << to_string(t) << " | total | " << s.per_type.at(t) << " |\n";
    }
    out << "\n## Strategy tags\n\n| Tag | CQs |\n|---|---|\n";
    for (const auto& [k, v] : s.per_tag) out << "| " << kb::to_string(k) << " | " << v << " |\n";
    int answered = run.replay.at(Availability::Answered);
    out << "\n## Replay\n\n| Outcome | CQs | Share |\n|---|---|---|\n";
    for (const auto& [k, v] : run.replay) out << "| " << to_string(k) << " | " << v << " | " << percent(v, s.total) << " |\n";
    out << "\nAnswered " << answered << "/" << s.total << " (" << percent(answered, s.total) << ").\n";
    auto reg = run.regressions();
    if (!reg.empty()) {
        out << "\nRegressions:";
        for (const auto& id : reg) out << " " << id;
        out << "\n";
    }
    auto mism = run.tag_mismatches();
    if (!mism.empty()) {
        out << "\nTag mismatches:";
        for (const auto& id : mism) out << " " << id;
        out << "\n";
    }
    return out.str();
}

}  // namespace parrot::cq
