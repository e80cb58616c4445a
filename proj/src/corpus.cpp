#include "parrot/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

#include "parrot/errors.hpp"

namespace parrot::cq {

using json = nlohmann::json;

namespace {

const char* const kTypeNames[] = {"DataCollection", "Device", "Process", "Storage", "Dignity"};
const char* const kStatusNames[] = {"Valid", "Duplicated", "Modified", "Discarded"};
const char* const kAvailabilityNames[] = {"answered", "missing", "not-available", "unclassified"};

template <typename E, std::size_t N>
E lookup(const char* const (&names)[N], const std::string& value, const char* what, const std::string& id) {
    for (std::size_t i = 0; i < N; ++i)
        if (value == names[i]) return static_cast<E>(i);
    throw SchemaError(std::string("unknown ") + what + " '" + value + "'", {{"record", id}, {"field", what}});
}

std::string get_string(const json& obj, const char* field, const std::string& id, bool required = true) {
    auto it = obj.find(field);
    if (it == obj.end() || it->is_null()) {
        if (required) throw SchemaError(std::string("missing field '") + field + "'", {{"record", id}, {"field", field}});
        return {};
    }
    if (!it->is_string())
        throw SchemaError(std::string("field '") + field + "' must be a string", {{"record", id}, {"field", field}});
    return it->get<std::string>();
}

}  // namespace

std::string to_string(CqType type) { return kTypeNames[static_cast<int>(type)]; }
std::string to_string(Status status) { return kStatusNames[static_cast<int>(status)]; }
std::string to_string(Availability availability) { return kAvailabilityNames[static_cast<int>(availability)]; }

const std::vector<std::string>& use_cases() {
    static const std::vector<std::string> names = {"health-care",     "drone-delivery", "fitness-watch",
                                                   "park-monitoring", "rtls",           "smart-home"};
    return names;
}

const std::vector<std::string>& sub_types(CqType type) {
    static const std::vector<std::string> table[] = {
        {"Location", "Personal Information", "Routine", "Photo"},
        {"Mobile Phone", "Camera", "Microphone", "Reading Sensor"},
        {"Share", "Access", "Third-Party", "Route", "Profile"},
        {"Cloud", "Local"},
        {"Advantage", "Agreement", "Notify", "Control"},
    };
    return table[static_cast<int>(type)];
}

std::vector<CqType> all_types() {
    return {CqType::DataCollection, CqType::Device, CqType::Process, CqType::Storage, CqType::Dignity};
}

std::vector<CqRecord> parse_corpus(std::string_view jsonl, const std::filesystem::path& base_dir) {
    std::vector<CqRecord> out;
    std::set<std::string> ids;
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start < jsonl.size()) {
        std::size_t end = jsonl.find('\n', start);
        if (end == std::string_view::npos) end = jsonl.size();
        std::string_view line = jsonl.substr(start, end - start);
        start = end + 1;
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;

        json obj;
        try {
            obj = json::parse(line);
        } catch (const json::parse_error& e) {
            throw ParseError("malformed corpus record", line_no, e.byte);
        }
        if (!obj.is_object()) throw ParseError("corpus record must be a JSON object", line_no, 1);

        CqRecord r;
        r.id = get_string(obj, "id", "line " + std::to_string(line_no));
        r.text = get_string(obj, "text", r.id);
        r.use_case = get_string(obj, "use_case", r.id);
        const auto& ucs = use_cases();
        if (std::find(ucs.begin(), ucs.end(), r.use_case) == ucs.end())
            throw SchemaError("unknown use case '" + r.use_case + "'", {{"record", r.id}, {"field", "use_case"}});
        r.status = lookup<Status>(kStatusNames, get_string(obj, "status", r.id), "status", r.id);
        r.provenance = get_string(obj, "provenance", r.id, false);
        if (!ids.insert(r.id).second) throw SchemaError("duplicate record id '" + r.id + "'", {{"record", r.id}});

        if (r.status == Status::Discarded) {
            r.discard_reason = get_string(obj, "discard_reason", r.id);
            out.push_back(std::move(r));
            continue;
        }

        r.type = lookup<CqType>(kTypeNames, get_string(obj, "type", r.id), "type", r.id);
        r.sub_type = get_string(obj, "sub_type", r.id);
        const auto& legal = sub_types(r.type);
        if (std::find(legal.begin(), legal.end(), r.sub_type) == legal.end())
            throw SchemaError("sub-type '" + r.sub_type + "' is not part of type " + to_string(r.type),
                              {{"record", r.id}, {"field", "sub_type"}});
        r.availability =
            lookup<Availability>(kAvailabilityNames, get_string(obj, "availability", r.id), "availability", r.id);
        if (auto it = obj.find("expected_tags"); it != obj.end()) {
            if (!it->is_array()) throw SchemaError("expected_tags must be an array", {{"record", r.id}});
            for (const auto& t : *it) {
                if (!t.is_string()) throw SchemaError("tag must be a string", {{"record", r.id}});
                try {
                    r.expected_tags.insert(kb::parse_tag(t.get<std::string>()));
                } catch (const SchemaError& e) {
                    throw SchemaError(e.what(), {{"record", r.id}, {"field", "expected_tags"}});
                }
            }
        }
        std::string qf = get_string(obj, "query_file", r.id, false);
        bool answered = r.availability == Availability::Answered;
        if (answered && qf.empty())
            throw SchemaError("answered record needs a query_file", {{"record", r.id}, {"field", "query_file"}});
        if (!answered && !qf.empty())
            throw SchemaError("only answered records carry a query_file", {{"record", r.id}, {"field", "query_file"}});
        if (!qf.empty()) {
            std::filesystem::path p(qf);
            r.query_file = p.is_absolute() || base_dir.empty() ? p : base_dir / p;
        }
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<CqRecord> load_corpus(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("internal", "cannot read corpus " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_corpus(buf.str(), path.parent_path());
}

std::string read_query(const CqRecord& record) {
    if (!record.query_file) throw UnknownEntity(record.id + " has no query file");
    std::ifstream in(*record.query_file, std::ios::binary);
    if (!in) throw Error("internal", "cannot read query " + record.query_file->string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace parrot::cq
