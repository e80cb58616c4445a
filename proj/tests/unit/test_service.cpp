#include <gtest/gtest.h>

#include <fstream>
#include <sstream>
#include <thread>

#include "httplib.h"
#include "json.hpp"

#include "parrot/http_server.hpp"
#include "parrot/knowledge_base.hpp"
#include "parrot/service.hpp"

using namespace parrot;
using json = nlohmann::json;
using service::Request;

namespace {

const std::filesystem::path kData = PARROT_TEST_DATA_DIR;
const std::filesystem::path kFixtures = PARROT_FIXTURE_DIR;

const service::Engine& engine() {
    static const service::Engine e = service::load_engine(kData / "kb", kData / "rules.json");
    return e;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

service::Response call(const std::string& method, const std::string& path, const std::string& body = {},
                       const std::string& type = "application/json") {
    return service::handle(engine(), Request{method, path, body, type, {}});
}

}  // namespace

TEST(Service, AnnotateHealthCare) {
    auto r = call("POST", "/annotate", slurp(kData / "dfds" / "health_care.json"));
    ASSERT_EQ(r.status, 200) << r.body;
    auto doc = json::parse(r.body);
    bool found = false;
    for (const auto& a : doc["annotations"])
        if (a["node_id"] == "cloud")
            for (const auto& e : a["entries"]) found |= e["pattern"]["number"] == 8;
    EXPECT_TRUE(found);
}

TEST(Service, AnnotateErrors) {
    auto r = call("POST", "/annotate", "{}");
    EXPECT_EQ(r.status, 400);
    EXPECT_EQ(json::parse(r.body)["code"], "schema_error");
    r = call("POST", "/annotate", R"({"name":"x","nodes":[{"id":"a","kind":"Gadget"}]})");
    EXPECT_EQ(json::parse(r.body)["detail"]["node"], "a");
    r = call("POST", "/annotate", "{\"name\":");
    EXPECT_EQ(r.status, 400);
    EXPECT_EQ(json::parse(r.body)["code"], "parse_error");
    r = call("POST", "/annotate", "{}", "text/plain");
    EXPECT_EQ(r.status, 400);
}

TEST(Service, AnnotateAllUnmatched) {
    auto r = call("POST", "/annotate", R"({"name":"x","nodes":[{"id":"a","kind":"Process"}]})");
    ASSERT_EQ(r.status, 200);
    auto doc = json::parse(r.body);
    EXPECT_TRUE(doc["annotations"].empty());
    EXPECT_EQ(doc["unmatched_nodes"], json::array({"a"}));
}

TEST(Service, Query) {
    json body = {{"query", slurp(kData / "corpus" / "queries" / "CQ1.rq")}};
    auto r = call("POST", "/query", body.dump());
    ASSERT_EQ(r.status, 200) << r.body;
    EXPECT_FALSE(json::parse(r.body)["rows"].empty());

    body["query"] = "SELECT ?x WHERE { ?x <http://example.org/p> ?y } GROUP BY ?x";
    r = call("POST", "/query", body.dump());
    EXPECT_EQ(r.status, 400);
    EXPECT_EQ(json::parse(r.body)["code"], "unsupported_feature");

    body["query"] = "SELECT ?x WHERE { ?x <http://example.org/p> ?y }";
    r = call("POST", "/query", body.dump());
    ASSERT_EQ(r.status, 200);
    EXPECT_EQ(json::parse(r.body)["rows"], json::array());

    EXPECT_EQ(call("POST", "/query", R"({"q":1})").status, 400);
}

TEST(Service, Patterns) {
    auto r = call("GET", "/patterns");
    ASSERT_EQ(r.status, 200);
    EXPECT_EQ(json::parse(r.body).size(), 74u);
    r = call("GET", "/patterns/2");
    ASSERT_EQ(r.status, 200);
    auto p = json::parse(r.body);
    EXPECT_EQ(p["name"], "Location Granularity");
    EXPECT_EQ(p["tags"], json::array({"Minimise"}));
    EXPECT_EQ(call("GET", "/patterns/999").status, 404);
    EXPECT_EQ(call("GET", "/patterns/abc").status, 404);
    EXPECT_EQ(call("GET", "/nowhere").status, 404);
}

TEST(Service, Lint) {
    auto r = call("POST", "/lint", slurp(kFixtures / "parrot_prefix.ttl"), "text/turtle");
    ASSERT_EQ(r.status, 200);
    int p19 = 0;
    for (const auto& f : json::parse(r.body)) p19 += f["pitfall"] == "P19";
    EXPECT_EQ(p19, 3);
    EXPECT_EQ(call("POST", "/lint", "", "text/turtle").status, 400);
    EXPECT_EQ(call("POST", "/lint", "@prefix broken", "text/turtle").status, 400);
}

TEST(Service, RequestsDoNotMutateState) {
    std::string body = slurp(kData / "dfds" / "smart_home.json");
    auto size = engine().kb.size();
    auto a = call("POST", "/annotate", body);
    call("POST", "/lint", slurp(kFixtures / "parrot_prefix.ttl"), "text/turtle");
    auto b = call("POST", "/annotate", body);
    EXPECT_EQ(a.body, b.body);
    EXPECT_EQ(engine().kb.size(), size);
}

TEST(HttpServer, ServesWithCors) {
    service::HttpServer server(engine(), {"127.0.0.1", 0, "http://ui.test"});
    int port = server.bind();
    std::thread t([&] { server.listen(); });
    httplib::Client client("127.0.0.1", port);
    std::string dfd = slurp(kData / "dfds" / "health_care.json");
    auto res = client.Post("/annotate", dfd, "application/json");
    ASSERT_TRUE(res);
    EXPECT_EQ(res->status, 200);
    EXPECT_EQ(res->body, service::annotate_json(engine(), dfd));
    EXPECT_EQ(res->get_header_value("Access-Control-Allow-Origin"), "http://ui.test");
    auto miss = client.Get("/patterns/999");
    ASSERT_TRUE(miss);
    EXPECT_EQ(miss->status, 404);
    auto pre = client.Options("/annotate");
    ASSERT_TRUE(pre);
    EXPECT_EQ(pre->status, 204);
    server.stop();
    t.join();
}
