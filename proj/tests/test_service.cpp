#include <filesystem>
#include <fstream>
#include <thread>

#include "doctest.h"
#include "httplib.h"
#include "irccs/service.hpp"
#include "irccs/trace_io.hpp"
#include "json.hpp"

using namespace irccs;
using json = nlohmann::json;

namespace {

const char* kRev = "((2,2),(3,2)) o [<#0, a, (+, b, R)>, <#1, ~a, _>] |> 0 | c";

json body(const Response& r) { return json::parse(r.body); }

std::string create(Service& svc, const json& req) {
  Response r = svc.handle("POST", "/sessions", req.dump());
  REQUIRE_MESSAGE(r.status == 201, r.body);
  return body(r)["id"];
}

std::string error_code(const Response& r) { return body(r)["error"]["code"]; }

// fake clock advanced by hand
struct Clock {
  std::chrono::steady_clock::time_point now{};
  ServiceOptions opts() {
    ServiceOptions o;
    o.clock = [this] { return now; };
    return o;
  }
};

}  // namespace

TEST_CASE("sessions start at the initial identification") {
  Service svc;
  Response r = svc.handle("POST", "/sessions", R"({"source": "a+b | ~a.c"})");
  REQUIRE(r.status == 201);
  json j = body(r);
  CHECK(j["state"] == "((0,2),(1,2)) o [{}, {}] |> a + b | ~a.c");
  CHECK(j["initial"] == true);
  CHECK(j["steps"] == 0);
  CHECK(j["config"]["policy"] == "a");
  std::string id = j["id"];
  CHECK(body(svc.handle("GET", "/sessions/" + id)) == j);

  std::string nil = create(svc, {{"source", "0"}});
  CHECK(body(svc.handle("GET", "/sessions/" + nil + "/moves"))["moves"].empty());
}

TEST_CASE("moves and concurrency of a+b | ~a.c") {
  Service svc;
  std::string id = create(svc, {{"source", "a+b | ~a.c"}});
  json m = body(svc.handle("GET", "/sessions/" + id + "/moves"));
  REQUIRE(m["moves"].size() == 4);
  std::vector<std::string> ids, labels;
  for (const auto& mv : m["moves"]) {
    CHECK(mv["dir"] == "fwd");
    ids.push_back(mv["id"]);
    labels.push_back(mv["label"]);
  }
  CHECK(ids == std::vector<std::string>{"#0", "#0", "#1", "#0(+)#1"});
  CHECK(labels == std::vector<std::string>{"a", "b", "~a", "tau"});
  json expected = json::array();
  for (int i = 0; i < 4; ++i) {
    json row = json::array();
    for (int k = 0; k < 4; ++k) row.push_back((i == 2 && k < 2) || (k == 2 && i < 2));
    expected.push_back(row);
  }
  CHECK(m["concurrent"] == expected);

  // forward a, then its inverse
  Response a = svc.handle("POST", "/sessions/" + id + "/moves/0", json{{"fingerprint", m["fingerprint"]}}.dump());
  REQUIRE(a.status == 200);
  CHECK(body(a)["seed"] == "((2,2),(1,2))");
  CHECK(body(a)["applied"]["label"] == "a");
  json back = body(svc.handle("GET", "/sessions/" + id + "/moves"));
  int undo = -1;
  for (const auto& mv : back["moves"])
    if (mv["dir"] == "bwd" && mv["id"] == "#0") undo = mv["index"];
  REQUIRE(undo >= 0);
  Response u = svc.handle("POST", "/sessions/" + id + "/moves/" + std::to_string(undo));
  CHECK(body(u)["state"] == "((0,2),(1,2)) o [{}, {}] |> a + b | ~a.c");
  CHECK(body(u)["memory_size"] < body(a)["memory_size"]);
  CHECK(body(u)["steps"] == 2);
}

TEST_CASE("the reversible example through the API") {
  Service svc;
  std::string id = create(svc, {{"state", kRev}});
  json m = body(svc.handle("GET", "/sessions/" + id + "/moves"));
  REQUIRE(m["moves"].size() == 3);
  CHECK(m["moves"][0]["dir"] == "fwd");
  CHECK(m["moves"][0]["target"]["state"] ==
        "((2,2),(5,2)) o [<#0, a, (+, b, R)>, <#3, c, _>.<#1, ~a, _>] |> 0 | 0");
  int t2 = m["moves"][1]["id"] == "#1" ? 1 : 2, t3 = 3 - t2;
  CHECK(m["moves"][t2]["target"]["state"] == "((2,2),(1,2)) o [<#0, a, (+, b, R)>, {}] |> 0 | ~a.c");
  CHECK(m["moves"][t3]["target"]["state"] == "((0,2),(3,2)) o [{}, <#1, ~a, _>] |> a + b | c");
  CHECK(m["concurrent"][t2][t3] == true);
  CHECK(m["concurrent"][0][t3] == true);
  CHECK(m["concurrent"][0][t2] == false);

  json o = body(svc.handle("GET", "/sessions/" + id + "/origin"));
  CHECK(o["state"] == "((0,2),(1,2)) o [{}, {}] |> a + b | ~a.c");
  CHECK(body(svc.handle("GET", "/sessions/" + id))["state"] == kRev);

  for (int k : {0, 1, 2}) {
    std::string s = create(svc, {{"state", kRev}});
    Response r = svc.handle("POST", "/sessions/" + s + "/moves/" + std::to_string(k));
    CHECK(body(r)["state"] == m["moves"][k]["target"]["state"]);
  }
}

TEST_CASE("move errors") {
  Service svc;
  std::string id = create(svc, {{"source", "a | b"}});
  std::string fp = body(svc.handle("GET", "/sessions/" + id + "/moves"))["fingerprint"];
  Response out = svc.handle("POST", "/sessions/" + id + "/moves/7");
  CHECK(out.status == 422);
  CHECK(error_code(out) == "index_out_of_range");
  CHECK(svc.handle("POST", "/sessions/" + id + "/moves/x").status == 400);
  CHECK(svc.handle("POST", "/sessions/" + id + "/moves/0", json{{"fingerprint", fp}}.dump()).status == 200);
  // the same fingerprint again: the list it indexed is gone
  Response stale = svc.handle("POST", "/sessions/" + id + "/moves/0", json{{"fingerprint", fp}}.dump());
  CHECK(stale.status == 409);
  CHECK(error_code(stale) == "stale_index");
}

TEST_CASE("request errors") {
  Service svc;
  Response parse = svc.handle("POST", "/sessions", R"({"source": "a.(b | "})");
  CHECK(parse.status == 422);
  CHECK(error_code(parse) == "parse_error");
  CHECK(body(parse)["error"]["detail"]["column"] == 8);
  CHECK(error_code(svc.handle("POST", "/sessions", R"({"source": "a", "state": "(0,1) o {} |> a"})")) ==
        "flag_conflict");
  CHECK(error_code(svc.handle("POST", "/sessions", R"({"source": "a", "policy": "c"})")) == "flag_conflict");
  CHECK(error_code(svc.handle("POST", "/sessions", R"({"state": "(0,1) o {} |> a", "normalize": true})")) ==
        "flag_conflict");
  CHECK(error_code(svc.handle("POST", "/sessions", R"({"source": "a", "persist": true})")) == "flag_conflict");
  CHECK(svc.handle("POST", "/sessions", "not json").status == 400);
  CHECK(svc.handle("POST", "/sessions", R"({"source": 3})").status == 400);
  CHECK(svc.handle("GET", "/sessions/nope").status == 404);
  CHECK(svc.handle("GET", "/elsewhere").status == 404);
  CHECK(svc.handle("PUT", "/sessions").status == 405);
  CHECK(error_code(svc.handle("POST", "/sessions", R"({"state": "(0,1) o {} |> a | b"})")) == "not_well_formed");
  CHECK(svc.handle("POST", "/sessions", R"({"trace": "init (0,1) o {} |> a\nfwd #4 a | (1,1) o <#4, a, _> |> 0\n"})")
            .status == 422);

  // replication needs one of the marking policies
  Response off = svc.handle("POST", "/sessions", R"({"source": "a.!b", "policy": "none"})");
  CHECK(off.status == 422);
  CHECK(error_code(off) == "flag_conflict");

  std::string stuck = create(svc, {{"state", "((1,2),(2,2)) o [<#0, a, _>, {}] |> c | b"}});
  Response o = svc.handle("GET", "/sessions/" + stuck + "/origin");
  CHECK(o.status == 409);
  CHECK(error_code(o) == "unreachable");
}

TEST_CASE("normalized sources") {
  Service svc;
  Response r = svc.handle("POST", "/sessions", R"({"source": "b | a.c + a.c", "normalize": true})");
  REQUIRE(r.status == 201);
  CHECK(body(r)["process"] == "a.c | b");
}

TEST_CASE("delete, expiry and capacity") {
  Clock clk;
  ServiceOptions o = clk.opts();
  o.ttl = std::chrono::seconds(10);
  o.max_sessions = 2;
  Service svc(o);
  std::string a = create(svc, {{"source", "a"}});
  std::string b = create(svc, {{"source", "b"}});
  Response full = svc.handle("POST", "/sessions", R"({"source": "c"})");
  CHECK(full.status == 503);
  CHECK(error_code(full) == "too_many_sessions");

  CHECK(svc.handle("DELETE", "/sessions/" + a).status == 204);
  CHECK(svc.handle("GET", "/sessions/" + a).status == 404);
  CHECK(svc.session_count() == 1);

  clk.now += std::chrono::seconds(6);
  CHECK(svc.handle("GET", "/sessions/" + b).status == 200);  // touching renews
  clk.now += std::chrono::seconds(6);
  CHECK(svc.evict_expired() == 0);
  clk.now += std::chrono::seconds(11);
  CHECK(svc.evict_expired() == 1);
  CHECK(svc.handle("GET", "/sessions/" + b).status == 404);
}

TEST_CASE("history replays and persists") {
  auto dir = std::filesystem::temp_directory_path() / "irccs_service_test";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  ServiceOptions o;
  o.persist_dir = dir.string();
  Service svc(o);
  std::string id = create(svc, {{"source", "a.(b | ~b) + c"}, {"persist", true}});
  for (int k = 0; k < 4; ++k) {
    json m = body(svc.handle("GET", "/sessions/" + id + "/moves"));
    if (m["moves"].empty()) break;
    REQUIRE(svc.handle("POST", "/sessions/" + id + "/moves/0").status == 200);
  }
  json now = body(svc.handle("GET", "/sessions/" + id));
  Response tr = svc.handle("GET", "/sessions/" + id + "/trace");
  CHECK(tr.content_type.find("text/plain") == 0);
  CHECK(to_string(read_trace(tr.body).target()) == now["state"]);

  std::ifstream f(dir / (id + ".trace"));
  std::string saved((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
  CHECK(saved == tr.body);
  std::string reload = create(svc, {{"trace", saved}});
  json again = body(svc.handle("GET", "/sessions/" + reload));
  CHECK(again["state"] == now["state"]);
  CHECK(again["steps"] == now["steps"]);
  std::filesystem::remove_all(dir);
}

TEST_CASE("concurrent clients") {
  Service svc;
  std::vector<std::string> ids;
  for (int k = 0; k < 4; ++k) ids.push_back(create(svc, {{"source", "a.b | ~a.c | (b + c)"}}));
  std::vector<std::thread> workers;
  for (int w = 0; w < 8; ++w) {
    workers.emplace_back([&, w] {
      std::mt19937 rng(w);
      for (int k = 0; k < 60; ++k) {
        const std::string& id = ids[std::size_t(w) % ids.size()];
        json m = json::parse(svc.handle("GET", "/sessions/" + id + "/moves").body);
        if (m["moves"].empty()) continue;
        std::size_t pick = rng() % m["moves"].size();
        // other workers may have moved the session meanwhile
        svc.handle("POST", "/sessions/" + id + "/moves/" + std::to_string(pick),
                   json{{"fingerprint", m["fingerprint"]}}.dump());
      }
    });
  }
  for (auto& t : workers) t.join();
  for (const auto& id : ids) {
    json s = body(svc.handle("GET", "/sessions/" + id));
    Trace d = read_trace(svc.handle("GET", "/sessions/" + id + "/trace").body);
    CHECK(to_string(d.target()) == s["state"]);
    CHECK(d.steps.size() == s["steps"]);
  }
}

TEST_CASE("over HTTP") {
  Service svc;
  HttpServer http(svc);
  int port = http.bind("127.0.0.1", 0);
  REQUIRE(port > 0);
  std::thread loop([&] { http.run(); });
  httplib::Client cli("127.0.0.1", port);
  auto created = cli.Post("/sessions", R"({"source": "a+b | ~a.c"})", "application/json");
  REQUIRE(created);
  CHECK(created->status == 201);
  std::string id = json::parse(created->body)["id"];
  auto moves = cli.Get("/sessions/" + id + "/moves");
  REQUIRE(moves);
  CHECK(json::parse(moves->body)["moves"].size() == 4);
  auto applied = cli.Post("/sessions/" + id + "/moves/2", "", "application/json");
  REQUIRE(applied);
  CHECK(json::parse(applied->body)["seed"] == "((0,2),(3,2))");
  auto gone = cli.Delete("/sessions/" + id);
  REQUIRE(gone);
  CHECK(gone->status == 204);
  CHECK(cli.Get("/sessions/" + id)->status == 404);
  http.stop();
  loop.join();
}
