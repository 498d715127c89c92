#include "catch_amalgamated.hpp"
#include "httplib.h"
#include "leap/service.hpp"
#include "support/fixtures.hpp"

using namespace leap;
using nlohmann::json;

namespace {

Response post(const Service& s, const std::string& path, const json& body) {
  return s.handle({"POST", path, {}, body.dump()});
}

json parsed(const Response& r) { return json::parse(r.body); }

}  // namespace

TEST_CASE("validate endpoint", "[service]") {
  Service s;
  auto ok = post(s, "/api/validate", {{"sample", sample_to_json(fixtures::ab_sample())}});
  CHECK(ok.status == 200);
  CHECK(parsed(ok)["violations"] == json::array());

  auto overlap = fixtures::make_sample({"a", "b"}, {"(a, true)"}, {"(a, x_b<=1)"});
  auto bad = post(s, "/api/validate", sample_to_json(overlap));
  REQUIRE(bad.status == 200);
  auto v = parsed(bad)["violations"];
  REQUIRE(v.size() == 1);
  CHECK(v[0]["kind"] == "overlap");
  CHECK(v[0]["positive"] == 0);
  CHECK(v[0]["negative"] == 0);
}

TEST_CASE("learn endpoint", "[service]") {
  Service s;
  auto r = post(s, "/api/learn", {{"sample", sample_to_json(fixtures::ab_sample())}});
  REQUIRE(r.status == 200);
  CHECK(r.content_type == "application/json");
  auto j = parsed(r);
  auto learned = era_from_json(j["era"]);
  CHECK(learned.num_states() == 3);
  CHECK(equivalent(learned, fixtures::ab_delay()).equivalent);
  CHECK(j["trace"].size() == 10);
  CHECK(j["stats"]["merges"] == 2);
  CHECK(j["warnings"] == json::array());

  auto regions = post(s, "/api/learn",
                      {{"sample", sample_to_json(fixtures::ab_sample())}, {"options", {{"regions", true}}}});
  REQUIRE(regions.status == 200);
  CHECK(parsed(regions)["stats"]["sampleWords"].get<int>() > 7);

  auto inconsistent = fixtures::make_sample({"a", "b"}, {"(a, true)"}, {"(a, x_b<=1)"});
  auto bad = post(s, "/api/learn", {{"sample", sample_to_json(inconsistent)}});
  CHECK(bad.status == 422);
  CHECK(parsed(bad)["violations"].size() == 1);
}

TEST_CASE("check endpoint", "[service]") {
  Service s;
  const json ab_delay = era_to_json(fixtures::ab_delay());
  auto timed = post(s, "/api/check", {{"era", ab_delay}, {"word", "(a,2.3)(b,3.3)(a,3.4)"}, {"mode", "timed"}});
  REQUIRE(timed.status == 200);
  CHECK(parsed(timed)["verdict"] == "accept");
  auto late = post(s, "/api/check", {{"era", ab_delay}, {"word", "(a,2.3)(b,3.4)"}, {"mode", "timed"}});
  CHECK(parsed(late)["verdict"] == "reject");

  const json press_loose = era_to_json(fixtures::press_loose());
  auto sym = post(s, "/api/check", {{"era", press_loose}, {"word", fixtures::third_press_text()}});
  REQUIRE(sym.status == 200);
  auto j = parsed(sym);
  CHECK(j["verdict"] == "nonempty");
  CHECK(j["backend"] == "path");
  auto tw = parse_timed_word(j["witness"].get<std::string>(), fixtures::press_loose().alphabet());
  CHECK(accepts_timed(fixtures::press_loose(), tw));

  auto empty = post(s, "/api/check", {{"era", era_to_json(fixtures::press_alarm())}, {"word", fixtures::third_press_text()}});
  CHECK(parsed(empty)["verdict"] == "empty");
  CHECK(parsed(empty)["witness"].is_null());
}

TEST_CASE("expand endpoint", "[service]") {
  Service s;
  auto r = post(s, "/api/expand", {{"word", "(a, x_a<=1)"}, {"k", 1}, {"alphabet", {"a"}}});
  REQUIRE(r.status == 200);
  CHECK(parsed(r)["regionWords"] == json{"(a, x_a=0)", "(a, 0<x_a<1)", "(a, x_a=1)"});
}

TEST_CASE("dot endpoint", "[service]") {
  Service s;
  const std::string era = era_to_json(fixtures::ab_delay()).dump();
  auto r = s.handle({"GET", "/api/dot", {{"era", era}}, ""});
  REQUIRE(r.status == 200);
  CHECK(r.content_type == "text/vnd.graphviz");
  CHECK(r.body == to_dot(fixtures::ab_delay()));
  CHECK(s.handle({"GET", "/api/dot", {}, ""}).status == 400);
  CHECK(s.handle({"GET", "/api/dot", {{"era", "{"}}, ""}).status == 400);
}

TEST_CASE("error statuses", "[service]") {
  Service s;
  CHECK(s.handle({"POST", "/api/learn", {}, "{not json"}).status == 400);
  CHECK(post(s, "/api/check", {{"word", "eps"}}).status == 400);
  auto bad_guard = post(s, "/api/check", {{"era", era_to_json(fixtures::ab_delay())}, {"word", "(a, x_a <= &&)"}});
  CHECK(bad_guard.status == 400);
  CHECK(parsed(bad_guard)["error"].get<std::string>().find("position") != std::string::npos);
  CHECK(post(s, "/api/check", {{"era", era_to_json(fixtures::ab_delay())}, {"word", "eps"}, {"mode", "x"}}).status == 400);
  CHECK(post(s, "/api/expand", {{"word", "eps"}, {"k", -1}, {"alphabet", {"a"}}}).status == 400);
  CHECK(post(s, "/api/learn", {{"sample", sample_to_json(fixtures::ab_sample())}, {"options", {{"budget", 0}}}}).status ==
        400);
  CHECK(s.handle({"GET", "/api/learn", {}, ""}).status == 405);
  CHECK(s.handle({"POST", "/nothing", {}, "{}"}).status == 404);
  CHECK(post(s, "/api/nothing", json::object()).status == 404);

  ServiceConfig tight;
  tight.intersect.backend = Backend::RegionOracle;
  tight.intersect.budget = 1;
  Service budget(tight);
  auto over = post(budget, "/api/check", {{"era", era_to_json(fixtures::ab_delay())}, {"word", "(a, true); (b, true)"}});
  CHECK(over.status == 503);

  ServiceConfig broken;
  broken.intersect.backend = Backend::Smt;
  broken.intersect.smt_command = "/nonexistent/solver";
  auto unavailable = post(Service(broken), "/api/check", {{"era", era_to_json(fixtures::ab_delay())}, {"word", "(a, true)"}});
  CHECK(unavailable.status == 503);
}

TEST_CASE("responses depend only on the request", "[service]") {
  Service s;
  const json body{{"sample", sample_to_json(fixtures::press_sample(true))}};
  auto first = post(s, "/api/learn", body);
  post(s, "/api/learn", {{"sample", sample_to_json(fixtures::ab_sample())}});
  auto again = post(s, "/api/learn", body);
  auto j1 = parsed(first);
  auto j2 = parsed(again);
  CHECK(j1["era"] == j2["era"]);
  CHECK(j1["trace"] == j2["trace"]);
}

TEST_CASE("HTTP server", "[service]") {
  HttpServer server(Service{}, "127.0.0.1", 0);
  REQUIRE(server.port() > 0);
  httplib::Client client("127.0.0.1", server.port());
  const std::string body = json{{"sample", sample_to_json(fixtures::ab_sample())}}.dump();
  auto r = client.Post("/api/learn", body, "application/json");
  REQUIRE(r);
  CHECK(r->status == 200);
  // Only the timing in stats may differ between two runs.
  auto remote = json::parse(r->body);
  auto local = parsed(post(Service{}, "/api/learn", json::parse(body)));
  CHECK(remote["era"] == local["era"]);
  CHECK(remote["trace"] == local["trace"]);

  auto dot = client.Get("/api/dot?era=" + httplib::detail::encode_query_param(era_to_json(fixtures::ab_delay()).dump()));
  REQUIRE(dot);
  CHECK(dot->status == 200);
  CHECK(dot->get_header_value("Content-Type") == "text/vnd.graphviz");

  auto bad = client.Post("/api/learn", "{", "application/json");
  REQUIRE(bad);
  CHECK(bad->status == 400);
  server.stop();
}
