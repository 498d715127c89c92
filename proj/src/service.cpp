#include "leap/service.hpp"

#include <thread>

#include "httplib.h"
#include "leap/errors.hpp"
#include "leap/words.hpp"

namespace leap {

using nlohmann::json;

namespace {

Response json_response(int status, const json& j) { return {status, render_json(j), "application/json"}; }

Response error_response(int status, const std::string& message, json extra = json::object()) {
  extra["error"] = message;
  return json_response(status, extra);
}

const json& member(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field '") + key + "'", 0);
  return j.at(key);
}

std::string text_member(const json& j, const char* key) {
  const json& v = member(j, key);
  if (!v.is_string()) throw ParseError(std::string("field '") + key + "' must be a string", 0);
  return v.get<std::string>();
}

// The sample may be posted bare or under "sample".
const json& sample_member(const json& body) {
  return body.is_object() && body.contains("sample") ? body.at("sample") : body;
}

std::string kind_name(SampleViolation::Kind k) {
  switch (k) {
    case SampleViolation::Kind::ConstantTooLarge: return "constantTooLarge";
    case SampleViolation::Kind::InconsistentNegative: return "inconsistentNegative";
    case SampleViolation::Kind::Overlap: return "overlap";
  }
  return "unknown";
}

}  // namespace

std::string render_json(const json& j) { return j.dump(2) + "\n"; }

json violation_to_json(const SampleViolation& v) {
  json j{{"kind", kind_name(v.kind)}, {"message", v.message}};
  if (v.kind == SampleViolation::Kind::Overlap) {
    j["positive"] = v.positive_index;
    j["negative"] = v.negative_index;
  } else if (v.kind == SampleViolation::Kind::InconsistentNegative) {
    j["negative"] = v.negative_index;
  } else if (v.in_positive) {
    j["positive"] = v.positive_index;
  } else {
    j["negative"] = v.negative_index;
  }
  return j;
}

json learn_result_to_json(const LearnResult& r, const Alphabet& alphabet) {
  return {{"era", era_to_json(r.era)},
          {"trace", trace_to_json(r.trace, alphabet)},
          {"stats", stats_to_json(r.stats)},
          {"warnings", r.warnings}};
}

LearnOptions learn_options(const json& options, const ServiceConfig& defaults) {
  LearnOptions o;
  o.intersect = defaults.intersect;
  o.region_mode = defaults.region_mode;
  if (options.is_null()) return o;
  if (!options.is_object()) throw ParseError("options must be an object", 0);
  if (options.contains("backend")) o.intersect.backend = parse_backend(text_member(options, "backend"));
  if (options.contains("regions")) {
    if (!options.at("regions").is_boolean()) throw ParseError("'regions' must be a boolean", 0);
    o.region_mode = options.at("regions").get<bool>();
  }
  if (options.contains("budget")) {
    const json& b = options.at("budget");
    if (!b.is_number_unsigned() || b.get<std::size_t>() == 0) throw ParseError("'budget' must be a positive integer", 0);
    o.intersect.budget = b.get<std::size_t>();
  }
  return o;
}

Response Service::handle(const Request& request) const {
  try {
    if (request.method == "GET" && request.path == "/api/dot") return dot(request);
    if (request.method != "POST") return error_response(request.path.starts_with("/api/") ? 405 : 404, "not found");
    json body;
    try {
      body = json::parse(request.body);
    } catch (const json::parse_error& e) {
      return error_response(400, std::string("malformed JSON: ") + e.what());
    }
    if (request.path == "/api/validate") return validate(body);
    if (request.path == "/api/learn") return learn(body);
    if (request.path == "/api/check") return check(body);
    if (request.path == "/api/expand") return expand(body);
    return error_response(404, "not found");
  } catch (const StateBudgetExceeded& e) {
    return error_response(503, e.what());
  } catch (const TooLarge& e) {
    return error_response(503, e.what());
  } catch (const BackendUnavailable& e) {
    return error_response(503, e.what());
  } catch (const Error& e) {
    return error_response(400, e.what());
  } catch (const json::exception& e) {
    return error_response(400, e.what());
  }
}

Response Service::validate(const json& body) const {
  Sample s = sample_from_json(sample_member(body));
  json violations = json::array();
  for (const auto& v : validate_sample(s)) violations.push_back(violation_to_json(v));
  return json_response(200, {{"violations", violations}});
}

Response Service::learn(const json& body) const {
  Sample s = sample_from_json(sample_member(body));
  if (auto v = validate_sample(s); !v.empty()) {
    json violations = json::array();
    for (const auto& x : v) violations.push_back(violation_to_json(x));
    return error_response(422, "inconsistent sample", {{"violations", violations}});
  }
  const json options = body.is_object() && body.contains("options") ? body.at("options") : json();
  return json_response(200, learn_result_to_json(leap::learn(s, learn_options(options, config_)), s.alphabet));
}

Response Service::check(const json& body) const {
  Era a = era_from_json(member(body, "era"));
  const std::string word = text_member(body, "word");
  const std::string mode = body.contains("mode") ? text_member(body, "mode") : "symbolic";
  if (mode == "timed") {
    bool ok = accepts_timed(a, parse_timed_word(word, a.alphabet()));
    return json_response(200, {{"verdict", ok ? "accept" : "reject"}});
  }
  if (mode != "symbolic") throw ParseError("mode must be 'timed' or 'symbolic'", 0);
  auto r = intersection_nonempty(a, parse_symbolic_word(word, a.alphabet()), config_.intersect);
  json j{{"verdict", r.nonempty ? "nonempty" : "empty"}, {"backend", backend_name(r.backend)}};
  j["witness"] = r.witness ? json(format_timed_word(*r.witness, a.alphabet())) : json();
  return json_response(200, j);
}

Response Service::expand(const json& body) const {
  const json& events = member(body, "alphabet");
  if (!events.is_array()) throw ParseError("'alphabet' must be an array", 0);
  Alphabet alphabet(events.get<std::vector<std::string>>());
  const json& kj = member(body, "k");
  if (!kj.is_number_integer() || kj.get<int>() < 0) throw ParseError("'k' must be a non-negative integer", 0);
  const int k = kj.get<int>();
  auto w = parse_symbolic_word(text_member(body, "word"), alphabet, k);
  json out = json::array();
  for (const auto& r : expand_to_regions(w, k, alphabet.size())) out.push_back(format_symbolic_word(r, alphabet));
  return json_response(200, {{"regionWords", out}});
}

Response Service::dot(const Request& request) const {
  auto it = request.query.find("era");
  if (it == request.query.end()) return error_response(400, "missing query parameter 'era'");
  json era;
  try {
    era = json::parse(it->second);
  } catch (const json::parse_error& e) {
    return error_response(400, std::string("malformed JSON: ") + e.what());
  }
  return {200, to_dot(era_from_json(era)), "text/vnd.graphviz"};
}

struct HttpServer::Impl {
  httplib::Server server;
  Service service;
  int port = 0;
  std::thread thread;

  explicit Impl(Service s) : service(std::move(s)) {}
};

HttpServer::HttpServer(Service service, const std::string& host, int port)
    : impl_(std::make_unique<Impl>(std::move(service))) {
  auto handler = [this](const httplib::Request& req, httplib::Response& res) {
    Request r{req.method, req.path, {}, req.body};
    for (const auto& [key, value] : req.params) r.query.emplace(key, value);
    Response out = impl_->service.handle(r);
    res.status = out.status;
    res.set_content(out.body, out.content_type);
  };
  impl_->server.Get(R"(/api/.*)", handler);
  impl_->server.Post(R"(/api/.*)", handler);
  impl_->port = port == 0 ? impl_->server.bind_to_any_port(host) : (impl_->server.bind_to_port(host, port) ? port : -1);
  if (impl_->port < 0) throw Error("cannot bind " + host + ":" + std::to_string(port));
  impl_->thread = std::thread([this] { impl_->server.listen_after_bind(); });
  impl_->server.wait_until_ready();
}

HttpServer::~HttpServer() {
  stop();
  if (impl_->thread.joinable()) impl_->thread.join();
}

int HttpServer::port() const noexcept { return impl_->port; }

void HttpServer::wait() {
  if (impl_->thread.joinable()) impl_->thread.join();
}

void HttpServer::stop() { impl_->server.stop(); }

}  // namespace leap
