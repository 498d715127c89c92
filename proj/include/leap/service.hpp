#pragma once

#include <map>
#include <memory>
#include <string>

#include "json.hpp"
#include "leap/intersect.hpp"
#include "leap/leap.hpp"

namespace leap {

struct ServiceConfig {
  IntersectOptions intersect;
  bool region_mode = false;
};

struct Request {
  std::string method;
  std::string path;
  std::map<std::string, std::string> query;
  std::string body;
};

struct Response {
  int status = 200;
  std::string body;
  std::string content_type = "application/json";
};

/// Stable JSON text shared by files and HTTP bodies.
std::string render_json(const nlohmann::json& j);

nlohmann::json violation_to_json(const SampleViolation& v);
nlohmann::json learn_result_to_json(const LearnResult& r, const Alphabet& alphabet);
/// Applies request options ({"backend", "regions", "budget"}) on top of the defaults.
LearnOptions learn_options(const nlohmann::json& options, const ServiceConfig& defaults);

/// The JSON API as a pure function of the request. Errors map to 400 (malformed input),
/// 422 (inconsistent sample) and 503 (budget exceeded or solver unavailable).
class Service {
 public:
  explicit Service(ServiceConfig config = {}) : config_(std::move(config)) {}

  Response handle(const Request& request) const;

 private:
  Response validate(const nlohmann::json& body) const;
  Response learn(const nlohmann::json& body) const;
  Response check(const nlohmann::json& body) const;
  Response expand(const nlohmann::json& body) const;
  Response dot(const Request& request) const;

  ServiceConfig config_;
};

/// Runs a Service over HTTP on a background thread; stops on destruction.
class HttpServer {
 public:
  HttpServer(Service service, const std::string& host, int port);
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  /// Bound port; useful when constructed with port 0.
  int port() const noexcept;
  /// Blocks until stop() is called from another thread or a signal handler.
  void wait();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace leap
