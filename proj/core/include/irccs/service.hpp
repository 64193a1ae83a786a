// Session-oriented JSON API over the reversible engine. `handle` is the whole
// protocol; `serve` only binds it to HTTP.
#pragma once

#include <chrono>
#include <cstddef>
#include <functional>
#include <memory>
#include <string>

namespace irccs {

struct Response {
  int status = 200;
  std::string body;
  std::string content_type = "application/json";
};

struct ServiceOptions {
  std::chrono::seconds ttl{3600};
  std::size_t max_sessions = 1024;
  // sessions created with "persist": true are snapshotted here as trace files
  std::string persist_dir;
  std::function<std::chrono::steady_clock::time_point()> clock = [] { return std::chrono::steady_clock::now(); };
};

class Service {
 public:
  explicit Service(ServiceOptions opts = {});
  ~Service();
  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  // POST /sessions, GET|DELETE /sessions/{id}, GET /sessions/{id}/moves,
  // POST /sessions/{id}/moves/{k}, GET /sessions/{id}/origin,
  // GET /sessions/{id}/trace
  Response handle(const std::string& method, const std::string& path, const std::string& body = "");

  std::size_t session_count() const;
  std::size_t evict_expired();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// HTTP binding of a Service. Static files from ui_dir are served at "/" when
// it is non-empty.
class HttpServer {
 public:
  explicit HttpServer(Service& svc, const std::string& ui_dir = "");
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  // port 0 picks a free port; returns the bound port or -1
  int bind(const std::string& host, int port);
  // blocks until stop() is called from another thread
  bool run();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// bind and run; returns false if the port cannot be bound
bool serve(Service& svc, const std::string& host, int port, const std::string& ui_dir = "");

}  // namespace irccs
