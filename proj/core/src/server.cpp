#include "httplib.h"
#include "irccs/service.hpp"

namespace irccs {

struct HttpServer::Impl {
  httplib::Server srv;
  bool mounted = true;
};

HttpServer::HttpServer(Service& svc, const std::string& ui_dir) : impl_(std::make_unique<Impl>()) {
  auto forward = [&svc](const httplib::Request& req, httplib::Response& res) {
    Response r = svc.handle(req.method, req.path, req.body);
    res.status = r.status;
    if (r.status != 204) res.set_content(r.body, r.content_type);
  };
  for (const char* pat : {R"(/sessions)", R"(/sessions/.*)"}) {
    impl_->srv.Get(pat, forward);
    impl_->srv.Post(pat, forward);
    impl_->srv.Delete(pat, forward);
  }
  if (!ui_dir.empty()) impl_->mounted = impl_->srv.set_mount_point("/", ui_dir);
}

HttpServer::~HttpServer() = default;

int HttpServer::bind(const std::string& host, int port) {
  if (!impl_->mounted) return -1;
  if (port == 0) return impl_->srv.bind_to_any_port(host);
  return impl_->srv.bind_to_port(host, port) ? port : -1;
}

bool HttpServer::run() { return impl_->srv.listen_after_bind(); }

void HttpServer::stop() { impl_->srv.stop(); }

bool serve(Service& svc, const std::string& host, int port, const std::string& ui_dir) {
  HttpServer http(svc, ui_dir);
  if (http.bind(host, port) < 0) return false;
  return http.run();
}

}  // namespace irccs
