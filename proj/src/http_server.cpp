#include "parrot/http_server.hpp"

#include "httplib.h"

namespace parrot::service {

struct HttpServer::Impl {
    const Engine& engine;
    ServerOptions options;
    httplib::Server server;

    Impl(const Engine& e, ServerOptions o) : engine(e), options(std::move(o)) {}
};

HttpServer::HttpServer(const Engine& engine, ServerOptions options)
    : impl_(std::make_unique<Impl>(engine, std::move(options))) {
    auto& srv = impl_->server;
    const std::string origin = impl_->options.cors_origin;
    srv.set_default_headers({{"Access-Control-Allow-Origin", origin},
                             {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"},
                             {"Access-Control-Allow-Headers", "Content-Type"}});
    auto dispatch = [this](const httplib::Request& in, httplib::Response& out) {
        Request req{in.method, in.path, in.body, in.get_header_value("Content-Type"), {}};
        for (const auto& [k, v] : in.params) req.params[k] = v;
        Response r = handle(impl_->engine, req);
        out.status = r.status;
        out.set_content(r.body, r.content_type);
    };
    srv.Get(".*", dispatch);
    srv.Post(".*", dispatch);
    srv.Options(".*", [](const httplib::Request&, httplib::Response& out) { out.status = 204; });
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind() {
    auto& o = impl_->options;
    if (o.port == 0) {
        port_ = impl_->server.bind_to_any_port(o.host);
    } else {
        port_ = impl_->server.bind_to_port(o.host, o.port) ? o.port : -1;
    }
    if (port_ <= 0) throw Error("internal", "cannot bind " + o.host + ":" + std::to_string(o.port));
    return port_;
}

void HttpServer::listen() { impl_->server.listen_after_bind(); }

void HttpServer::stop() {
    if (impl_ && impl_->server.is_running()) impl_->server.stop();
}

}  // namespace parrot::service
