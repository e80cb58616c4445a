#pragma once

#include <memory>
#include <string>

#include "parrot/service.hpp"

namespace parrot::service {

struct ServerOptions {
    std::string host = "127.0.0.1";
    /// 0 picks a free port.
    int port = 8080;
    std::string cors_origin = "http://localhost:5173";
};

/// HTTP front end over `handle`. The engine must outlive the server.
class HttpServer {
public:
    HttpServer(const Engine& engine, ServerOptions options);
    ~HttpServer();
    HttpServer(const HttpServer&) = delete;
    HttpServer& operator=(const HttpServer&) = delete;

    /// Binds and returns the bound port; throws Error("internal") on failure.
    int bind();
    /// Blocks until stop() is called.
    void listen();
    void stop();
    int port() const noexcept { return port_; }

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
    int port_ = 0;
};

}  // namespace parrot::service
