#pragma once

#include <string>

#include "httplib.h"

#include "woe/service.hpp"

namespace woe::service {

/// Routes every request on `server` through handle().
inline void install_routes(httplib::Server& server) {
    auto dispatch = [](const httplib::Request& req, httplib::Response& res) {
        const Response r = handle(req.method, req.path, req.body);
        res.status = r.status;
        res.set_content(r.body.dump(), "application/json");
    };
    server.Get(".*", dispatch);
    server.Post(".*", dispatch);
    server.Put(".*", dispatch);
    server.Delete(".*", dispatch);
}

/// Blocks serving the /v1 API. Returns false if the address cannot be bound.
inline bool serve(const std::string& bind, int port) {
    httplib::Server server;
    install_routes(server);
    return server.listen(bind, port);
}

}  // namespace woe::service
