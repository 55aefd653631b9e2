#include "citecorr/http_server.hpp"

#include <httplib.h>

#include <stdexcept>

namespace citecorr {

namespace {

ParamMap params_of(const httplib::Request& req)
{
    ParamMap params;
    for (const auto& [key, value] : req.params)
        params[key] = value; // repeated keys: last wins
    return params;
}

} // namespace

struct ApiServer::Impl {
    const QueryService& service;
    ServerOptions options;
    httplib::Server server;
    int port = -1;

    Impl(const QueryService& s, ServerOptions o) : service(s), options(std::move(o)) {}

    template <typename Fn>
    void route(const std::string& pattern, Fn handler)
    {
        server.Get(pattern, [this, handler](const httplib::Request& req, httplib::Response& res) {
            auto start = std::chrono::steady_clock::now();
            ServiceResponse out = handler(req);
            auto elapsed =
                std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
            res.status = out.status;
            res.set_content(out.body, out.content_type);
            res.set_header("X-Citecorr-Elapsed-Ms", std::to_string(elapsed.count()));
            if (elapsed > options.soft_timeout)
                res.set_header("X-Citecorr-Timeout", "true");
        });
    }
};

ApiServer::ApiServer(const QueryService& service, ServerOptions options)
    : impl_(std::make_unique<Impl>(service, std::move(options)))
{
    Impl& s = *impl_;
    s.route("/api/correlate", [&s](const httplib::Request& req) { return s.service.correlate(params_of(req)); });
    s.route("/api/sweep", [&s](const httplib::Request& req) { return s.service.sweep(params_of(req)); });
    s.route("/api/distribution",
            [&s](const httplib::Request& req) { return s.service.distribution(params_of(req)); });
    s.route("/api/scatter.svg", [&s](const httplib::Request& req) { return s.service.scatter(params_of(req)); });
    s.route("/api/meta", [&s](const httplib::Request&) { return s.service.meta(); });
    s.route(R"(/api/.*)", [](const httplib::Request& req) {
        ApiError e{ApiErrorCode::not_found, "no such endpoint: " + req.path};
        return ServiceResponse{http_status(e.code), "text/plain; charset=utf-8", format_error(e)};
    });
    if (!s.options.static_dir.empty() && !s.server.set_mount_point("/", s.options.static_dir.string()))
        throw std::runtime_error("static directory not found: " + s.options.static_dir.string());
}

ApiServer::~ApiServer()
{
    stop();
}

int ApiServer::bind()
{
    Impl& s = *impl_;
    if (s.options.port == 0)
        s.port = s.server.bind_to_any_port(s.options.host);
    else if (s.server.bind_to_port(s.options.host, s.options.port))
        s.port = s.options.port;
    if (s.port < 0)
        throw std::runtime_error("cannot bind " + s.options.host + ":" + std::to_string(s.options.port));
    return s.port;
}

void ApiServer::listen()
{
    if (impl_->port < 0)
        throw std::logic_error("ApiServer::listen before bind");
    impl_->server.listen_after_bind();
}

void ApiServer::stop()
{
    if (impl_ && impl_->server.is_running())
        impl_->server.stop();
}

} // namespace citecorr
