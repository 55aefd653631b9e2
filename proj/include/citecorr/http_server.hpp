#pragma once

#include "citecorr/service.hpp"

#include <chrono>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>

namespace citecorr {

struct ServerOptions {
    std::string host = "127.0.0.1";
    int port = 8080; ///< 0 picks a free port
    /// Static files for the browser front end; none served when empty.
    std::filesystem::path static_dir;
    /// Responses slower than this carry X-Citecorr-Timeout: true.
    std::chrono::milliseconds soft_timeout{30000};
};

/// JSON-free HTTP front end over QueryService. Routes:
///   GET /api/correlate        result document
///   GET /api/sweep            CSV
///   GET /api/distribution     histogram document (kind=...)
///   GET /api/scatter.svg      SVG
///   GET /api/meta             corpus counts
/// Every response carries X-Citecorr-Elapsed-Ms.
class ApiServer {
public:
    ApiServer(const QueryService& service, ServerOptions options);
    ~ApiServer();
    ApiServer(const ApiServer&) = delete;
    ApiServer& operator=(const ApiServer&) = delete;

    /// Binds the socket and returns the bound port. Throws std::runtime_error.
    int bind();
    /// Blocks serving requests until stop(). bind() must have succeeded.
    void listen();
    void stop();

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

} // namespace citecorr
