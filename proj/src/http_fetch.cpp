#include "citecorr/metadata_harvest.hpp"

#include <httplib.h>

#include <charconv>

namespace citecorr {

HttpFetch make_http_fetch(const std::string& base_url, std::chrono::seconds timeout)
{
    // httplib wants "scheme://host[:port]" and the path separately.
    auto scheme_end = base_url.find("://");
    auto path_start = base_url.find('/', scheme_end == std::string::npos ? 0 : scheme_end + 3);
    std::string origin = base_url.substr(0, path_start);
    std::string path = path_start == std::string::npos ? "/" : base_url.substr(path_start);

    auto client = std::make_shared<httplib::Client>(origin);
    client->set_connection_timeout(timeout);
    client->set_read_timeout(timeout);
    client->set_follow_location(true);

    return [client, path](const std::string& query) {
        HttpReply reply;
        auto res = client->Get(path + query);
        if (!res)
            return reply;
        reply.status = res->status;
        reply.body = res->body;
        if (res->has_header("Retry-After")) {
            auto v = res->get_header_value("Retry-After");
            int seconds = 0;
            auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), seconds);
            if (ec == std::errc() && seconds >= 0)
                reply.retry_after_seconds = seconds;
        }
        return reply;
    };
}

} // namespace citecorr
