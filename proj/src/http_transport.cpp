#define CPPHTTPLIB_OPENSSL_SUPPORT
#include <httplib.h>

#include "ideation/llm.hpp"

namespace ideation {

namespace {

class HttplibTransport : public HttpTransport {
public:
    HttplibTransport(const std::string& base_url, std::chrono::seconds timeout) : timeout_(timeout) {
        const auto scheme_end = base_url.find("://");
        if (scheme_end == std::string::npos) {
            throw Error(ErrorKind::Config, "base URL \"" + base_url + "\" has no scheme");
        }
        const auto path_start = base_url.find('/', scheme_end + 3);
        origin_ = base_url.substr(0, path_start);
        if (path_start != std::string::npos) prefix_ = base_url.substr(path_start);
        while (!prefix_.empty() && prefix_.back() == '/') prefix_.pop_back();
    }

    HttpResult post_json(const std::string& path, const std::string& body,
                         const std::vector<std::pair<std::string, std::string>>& headers) override {
        // One client per call keeps the transport safe for concurrent use.
        httplib::Client client(origin_);
        client.set_connection_timeout(timeout_);
        client.set_read_timeout(timeout_);
        client.set_write_timeout(timeout_);
        httplib::Headers hs;
        for (const auto& [k, v] : headers) hs.emplace(k, v);

        HttpResult out;
        auto res = client.Post(prefix_ + path, hs, body, "application/json");
        if (!res) {
            out.error = "request failed: " + httplib::to_string(res.error());
            return out;
        }
        out.status = res->status;
        out.body = res->body;
        return out;
    }

private:
    std::string origin_;
    std::string prefix_;
    std::chrono::seconds timeout_;
};

} // namespace

std::unique_ptr<HttpTransport> make_http_transport(const std::string& base_url, std::chrono::seconds timeout) {
    return std::make_unique<HttplibTransport>(base_url, timeout);
}

} // namespace ideation
