#include "salt/http_backend.hpp"

#include <chrono>
#include <cstdlib>
#include <thread>

#include "httplib.h"
#include "json.hpp"

#include "salt/errors.hpp"

namespace salt {

using nlohmann::json;

void HttpBackend::FlightLimiter::acquire() {
    std::unique_lock<std::mutex> lock(mutex_);
    cv_.wait(lock, [&] { return available_ > 0; });
    --available_;
}

void HttpBackend::FlightLimiter::release() {
    {
        std::lock_guard<std::mutex> lock(mutex_);
        ++available_;
    }
    cv_.notify_one();
}

HttpBackend::HttpBackend(HttpBackendConfig config)
    : config_(std::move(config)), limiter_(std::max(1, config_.max_in_flight)) {
    if (config_.base_url.empty()) {
        throw ValidationError("http backend requires a base URL (SALT_API_BASE)");
    }
}

HttpBackend HttpBackend::from_env(HttpBackendConfig defaults) {
    if (const char* base = std::getenv("SALT_API_BASE")) defaults.base_url = base;
    if (const char* key = std::getenv("SALT_API_KEY")) defaults.api_key = key;
    return HttpBackend(std::move(defaults));
}

std::string HttpBackend::generate(const GenerationRequest& request) {
    limiter_.acquire();
    struct Release {
        FlightLimiter& l;
        ~Release() { l.release(); }
    } release{limiter_};

    const json body = {
        {"model", config_.model},
        {"messages",
         json::array({json{{"role", "system"}, {"content", request.system_prompt}},
                      json{{"role", "user"}, {"content", request.user_prompt}}})},
        {"max_tokens", request.max_tokens},
        {"temperature", request.temperature},
    };
    const std::string payload = body.dump();

    std::string last_error;
    const int attempts_allowed = std::max(1, config_.max_retries + 1);
    for (int attempt = 1; attempt <= attempts_allowed; ++attempt) {
        if (attempt > 1) {
            std::this_thread::sleep_for(
                std::chrono::milliseconds(config_.retry_backoff_ms * (attempt - 1)));
        }
        httplib::Client client(config_.base_url);
        client.set_connection_timeout(config_.timeout_seconds, 0);
        client.set_read_timeout(config_.timeout_seconds, 0);
        client.set_write_timeout(config_.timeout_seconds, 0);
        httplib::Headers headers;
        if (!config_.api_key.empty()) {
            headers.emplace("Authorization", "Bearer " + config_.api_key);
        }

        auto result = client.Post(config_.chat_path, headers, payload, "application/json");
        if (!result) {
            last_error = "transport error: " + httplib::to_string(result.error());
            continue;
        }
        if (result->status < 200 || result->status >= 300) {
            last_error = "http status " + std::to_string(result->status);
            continue;
        }
        try {
            json reply = json::parse(result->body);
            std::string text =
                reply.at("choices").at(0).at("message").at("content").get<std::string>();
            if (text.empty()) {
                last_error = "empty completion text";
                continue;
            }
            return text;
        } catch (const json::exception& e) {
            last_error = std::string("malformed completion payload: ") + e.what();
            continue;
        }
    }
    throw BackendError("backend failed after " + std::to_string(attempts_allowed) +
                           " attempts: " + last_error,
                       attempts_allowed, /*is_terminal=*/true);
}

}  // namespace salt
