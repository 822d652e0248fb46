#pragma once

#include <condition_variable>
#include <mutex>
#include <string>

#include "salt/backend.hpp"

namespace salt {

struct HttpBackendConfig {
    std::string base_url;   // e.g. http://localhost:8080; env SALT_API_BASE
    std::string api_key;    // env SALT_API_KEY
    std::string model = "default";
    std::string chat_path = "/v1/chat/completions";
    int max_retries = 3;    // attempts = max_retries + 1
    int timeout_seconds = 30;
    int max_in_flight = 4;
    int retry_backoff_ms = 250;
};

// Chat-completion client over HTTP JSON. Request body:
//   {model, messages:[{role:"system",...},{role:"user",...}], max_tokens, temperature}
// Reply text is choices[0].message.content. Transport failures and non-2xx
// statuses are retried with linear backoff; exhausting retries raises a
// terminal BackendError carrying the attempt count.
class HttpBackend final : public TextBackend {
  public:
    explicit HttpBackend(HttpBackendConfig config);

    // Reads SALT_API_BASE / SALT_API_KEY; throws ValidationError when the base
    // URL is missing.
    static HttpBackend from_env(HttpBackendConfig defaults = {});

    std::string generate(const GenerationRequest& request) override;
    std::string name() const override { return "http"; }

    const HttpBackendConfig& config() const { return config_; }

  private:
    class FlightLimiter {
      public:
        explicit FlightLimiter(int limit) : available_(limit) {}
        void acquire();
        void release();

      private:
        std::mutex mutex_;
        std::condition_variable cv_;
        int available_;
    };

    HttpBackendConfig config_;
    FlightLimiter limiter_;
};

}  // namespace salt
