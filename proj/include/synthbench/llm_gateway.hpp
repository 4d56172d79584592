#pragma once

#include "synthbench/errors.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace synthbench::llm {

struct ModelConfig {
  std::string model_id;
  std::string endpoint;      // base URL of an OpenAI-compatible API, e.g. http://host:8000/v1
  std::string api_key_env;   // name of the environment variable holding the key; may be empty
  double temperature = 0.0;
  int max_tokens = 512;
  std::optional<uint64_t> request_seed;
};

// Content hash of (model_id, prompt, temperature, max_tokens, request_seed).
// Endpoint and key are deliberately not part of the identity.
std::string cache_key(const ModelConfig& config, const std::string& prompt);

struct Completion {
  std::string text;
  bool truncated = false;  // provider reported a length stop
};

struct ChatExchange {
  std::string cache_key;
  std::string model_id;
  double temperature = 0;
  int max_tokens = 0;
  std::optional<uint64_t> request_seed;
  std::string prompt;
  std::string response;
  bool truncated = false;
  int64_t latency_ms = 0;
  int64_t timestamp_ms = 0;  // epoch milliseconds
};

// Append-only line-delimited exchange log keyed by cache_key. It is the
// response cache, the run's audit trail, and the replay fixture format all at
// once. Appends are serialized; lookups are lock-protected map reads.
class RunStore {
 public:
  // Opens (and creates, when writable) the store at `path`, loading any
  // existing records into the lookup index.
  explicit RunStore(std::string path, bool writable = true);

  std::optional<Completion> lookup(const std::string& key) const;
  void append(const ChatExchange& exchange);

  std::size_t size() const;
  const std::string& path() const { return path_; }

  static std::string to_json_line(const ChatExchange& exchange);
  static ChatExchange from_json_line(const std::string& line, int line_no = -1);

 private:
  std::string path_;
  bool writable_;
  mutable std::mutex mutex_;
  std::map<std::string, Completion> index_;
};

struct RetryPolicy {
  int max_attempts = 3;
  int initial_delay_ms = 100;
  double backoff_multiplier = 2.0;
  int max_delay_ms = 2000;
};

// Wire seam. The production transport speaks OpenAI-compatible HTTP; tests
// and fixture builders plug in fakes.
class Transport {
 public:
  struct Reply {
    int status = 0;         // 0 = transport-level failure (see error)
    std::string body;
    std::string error;
  };
  virtual ~Transport() = default;
  virtual Reply post_chat(const ModelConfig& config, const std::string& request_body) = 0;
};

std::unique_ptr<Transport> make_http_transport(int timeout_seconds = 120);

class AuthError : public Error {
 public:
  using Error::Error;
};
class RateLimitError : public Error {
 public:
  using Error::Error;
};
class TimeoutError : public Error {
 public:
  using Error::Error;
};
class ReplayMissError : public Error {
 public:
  using Error::Error;
};

enum class GatewayMode { live, replay };

// Chat-completion access with caching, retries, bounded concurrency, and a
// hermetic replay mode. Thread-safe; callers may invoke concurrently.
class Gateway {
 public:
  using Clock = std::function<int64_t()>;  // epoch milliseconds

  Gateway(GatewayMode mode, std::shared_ptr<RunStore> store,
          std::unique_ptr<Transport> transport = nullptr, RetryPolicy retry = {},
          Clock clock = nullptr);

  // Cache hit: stored response, no network. Replay miss: hard error naming
  // the cache key. Live: POST with retry/backoff, then record the exchange.
  Completion complete(const ModelConfig& config, const std::string& prompt);

  struct BatchItem {
    std::optional<Completion> completion;
    std::string error;
    bool ok() const { return completion.has_value(); }
  };

  // Ordered fan-out: output[i] always answers prompts[i]; at most
  // max_in_flight requests are outstanding; per-item failures are carried in
  // the items. Exchange records are appended in input order.
  std::vector<BatchItem> run_batch(const ModelConfig& config,
                                   const std::vector<std::string>& prompts, int max_in_flight);

  GatewayMode mode() const { return mode_; }
  int64_t network_calls() const;

 private:
  Completion complete_impl(const ModelConfig& config, const std::string& prompt,
                           std::optional<ChatExchange>* exchange_out);

  GatewayMode mode_;
  std::shared_ptr<RunStore> store_;
  std::unique_ptr<Transport> transport_;
  RetryPolicy retry_;
  Clock clock_;
  mutable std::mutex calls_mutex_;
  int64_t network_calls_ = 0;
};

// Build the OpenAI-style chat request body for a prompt.
std::string chat_request_body(const ModelConfig& config, const std::string& prompt);

}  // namespace synthbench::llm
