#include <httplib.h>
#include <json.hpp>

#include <chrono>
#include <condition_variable>
#include <cstdlib>
#include <thread>

#include "mctsr/provider.hpp"

namespace mctsr {

namespace {

using nlohmann::json;

// Counting semaphore capping in-flight requests across threads.
class RequestGate {
 public:
  explicit RequestGate(int slots) : slots_(slots) {}

  void acquire() {
    std::unique_lock lock(mu_);
    cv_.wait(lock, [&] { return slots_ > 0; });
    --slots_;
  }

  void release() {
    {
      std::lock_guard lock(mu_);
      ++slots_;
    }
    cv_.notify_one();
  }

 private:
  std::mutex mu_;
  std::condition_variable cv_;
  int slots_;
};

struct GateGuard {
  explicit GateGuard(RequestGate& gate) : gate(gate) { gate.acquire(); }
  ~GateGuard() { gate.release(); }
  RequestGate& gate;
};

// Splits "https://host:port/prefix" into origin and path prefix.
void split_base_url(const std::string& base_url, std::string& origin, std::string& prefix) {
  auto scheme_end = base_url.find("://");
  std::size_t path_start =
      base_url.find('/', scheme_end == std::string::npos ? 0 : scheme_end + 3);
  if (path_start == std::string::npos) {
    origin = base_url;
    prefix.clear();
  } else {
    origin = base_url.substr(0, path_start);
    prefix = base_url.substr(path_start);
    while (!prefix.empty() && prefix.back() == '/') prefix.pop_back();
  }
}

bool retryable_status(int status) { return status == 429 || (status >= 500 && status < 600); }

}  // namespace

struct HttpProvider::Impl {
  ProviderConfig config;
  SleepFn sleep;
  std::string origin;
  std::string path_prefix;
  RequestGate gate;

  Impl(ProviderConfig cfg, SleepFn sleep_fn)
      : config(std::move(cfg)), sleep(std::move(sleep_fn)), gate(config.max_concurrent) {
    config.validate();
    split_base_url(config.base_url, origin, path_prefix);
    if (!sleep) {
      sleep = [](std::int64_t ms) { std::this_thread::sleep_for(std::chrono::milliseconds(ms)); };
    }
  }
};

HttpProvider::HttpProvider(ProviderConfig config, SleepFn sleep)
    : impl_(std::make_unique<Impl>(std::move(config), std::move(sleep))) {}

HttpProvider::~HttpProvider() = default;

std::string HttpProvider::complete(const std::vector<ChatMessage>& messages, RequestKind kind) {
  check_messages(messages);
  const ProviderConfig& cfg = impl_->config;

  json body;
  body["model"] = cfg.model_name;
  body["messages"] = json::array();
  for (const auto& m : messages) {
    body["messages"].push_back({{"role", std::string(to_string(m.role))}, {"content", m.content}});
  }
  body["temperature"] = kind == RequestKind::Evaluate ? cfg.eval_temperature : cfg.temperature;
  body["max_tokens"] = cfg.max_output_tokens;
  const std::string payload = body.dump();

  httplib::Headers headers;
  // The key is read from the environment at call time and never stored.
  if (!cfg.api_key_env.empty()) {
    if (const char* key = std::getenv(cfg.api_key_env.c_str()); key && *key) {
      headers.emplace("Authorization", std::string("Bearer ") + key);
    }
  }

  GateGuard guard(impl_->gate);
  const auto start = std::chrono::steady_clock::now();

  int last_status = 0;
  std::string last_error;
  for (int attempt = 1; attempt <= cfg.max_retries + 1; ++attempt) {
    if (attempt > 1) impl_->sleep(cfg.backoff_for_attempt(attempt - 1));

    httplib::Client client(impl_->origin);
    client.set_connection_timeout(std::chrono::milliseconds(cfg.request_timeout_ms));
    client.set_read_timeout(std::chrono::milliseconds(cfg.request_timeout_ms));
    client.set_write_timeout(std::chrono::milliseconds(cfg.request_timeout_ms));

    auto res = client.Post(impl_->path_prefix + "/chat/completions", headers, payload,
                           "application/json");
    if (!res) {
      last_status = 0;
      last_error = "transport error: " + httplib::to_string(res.error());
      continue;
    }
    last_status = res->status;
    if (retryable_status(res->status)) {
      last_error = "status " + std::to_string(res->status);
      continue;
    }
    if (res->status != 200) {
      throw ProviderError("chat completion failed with status " + std::to_string(res->status),
                          res->status, attempt);
    }

    json reply;
    try {
      reply = json::parse(res->body);
    } catch (const json::exception& e) {
      throw ProviderError(std::string("chat completion reply is not JSON: ") + e.what(),
                          res->status, attempt);
    }
    if (!reply.contains("choices") || !reply["choices"].is_array() || reply["choices"].empty())
      throw ProviderError("chat completion reply has no choices", res->status, attempt);
    const json& msg = reply["choices"][0].value("message", json::object());
    if (!msg.contains("content") || !msg["content"].is_string())
      throw ProviderError("chat completion reply has no message content", res->status, attempt);

    UsageEntry entry;
    entry.kind = kind;
    entry.attempts = attempt;
    entry.latency_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                           std::chrono::steady_clock::now() - start)
                           .count();
    if (reply.contains("usage") && reply["usage"].is_object()) {
      const json& usage = reply["usage"];
      if (usage.contains("prompt_tokens") && usage["prompt_tokens"].is_number())
        entry.prompt_tokens = usage["prompt_tokens"].get<std::int64_t>();
      if (usage.contains("completion_tokens") && usage["completion_tokens"].is_number())
        entry.completion_tokens = usage["completion_tokens"].get<std::int64_t>();
    }
    ledger_.append(entry);
    return msg["content"].get<std::string>();
  }

  throw ProviderError("chat completion exhausted retries (" + last_error + ")", last_status,
                      cfg.max_retries + 1);
}

}  // namespace mctsr
