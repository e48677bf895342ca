#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mctsr/errors.hpp"

namespace mctsr {

enum class Role { System, User, Assistant };

std::string_view to_string(Role r);
Role role_from_string(std::string_view s);

struct ChatMessage {
  Role role = Role::User;
  std::string content;
};

// Why a completion is being requested. Threaded through every call so
// scripted providers can target individual algorithm steps.
enum class RequestKind { Generate, Refine, Evaluate, Synthesize };

std::string_view to_string(RequestKind k);
RequestKind request_kind_from_string(std::string_view s);

struct UsageEntry {
  RequestKind kind = RequestKind::Generate;
  std::optional<std::int64_t> prompt_tokens;
  std::optional<std::int64_t> completion_tokens;
  std::int64_t latency_ms = 0;
  int attempts = 1;
};

// Per-run ledger of every model call. Safe to append from concurrent calls.
class UsageLedger {
 public:
  void append(UsageEntry entry);
  std::vector<UsageEntry> entries() const;
  std::size_t size() const;
  // Sum of attempts over entries appended at index >= from. Used when a
  // higher-level step wants the attempt count of the calls it just issued.
  int attempts_since(std::size_t from) const;

 private:
  mutable std::mutex mu_;
  std::vector<UsageEntry> entries_;
};

// Boundary to the language model. One production HTTP implementation and
// one deterministic scripted implementation for tests and dry runs.
class ModelProvider {
 public:
  virtual ~ModelProvider() = default;

  // Returns the assistant text for the given conversation. Messages must be
  // non-empty; User/Assistant messages must have non-empty content.
  virtual std::string complete(const std::vector<ChatMessage>& messages, RequestKind kind) = 0;

  UsageLedger& ledger() { return ledger_; }
  const UsageLedger& ledger() const { return ledger_; }

 protected:
  void check_messages(const std::vector<ChatMessage>& messages) const;

  UsageLedger ledger_;
};

struct ProviderConfig {
  std::string base_url;       // e.g. "https://api.example.com/v1"
  std::string model_name;
  std::string api_key_env = "MCTSR_API_KEY";  // bearer token read at call time
  double temperature = 0.7;        // Generate / Refine / Synthesize
  double eval_temperature = 0.2;   // Evaluate
  int max_output_tokens = 1024;
  std::int64_t request_timeout_ms = 60000;
  int max_retries = 3;
  std::vector<std::int64_t> retry_backoff_ms = {250, 500, 1000};
  int max_concurrent = 4;

  void validate() const;
  // Delay before retry attempt k (1-based); repeats the last entry when the
  // schedule is shorter than max_retries.
  std::int64_t backoff_for_attempt(int retry_index) const;
};

// One scripted rule: optional request-kind and substring matchers plus the
// canned reply. `uses` < 0 means unlimited (Matched mode only).
struct ScriptRule {
  std::optional<RequestKind> kind;
  std::optional<std::string> contains;  // matched against all message contents
  std::string reply;
  std::int64_t uses = -1;
};

enum class ScriptMode { Sequential, Matched };

struct ScriptedScript {
  ScriptMode mode = ScriptMode::Sequential;
  std::vector<ScriptRule> rules;
};

// Pure deterministic provider: same script + same request sequence gives the
// same replies. Any request that no rule covers throws ScriptExhaustedError,
// so a mis-scripted test fails loudly instead of drifting.
class ScriptedProvider final : public ModelProvider {
 public:
  explicit ScriptedProvider(ScriptedScript script);

  std::string complete(const std::vector<ChatMessage>& messages, RequestKind kind) override;

  std::size_t calls() const { return calls_; }

 private:
  ScriptedScript script_;
  std::vector<std::int64_t> remaining_;  // per-rule remaining uses
  std::size_t next_rule_ = 0;            // Sequential cursor
  std::size_t calls_ = 0;
};

// Production client for chat-completion endpoints; see http_provider.cpp for
// the wire format. Sleeping is injectable so retry schedules are testable
// with a fake clock.
class HttpProvider final : public ModelProvider {
 public:
  using SleepFn = std::function<void(std::int64_t /*ms*/)>;

  explicit HttpProvider(ProviderConfig config, SleepFn sleep = nullptr);
  ~HttpProvider() override;

  std::string complete(const std::vector<ChatMessage>& messages, RequestKind kind) override;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace mctsr
