#include "mctsr/provider.hpp"

#include <algorithm>

namespace mctsr {

std::string_view to_string(Role r) {
  switch (r) {
    case Role::System: return "system";
    case Role::User: return "user";
    case Role::Assistant: return "assistant";
  }
  return "user";
}

Role role_from_string(std::string_view s) {
  if (s == "system") return Role::System;
  if (s == "user") return Role::User;
  if (s == "assistant") return Role::Assistant;
  throw ParseError("unknown chat role: " + std::string(s));
}

std::string_view to_string(RequestKind k) {
  switch (k) {
    case RequestKind::Generate: return "generate";
    case RequestKind::Refine: return "refine";
    case RequestKind::Evaluate: return "evaluate";
    case RequestKind::Synthesize: return "synthesize";
  }
  return "generate";
}

RequestKind request_kind_from_string(std::string_view s) {
  if (s == "generate") return RequestKind::Generate;
  if (s == "refine") return RequestKind::Refine;
  if (s == "evaluate") return RequestKind::Evaluate;
  if (s == "synthesize") return RequestKind::Synthesize;
  throw ParseError("unknown request kind: " + std::string(s));
}

void UsageLedger::append(UsageEntry entry) {
  std::lock_guard lock(mu_);
  entries_.push_back(std::move(entry));
}

std::vector<UsageEntry> UsageLedger::entries() const {
  std::lock_guard lock(mu_);
  return entries_;
}

std::size_t UsageLedger::size() const {
  std::lock_guard lock(mu_);
  return entries_.size();
}

int UsageLedger::attempts_since(std::size_t from) const {
  std::lock_guard lock(mu_);
  int total = 0;
  for (std::size_t i = from; i < entries_.size(); ++i) total += entries_[i].attempts;
  return total;
}

void ModelProvider::check_messages(const std::vector<ChatMessage>& messages) const {
  if (messages.empty()) throw InvalidArgumentError("complete: messages must be non-empty");
  for (const auto& m : messages) {
    if (m.role != Role::System && m.content.empty())
      throw InvalidArgumentError("complete: user/assistant message content must be non-empty");
  }
}

void ProviderConfig::validate() const {
  if (base_url.empty()) throw ConfigError("provider: base_url must be set");
  if (model_name.empty()) throw ConfigError("provider: model_name must be set");
  if (temperature < 0.0 || eval_temperature < 0.0)
    throw ConfigError("provider: temperature must be >= 0");
  if (request_timeout_ms <= 0) throw ConfigError("provider: request_timeout_ms must be > 0");
  if (max_retries < 0) throw ConfigError("provider: max_retries must be >= 0");
  if (max_concurrent < 1) throw ConfigError("provider: max_concurrent must be >= 1");
}

std::int64_t ProviderConfig::backoff_for_attempt(int retry_index) const {
  if (retry_backoff_ms.empty()) return 0;
  const std::size_t i =
      std::min<std::size_t>(static_cast<std::size_t>(retry_index), retry_backoff_ms.size()) - 1;
  return retry_backoff_ms[std::min(i, retry_backoff_ms.size() - 1)];
}

ScriptedProvider::ScriptedProvider(ScriptedScript script) : script_(std::move(script)) {
  remaining_.reserve(script_.rules.size());
  for (const auto& rule : script_.rules) remaining_.push_back(rule.uses);
}

namespace {

bool rule_matches(const ScriptRule& rule, const std::vector<ChatMessage>& messages,
                  RequestKind kind) {
  if (rule.kind && *rule.kind != kind) return false;
  if (rule.contains) {
    for (const auto& m : messages) {
      if (m.content.find(*rule.contains) != std::string::npos) return true;
    }
    return false;
  }
  return true;
}

}  // namespace

std::string ScriptedProvider::complete(const std::vector<ChatMessage>& messages,
                                       RequestKind kind) {
  check_messages(messages);
  ++calls_;

  const ScriptRule* chosen = nullptr;
  if (script_.mode == ScriptMode::Sequential) {
    if (next_rule_ >= script_.rules.size())
      throw ScriptExhaustedError("scripted provider: no rule left for call #" +
                                 std::to_string(calls_) + " (" + std::string(to_string(kind)) +
                                 ")");
    const ScriptRule& rule = script_.rules[next_rule_++];
    if (!rule_matches(rule, messages, kind))
      throw ScriptExhaustedError("scripted provider: call #" + std::to_string(calls_) + " (" +
                                 std::string(to_string(kind)) +
                                 ") does not match the next sequential rule");
    chosen = &rule;
  } else {
    for (std::size_t i = 0; i < script_.rules.size(); ++i) {
      if (remaining_[i] == 0) continue;
      if (!rule_matches(script_.rules[i], messages, kind)) continue;
      if (remaining_[i] > 0) --remaining_[i];
      chosen = &script_.rules[i];
      break;
    }
    if (!chosen)
      throw ScriptExhaustedError("scripted provider: no matching rule for call #" +
                                 std::to_string(calls_) + " (" + std::string(to_string(kind)) +
                                 ")");
  }

  UsageEntry entry;
  entry.kind = kind;
  entry.latency_ms = 0;
  entry.attempts = 1;
  ledger_.append(entry);
  return chosen->reply;
}

}  // namespace mctsr
