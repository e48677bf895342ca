#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace mctsr {

std::string trim(std::string_view s);

// FNV-1a, used for stable run-directory names.
std::uint64_t fnv1a64(std::string_view s);

// First 8 hex digits of a 64-bit hash.
std::string short_hash(std::uint64_t h);

// Millisecond clock behind a virtual interface so scripted runs can use a
// deterministic logical clock and still stamp every trace event.
class Clock {
 public:
  virtual ~Clock() = default;
  virtual std::int64_t now_ms() = 0;
};

class SystemClock final : public Clock {
 public:
  std::int64_t now_ms() override;
};

// Returns 0, 1, 2, ... — a pure tick counter.
class LogicalClock final : public Clock {
 public:
  std::int64_t now_ms() override { return next_++; }

 private:
  std::int64_t next_ = 0;
};

// "19700101T000000Z"-style UTC stamp for run-directory names.
std::string utc_stamp(std::int64_t unix_ms);

}  // namespace mctsr
