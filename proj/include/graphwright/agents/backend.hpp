#pragma once

#include <algorithm>
#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <thread>
#include <utility>

#include "graphwright/core/error.hpp"
#include "graphwright/core/text.hpp"

namespace graphwright {

struct Usage {
  std::int64_t input_tokens = 0;
  std::int64_t output_tokens = 0;

  Usage& operator+=(const Usage& o) {
    input_tokens += o.input_tokens;
    output_tokens += o.output_tokens;
    return *this;
  }
  friend Usage operator+(Usage a, const Usage& b) { return a += b; }
  friend bool operator==(const Usage&, const Usage&) = default;
};

/// One chat completion. `agent` names the calling pipeline stage; live
/// backends ignore it, offline backends use it to pick an answer.
struct ChatRequest {
  std::string agent;
  std::string system;
  std::string user;
  double temperature = 0.0;
};

struct ChatReply {
  std::string text;
  Usage usage;
};

class ChatBackend {
 public:
  virtual ~ChatBackend() = default;
  virtual ChatReply complete(const ChatRequest& request) = 0;
  virtual std::string backend_id() const = 0;
  /// True when calls must not overlap; the scheduler then runs one at a time.
  virtual bool serialized() const { return false; }
};

/// Token count used by the offline backends: whitespace-separated words.
inline std::int64_t whitespace_tokens(std::string_view text) {
  return static_cast<std::int64_t>(text::words(text).size());
}

/// Caps call starts per minute and calls in flight. Zero disables a cap.
class RateLimiter {
 public:
  RateLimiter(double requests_per_minute, std::size_t max_in_flight)
      : interval_(requests_per_minute > 0 ? std::chrono::duration_cast<Clock::duration>(
                                                std::chrono::duration<double>(60.0 / requests_per_minute))
                                          : Clock::duration::zero()),
        max_in_flight_(max_in_flight) {}

  class Permit {
   public:
    explicit Permit(RateLimiter* owner) : owner_(owner) {}
    Permit(Permit&& o) noexcept : owner_(std::exchange(o.owner_, nullptr)) {}
    Permit(const Permit&) = delete;
    Permit& operator=(const Permit&) = delete;
    Permit& operator=(Permit&&) = delete;
    ~Permit() {
      if (owner_) owner_->release();
    }

   private:
    RateLimiter* owner_;
  };

  Permit acquire() {
    std::unique_lock lock(mutex_);
    cv_.wait(lock, [&] { return max_in_flight_ == 0 || in_flight_ < max_in_flight_; });
    ++in_flight_;
    const auto now = Clock::now();
    const auto start = std::max(now, next_start_);
    next_start_ = start + interval_;
    lock.unlock();
    if (start > now) std::this_thread::sleep_until(start);
    return Permit(this);
  }

 private:
  using Clock = std::chrono::steady_clock;
  Clock::duration interval_;
  std::size_t max_in_flight_;
  std::size_t in_flight_ = 0;
  Clock::time_point next_start_{};
  std::mutex mutex_;
  std::condition_variable cv_;

  void release() {
    {
      std::lock_guard lock(mutex_);
      --in_flight_;
    }
    cv_.notify_one();
  }
};

/// Routes every call through a shared limiter; serialised backends are
/// additionally guarded so calls never overlap.
class ThrottledBackend final : public ChatBackend {
 public:
  ThrottledBackend(std::shared_ptr<ChatBackend> inner, std::shared_ptr<RateLimiter> limiter)
      : inner_(std::move(inner)), limiter_(std::move(limiter)) {}

  ChatReply complete(const ChatRequest& request) override {
    auto permit = limiter_->acquire();
    if (inner_->serialized()) {
      std::lock_guard lock(serial_);
      return inner_->complete(request);
    }
    return inner_->complete(request);
  }
  std::string backend_id() const override { return inner_->backend_id(); }
  bool serialized() const override { return inner_->serialized(); }

 private:
  std::shared_ptr<ChatBackend> inner_;
  std::shared_ptr<RateLimiter> limiter_;
  std::mutex serial_;
};

}  // namespace graphwright
