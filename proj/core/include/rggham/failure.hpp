// failure.hpp - construction failure reasons and a small value-or-failure wrapper.
#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>

namespace rggham {

enum class FailureReason {
  Disconnected = 0,
  HookMissing = 1,
  LedgerExhausted = 2,
  EdgeTooLong = 3,
  RadiusDegenerate = 4,
};

inline constexpr int kFailureReasonCount = 5;

std::string_view to_string(FailureReason reason) noexcept;
std::optional<FailureReason> parse_failure_reason(std::string_view name) noexcept;

/// Why the construction gave up on an instance. Expected at finite n: the
/// guarantees behind the construction only hold asymptotically almost surely.
struct ConstructionFailure {
  FailureReason reason;
  std::string context;
};

template <class T>
class Result {
 public:
  Result(T value) : state_(std::move(value)) {}  // NOLINT(google-explicit-constructor)
  Result(ConstructionFailure failure) : state_(std::move(failure)) {}  // NOLINT

  bool ok() const noexcept { return state_.index() == 0; }
  explicit operator bool() const noexcept { return ok(); }

  T& value() & {
    if (!ok()) throw std::logic_error("Result holds a failure: " + failure().context);
    return std::get<0>(state_);
  }
  const T& value() const& {
    if (!ok()) throw std::logic_error("Result holds a failure: " + failure().context);
    return std::get<0>(state_);
  }
  T&& value() && {
    if (!ok()) throw std::logic_error("Result holds a failure: " + failure().context);
    return std::get<0>(std::move(state_));
  }
  const ConstructionFailure& failure() const { return std::get<1>(state_); }

 private:
  std::variant<T, ConstructionFailure> state_;
};

}  // namespace rggham
