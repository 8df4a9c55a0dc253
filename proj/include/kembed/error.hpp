#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace kembed {

enum class Errc {
  invalid_argument,
  resource_limit,
  numeric_failure,
  not_enumerable,
  annotation_conflict,
  refused,
  config,
  io,
};

std::string_view to_string(Errc code) noexcept;

/// Every failure raised by the library carries one of the Errc kinds so the
/// C boundary and the CLI can map it to a status or exit code.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] void fail(Errc code, const std::string& message);

inline void require(bool condition, Errc code, const std::string& message) {
  if (!condition) fail(code, message);
}

}  // namespace kembed
