#include "kembed/error.hpp"

namespace kembed {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::invalid_argument: return "invalid-argument";
    case Errc::resource_limit: return "resource-limit";
    case Errc::numeric_failure: return "numeric-failure";
    case Errc::not_enumerable: return "not-enumerable";
    case Errc::annotation_conflict: return "annotation-conflict";
    case Errc::refused: return "refused";
    case Errc::config: return "config-error";
    case Errc::io: return "io-error";
  }
  return "unknown";
}

void fail(Errc code, const std::string& message) { throw Error(code, message); }

}  // namespace kembed
