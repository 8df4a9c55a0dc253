#pragma once

#include <string>
#include <string_view>

namespace kembed {

enum class VerdictKind { yes_certified, no_certified, inconclusive };

std::string_view to_string(VerdictKind kind);

/// Certified verdicts rest on declared asymptotics and always carry a
/// justification; inconclusive ones carry numeric evidence instead.
struct Verdict {
  VerdictKind kind = VerdictKind::inconclusive;
  std::string justification;
  std::string evidence;

  bool certified() const { return kind != VerdictKind::inconclusive; }
  bool is_yes() const { return kind == VerdictKind::yes_certified; }
  bool is_no() const { return kind == VerdictKind::no_certified; }

  static Verdict yes(std::string why) { return {VerdictKind::yes_certified, std::move(why), {}}; }
  static Verdict no(std::string why) { return {VerdictKind::no_certified, std::move(why), {}}; }
  static Verdict inconclusive(std::string evidence) {
    return {VerdictKind::inconclusive, {}, std::move(evidence)};
  }
};

/// A declared boolean fact with the argument that backs it.
struct Justified {
  bool value = false;
  std::string justification;
};

}  // namespace kembed
