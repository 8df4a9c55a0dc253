#include "json_emit.hpp"

#include <cmath>
#include <cstdio>

namespace kembed::json {

namespace {

void emit_string(std::string& out, const std::string& s) {
  // Reuse the library's escaping for strings only.
  out += Json(s).dump(-1, ' ', false, nlohmann::detail::error_handler_t::replace);
}

void emit_double(std::string& out, double v) {
  if (!std::isfinite(v)) {
    out += "null";
    return;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out += buf;
}

void emit(std::string& out, const Json& v, int depth) {
  const std::string pad(2 * (depth + 1), ' ');
  const std::string close_pad(2 * depth, ' ');
  switch (v.type()) {
    case Json::value_t::object: {
      if (v.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = v.begin(); it != v.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += pad;
        emit_string(out, it.key());
        out += ": ";
        emit(out, it.value(), depth + 1);
      }
      out += "\n" + close_pad + "}";
      return;
    }
    case Json::value_t::array: {
      if (v.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      bool first = true;
      for (const auto& e : v) {
        if (!first) out += ",\n";
        first = false;
        out += pad;
        emit(out, e, depth + 1);
      }
      out += "\n" + close_pad + "]";
      return;
    }
    case Json::value_t::number_float:
      emit_double(out, v.get<double>());
      return;
    case Json::value_t::string:
      emit_string(out, v.get_ref<const std::string&>());
      return;
    default:
      out += v.dump();
      return;
  }
}

}  // namespace

std::string dump(const Json& value) {
  std::string out;
  emit(out, value, 0);
  out += '\n';
  return out;
}

}  // namespace kembed::json
