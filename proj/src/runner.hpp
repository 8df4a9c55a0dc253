#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace kembed::cli {

struct RunOutput {
  std::string report;
  std::optional<std::string> csv;
  std::optional<std::string> json_path;
  std::optional<std::string> csv_path;
};

/// Parses the config, runs the command and renders the report (and the CSV
/// table when a CSV path is configured). Touches no files.
RunOutput run(std::string_view command, std::string_view config_text,
              std::optional<std::string> out_path = std::nullopt,
              std::optional<std::string> csv_path = std::nullopt);

/// run() followed by write-then-rename of every configured output file.
RunOutput execute(std::string_view command, std::string_view config_text,
                  std::optional<std::string> out_path = std::nullopt,
                  std::optional<std::string> csv_path = std::nullopt);

}  // namespace kembed::cli
