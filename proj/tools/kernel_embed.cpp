// kernel-embed <command> --config <path> [--out <path>] [--csv <path>]

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "kembed/kembed.h"

namespace {

enum Exit { kOk = 0, kIo = 1, kConfig = 2, kNumeric = 3, kEnumeration = 4 };

int exit_code(kembed_status s) {
  switch (s) {
    case KEMBED_OK: return kOk;
    case KEMBED_NUMERIC_FAILURE: return kNumeric;
    case KEMBED_NOT_ENUMERABLE:
    case KEMBED_ANNOTATION_CONFLICT: return kEnumeration;
    case KEMBED_IO_ERROR:
    case KEMBED_INTERNAL_ERROR: return kIo;
    default: return kConfig;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Compactness diagnostics for RKHS embeddings into L2"};
  app.set_version_flag("--version", std::string(kembed_version()));
  std::string command, config_path, out_path, csv_path;
  app.add_option("command", command,
                 "gram | spectrum | diagnose | seq-example | ivar-verdict | ivar-spectrum | kgamma")
      ->required();
  app.add_option("--config", config_path, "JSON config document")->required();
  app.add_option("--out", out_path, "JSON report path (default: output.json, else stdout)");
  app.add_option("--csv", csv_path, "CSV table path");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kConfig;
  }

  std::ifstream in(config_path, std::ios::binary);
  if (!in) {
    std::cerr << "kernel-embed: cannot read config '" << config_path << "'\n";
    return kConfig;
  }
  std::ostringstream text;
  text << in.rdbuf();

  char* report = nullptr;
  const kembed_status s =
      kembed_execute(command.c_str(), text.str().c_str(), out_path.empty() ? nullptr : out_path.c_str(),
                     csv_path.empty() ? nullptr : csv_path.c_str(), &report);
  if (s != KEMBED_OK) {
    std::cerr << "kernel-embed: " << kembed_status_name(s) << ": " << kembed_last_error() << "\n";
    return exit_code(s);
  }
  if (report) {
    std::fputs(report, stdout);
    kembed_string_free(report);
  }
  return kOk;
}
