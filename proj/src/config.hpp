#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json_emit.hpp"
#include "kembed/diagnostics.hpp"
#include "kembed/ivar.hpp"
#include "kembed/kernel.hpp"
#include "kembed/measure.hpp"
#include "kembed/seqspace.hpp"

namespace kembed::cli {

using json::Json;

enum class Command { gram, spectrum, diagnose, seq_example, ivar_verdict, ivar_spectrum, kgamma };

std::optional<Command> parse_command(std::string_view name);
std::string_view to_string(Command c);

struct Tunables {
  std::size_t horizon = kDefaultHorizon;
  std::vector<std::size_t> levels{256, 512, 1024};
  std::size_t top_n = 10;
  std::optional<std::size_t> truncation;
  double stabilization_threshold = 1e-3;
  std::optional<std::vector<double>> eigenvalues;
  std::size_t eigen_count = 5;
  bool assume_l2_orthogonal = false;

  Json to_json() const;
};

/// A parsed config document. Blocks are validated lazily by the accessors
/// below so that each command only requires what it uses; every failure is
/// Errc::config with a message that starts with the offending field.
struct RunConfig {
  Command command;
  Json document;
  Tunables tunables;
  std::optional<std::string> json_path;
  std::optional<std::string> csv_path;
};

RunConfig parse_config(std::string_view command, std::string_view text);

Kernel config_kernel(const RunConfig& cfg);
DiscreteMeasure config_measure(const RunConfig& cfg, const Domain& default_domain);
RefinementLadder config_ladder(const RunConfig& cfg, const Kernel& kernel);
WeightSchema config_weights(const RunConfig& cfg);
std::optional<double> config_norm_sq(const RunConfig& cfg);
SequencePair config_pair(const RunConfig& cfg);
std::vector<double> config_points(const RunConfig& cfg, const char* key);
PointSequence config_x_sequence(const RunConfig& cfg, std::vector<double> prefix);

}  // namespace kembed::cli
