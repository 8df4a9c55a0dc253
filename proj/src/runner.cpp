#include "runner.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include "config.hpp"
#include "kembed/error.hpp"
#include "kembed/linalg.hpp"

namespace kembed::cli {

namespace {

constexpr std::size_t kMaxGramPoints = 2000;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

class Csv {
 public:
  explicit Csv(std::string header) : text_(std::move(header) + "\n") {}
  template <class... Cells>
  void row(const Cells&... cells) {
    bool first = true;
    ((text_ += (first ? "" : ","), text_ += cell(cells), first = false), ...);
    text_ += "\n";
  }
  std::string str() && { return std::move(text_); }

 private:
  static std::string cell(double v) { return num(v); }
  static std::string cell(std::size_t v) { return std::to_string(v); }
  static std::string cell(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
  }
  std::string text_;
};

Json subset_json(const Subset& u) {
  Json a = Json::array();
  for (auto j : u.elements()) a.push_back(j);
  return a;
}

Json verdict_json(const Verdict& v) {
  Json j = Json::object();
  j["verdict"] = std::string(to_string(v.kind));
  j["certified"] = v.certified();
  j["justification"] = v.justification;
  j["evidence"] = v.evidence;
  return j;
}

struct Result {
  Json body = Json::object();
  std::optional<std::string> csv;
};

Result run_gram(const RunConfig& cfg) {
  const Kernel k = config_kernel(cfg);
  std::vector<double> points;
  if (cfg.document.contains("points")) {
    points = config_points(cfg, "points");
  } else {
    const DiscreteMeasure m = config_measure(cfg, k.domain());
    points.assign(m.atoms().begin(), m.atoms().end());
  }
  require(!points.empty(), Errc::config, "points: need at least one point");
  require(points.size() <= kMaxGramPoints, Errc::config,
          "points: at most " + std::to_string(kMaxGramPoints) + " points");
  const Eigen::MatrixXd g = gram(k, points);
  Result r;
  Csv csv("i,j,value");
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < g.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < g.cols(); ++j) {
      row.push_back(g(i, j));
      csv.row(static_cast<std::size_t>(i), static_cast<std::size_t>(j), g(i, j));
    }
    rows.push_back(std::move(row));
  }
  r.body["kernel"] = k.name();
  r.body["points"] = points;
  r.body["matrix"] = std::move(rows);
  r.body["min_eigenvalue"] = psd_min_eig(g);
  r.body["passes_psd"] = passes_psd(g);
  r.body["psd_relative_tolerance"] = kPsdRelativeTolerance;
  r.csv = std::move(csv).str();
  return r;
}

Result run_spectrum(const RunConfig& cfg) {
  const Kernel k = config_kernel(cfg);
  const EmbeddingModel model(k, config_measure(cfg, k.domain()));
  const SpectralReport s = spectrum(model, cfg.tunables.top_n);
  Result r;
  r.body["kernel"] = k.name();
  r.body["singular_values"] = s.singular_values;
  r.body["operator_norm"] = s.operator_norm;
  r.body["hs_trace"] = s.hs_trace;
  r.body["kernel_l2_sq"] = s.kernel_l2_sq;
  r.body["atoms_count"] = s.atoms_count;
  r.body["truncated_at"] = s.truncated_at ? Json(*s.truncated_at) : Json(nullptr);
  Csv csv("index,sigma");
  for (std::size_t i = 0; i < s.singular_values.size(); ++i) csv.row(i + 1, s.singular_values[i]);
  r.csv = std::move(csv).str();
  return r;
}

Result run_diagnose(const RunConfig& cfg) {
  const Kernel k = config_kernel(cfg);
  const RefinementLadder ladder = config_ladder(cfg, k);
  EvidenceOptions opt;
  opt.stabilization_threshold = cfg.tunables.stabilization_threshold;
  const CompactnessEvidence ev = compactness_evidence(ladder, cfg.tunables.top_n, opt);
  Result r;
  r.body["kernel"] = k.name();
  r.body["levels"] = ev.levels;
  r.body["sigma_table"] = ev.sigma_table;
  Json stab = Json::array();
  for (bool b : ev.stabilized) stab.push_back(b);
  r.body["stabilized"] = std::move(stab);
  r.body["hs_traces"] = ev.hs_traces;
  r.body["verdict"] = std::string(to_string(ev.verdict));
  r.body["certified"] = false;
  r.body["notes"] = ev.notes;
  Csv csv("level,n,sigma");
  for (std::size_t l = 0; l < ev.levels.size(); ++l)
    for (std::size_t j = 0; j < ev.sigma_table[l].size(); ++j)
      csv.row(ev.levels[l], j + 1, ev.sigma_table[l][j]);
  r.csv = std::move(csv).str();
  return r;
}

Result run_seq_example(const RunConfig& cfg) {
  const SequencePair pair = config_pair(cfg);
  const ExampleVerdicts v = verdicts(pair, cfg.tunables.horizon);
  Result r;
  r.body["mu"] = pair.mu.label;
  r.body["nu"] = pair.nu.label;
  Json vs = Json::object();
  vs["bounded"] = verdict_json(v.bounded());
  vs["compact"] = verdict_json(v.compact());
  vs["hilbert_schmidt"] = verdict_json(v.hilbert_schmidt());
  vs["kernel_in_l2"] = verdict_json(v.kernel_in_l2());
  r.body["verdicts"] = std::move(vs);
  const ProbeSummary& p = v.probe();
  Json probe = Json::object();
  probe["horizon"] = p.horizon;
  probe["probed_sup"] = p.probed_sup;
  probe["first_ratio"] = p.first_ratio;
  probe["tail_ratio"] = p.tail_ratio;
  probe["ratio_partial_sum"] = p.ratio_partial_sum;
  probe["ratio_sq_partial_sum"] = p.ratio_sq_partial_sum;
  r.body["probe"] = std::move(probe);
  return r;
}

IvarModel ivar_model(const RunConfig& cfg) {
  const Kernel k = config_kernel(cfg);
  EmbeddingModel uni(k, config_measure(cfg, k.domain()));
  WeightSchema schema = config_weights(cfg);
  const auto declared = config_norm_sq(cfg);
  try {
    return IvarModel(std::move(uni), std::move(schema), declared);
  } catch (const Error& e) {
    if (e.code() == Errc::invalid_argument) fail(Errc::config, std::string("model: ") + e.what());
    throw;
  }
}

Json model_json(const IvarModel& m) {
  Json j = Json::object();
  j["kernel"] = m.kernel().name();
  j["norm"] = m.norm();
  j["norm_sq"] = m.norm_sq();
  j["norm_level"] = m.norm_level() ? Json(*m.norm_level()) : Json(nullptr);
  j["schema"] = m.schema().is_product() ? "product" : "explicit";
  if (m.schema().is_product()) j["gamma"] = m.schema().product_weights().gamma.label;
  return j;
}

Result run_ivar_verdict(const RunConfig& cfg) {
  const IvarModel m = ivar_model(cfg);
  const CriterionVerdict v = thm2_verdict(m);
  Result r;
  r.body["model"] = model_json(m);
  Json vj = Json::object();
  vj["verdict"] = std::string(to_string(v.verdict));
  vj["certified"] = v.verdict != CompactnessKind::inconclusive;
  vj["witness"] = v.witness;
  vj["justification"] = v.justification;
  Json table = Json::array();
  for (const auto& [j, c] : v.decay_table) table.push_back(Json::array({j, c}));
  vj["decay_table"] = std::move(table);
  r.body["verdict"] = std::move(vj);

  Csv csv("rank,subset,value");
  try {
    const auto entries = enumerate_by_criterion(m, cfg.tunables.top_n);
    Json rows = Json::array();
    for (std::size_t i = 0; i < entries.size(); ++i) {
      Json row = Json::object();
      row["rank"] = i + 1;
      row["subset"] = subset_json(entries[i].u);
      row["value"] = entries[i].value;
      rows.push_back(std::move(row));
      csv.row(i + 1, entries[i].u.to_string(), entries[i].value);
    }
    r.body["criterion_table"] = std::move(rows);
    r.body["criterion_table_note"] = "";
  } catch (const Error& e) {
    // The verdict stands without the table; a contradicted annotation does not.
    if (e.code() != Errc::not_enumerable) throw;
    r.body["criterion_table"] = nullptr;
    r.body["criterion_table_note"] = e.what();
  }
  r.csv = std::move(csv).str();
  return r;
}

Result run_ivar_spectrum(const RunConfig& cfg) {
  const IvarModel m = ivar_model(cfg);
  std::vector<double> lambda;
  std::string source;
  if (cfg.tunables.eigenvalues) {
    lambda = *cfg.tunables.eigenvalues;
    source = "declared";
  } else {
    const std::size_t r = std::min(cfg.tunables.eigen_count, m.univariate().size());
    const SpectralReport s = spectrum(m.univariate(), r);
    for (double e : s.raw_eigenvalues) {
      if (lambda.size() == r || !(e > 0.0)) break;
      lambda.push_back(e);
    }
    require(!lambda.empty(), Errc::numeric_failure,
            "ivar-spectrum: the univariate model has no positive eigenvalue");
    source = "univariate spectrum at " + std::to_string(m.univariate().size()) + " atoms";
  }
  const auto entries =
      tensor_spectrum_entries(m, lambda, cfg.tunables.top_n, cfg.tunables.assume_l2_orthogonal);
  Result r;
  r.body["model"] = model_json(m);
  r.body["eigenvalues"] = lambda;
  r.body["eigenvalue_source"] = source;
  r.body["assume_l2_orthogonal"] = cfg.tunables.assume_l2_orthogonal;
  Csv csv("rank,subset,value");
  Json rows = Json::array();
  for (std::size_t i = 0; i < entries.size(); ++i) {
    Json row = Json::object();
    row["rank"] = i + 1;
    row["subset"] = subset_json(entries[i].u);
    row["eigen_indices"] = entries[i].eigen_indices;
    row["value"] = entries[i].value;
    rows.push_back(std::move(row));
    csv.row(i + 1, entries[i].u.to_string(), entries[i].value);
  }
  r.body["entries"] = std::move(rows);
  r.csv = std::move(csv).str();
  return r;
}

Result run_kgamma(const RunConfig& cfg) {
  const IvarModel m = ivar_model(cfg);
  const std::vector<double> x = config_points(cfg, "x");
  const std::vector<double> y = config_points(cfg, "y");
  const std::size_t truncation = cfg.tunables.truncation.value_or(std::min(x.size(), y.size()));
  KGammaValue v;
  try {
    v = kgamma_eval(m, x, y, truncation);
  } catch (const Error& e) {
    if (e.code() == Errc::invalid_argument) fail(Errc::config, std::string("x/y: ") + e.what());
    throw;
  }
  const Verdict member = x_membership(m, config_x_sequence(cfg, x));
  Result r;
  r.body["model"] = model_json(m);
  r.body["truncation"] = truncation;
  r.body["value"] = v.value;
  r.body["tail_bound"] = v.tail_bound ? Json(*v.tail_bound) : Json(nullptr);
  r.body["x_membership"] = verdict_json(member);
  return r;
}

Result dispatch(const RunConfig& cfg) {
  switch (cfg.command) {
    case Command::gram: return run_gram(cfg);
    case Command::spectrum: return run_spectrum(cfg);
    case Command::diagnose: return run_diagnose(cfg);
    case Command::seq_example: return run_seq_example(cfg);
    case Command::ivar_verdict: return run_ivar_verdict(cfg);
    case Command::ivar_spectrum: return run_ivar_spectrum(cfg);
    case Command::kgamma: return run_kgamma(cfg);
  }
  fail(Errc::config, "command: unsupported");
}

struct PendingFile {
  std::filesystem::path target;
  std::filesystem::path temp;
};

PendingFile stage(const std::string& path, const std::string& content) {
  PendingFile f{path, path + ".tmp"};
  std::ofstream os(f.temp, std::ios::binary | std::ios::trunc);
  if (!os) fail(Errc::io, "cannot open '" + f.temp.string() + "' for writing");
  os << content;
  os.close();
  if (!os) {
    std::error_code ec;
    std::filesystem::remove(f.temp, ec);
    fail(Errc::io, "failed writing '" + f.temp.string() + "'");
  }
  return f;
}

}  // namespace

RunOutput run(std::string_view command, std::string_view config_text,
              std::optional<std::string> out_path, std::optional<std::string> csv_path) {
  const RunConfig cfg = parse_config(command, config_text);
  RunOutput out;
  out.json_path = out_path ? out_path : cfg.json_path;
  out.csv_path = csv_path ? csv_path : cfg.csv_path;

  Result result = dispatch(cfg);
  if (out.csv_path) {
    require(result.csv.has_value(), Errc::config,
            "output.csv: command " + std::string(to_string(cfg.command)) + " has no CSV table");
    out.csv = std::move(result.csv);
  }

  Json report = Json::object();
  report["tool"] = "kernel-embed";
  report["command"] = std::string(to_string(cfg.command));
  Json prov = Json::object();
  prov["version"] = KEMBED_VERSION_STRING;
  prov["eigensolver"] = linalg::kEigensolverName;
  prov["probability_tolerance"] = kProbabilityTolerance;
  prov["psd_relative_tolerance"] = kPsdRelativeTolerance;
  report["provenance"] = std::move(prov);
  report["tunables"] = cfg.tunables.to_json();
  report["config"] = cfg.document;
  report["result"] = std::move(result.body);
  out.report = json::dump(report);
  return out;
}

RunOutput execute(std::string_view command, std::string_view config_text,
                  std::optional<std::string> out_path, std::optional<std::string> csv_path) {
  RunOutput out = run(command, config_text, std::move(out_path), std::move(csv_path));
  std::vector<PendingFile> staged;
  try {
    if (out.json_path) staged.push_back(stage(*out.json_path, out.report));
    if (out.csv_path) staged.push_back(stage(*out.csv_path, *out.csv));
    for (const auto& f : staged) {
      std::error_code ec;
      std::filesystem::rename(f.temp, f.target, ec);
      if (ec) fail(Errc::io, "cannot move report into '" + f.target.string() + "': " + ec.message());
    }
  } catch (...) {
    for (const auto& f : staged) {
      std::error_code ec;
      std::filesystem::remove(f.temp, ec);
    }
    throw;
  }
  return out;
}

}  // namespace kembed::cli
