#include "config.hpp"

#include <array>
#include <cmath>
#include <initializer_list>
#include <utility>

#include "kembed/error.hpp"
#include "kembed/expr.hpp"

namespace kembed::cli {

namespace {

constexpr std::array<std::pair<Command, std::string_view>, 7> kCommands{{
    {Command::gram, "gram"},
    {Command::spectrum, "spectrum"},
    {Command::diagnose, "diagnose"},
    {Command::seq_example, "seq-example"},
    {Command::ivar_verdict, "ivar-verdict"},
    {Command::ivar_spectrum, "ivar-spectrum"},
    {Command::kgamma, "kgamma"},
}};

constexpr std::size_t kMaxLevel = 8192;

[[noreturn]] void bad(const std::string& field, const std::string& what) {
  fail(Errc::config, field + ": " + what);
}

std::string join(const std::string& path, std::string_view key) {
  return path.empty() ? std::string(key) : path + "." + std::string(key);
}

void only_keys(const Json& obj, const std::string& path, std::initializer_list<std::string_view> keys) {
  if (!obj.is_object()) bad(path, "expected an object");
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool known = false;
    for (auto k : keys) known = known || it.key() == k;
    if (!known) bad(join(path, it.key()), "unknown field");
  }
}

const Json* find(const Json& obj, std::string_view key) {
  auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

const Json& need(const Json& obj, std::string_view key, const std::string& path) {
  const Json* v = find(obj, key);
  if (!v) bad(join(path, key), "missing required field");
  return *v;
}

double number(const Json& v, const std::string& field) {
  if (!v.is_number()) bad(field, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) bad(field, "expected a finite number");
  return x;
}

std::size_t count(const Json& v, const std::string& field, std::size_t lo, std::size_t hi) {
  if (!v.is_number_integer()) bad(field, "expected an integer");
  if (v.is_number_unsigned()) {
    const auto x = v.get<std::uint64_t>();
    if (x < lo || x > hi)
      bad(field, "must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    return static_cast<std::size_t>(x);
  }
  const auto x = v.get<std::int64_t>();
  if (x < 0 || static_cast<std::uint64_t>(x) < lo || static_cast<std::uint64_t>(x) > hi)
    bad(field, "must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  return static_cast<std::size_t>(x);
}

const std::string& text(const Json& v, const std::string& field) {
  if (!v.is_string()) bad(field, "expected a string");
  return v.get_ref<const std::string&>();
}

bool boolean(const Json& v, const std::string& field) {
  if (!v.is_boolean()) bad(field, "expected true or false");
  return v.get<bool>();
}

std::vector<double> numbers(const Json& v, const std::string& field) {
  if (!v.is_array()) bad(field, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i)
    out.push_back(number(v[i], field + "[" + std::to_string(i) + "]"));
  return out;
}

// Runs a library constructor and reports its invalid_argument under `field`.
template <class F>
auto in_field(const std::string& field, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    if (e.code() == Errc::invalid_argument) bad(field, e.what());
    throw;
  }
}

Sequence expression(const Json& v, const std::string& field, std::string_view variable) {
  const std::string& t = text(v, field);
  return in_field(field, [&] { return expr::sequence(t, variable); });
}

Justified justified(const Json& v, const std::string& field) {
  only_keys(v, field, {"value", "justification"});
  Justified j;
  j.value = boolean(need(v, "value", field), join(field, "value"));
  j.justification = text(need(v, "justification", field), join(field, "justification"));
  if (j.justification.empty()) bad(join(field, "justification"), "must not be empty");
  return j;
}

Domain domain_of(const Json& v, const std::string& field) {
  if (v.is_string()) {
    const std::string& s = v.get_ref<const std::string&>();
    if (s == "naturals") return Domain::naturals();
    if (s == "real_line") return Domain::real_line();
    bad(field, "expected \"naturals\", \"real_line\" or {\"a\", \"b\"}");
  }
  only_keys(v, field, {"a", "b"});
  const double a = number(need(v, "a", field), join(field, "a"));
  const double b = number(need(v, "b", field), join(field, "b"));
  if (!(a < b)) bad(field, "need a < b");
  return Domain::interval(a, b);
}

Kernel kernel_of(const Json& v, const std::string& path) {
  only_keys(v, path, {"name", "params", "nu", "inner"});
  const std::string& name = text(need(v, "name", path), join(path, "name"));
  Params params;
  if (const Json* p = find(v, "params")) {
    only_keys(*p, join(path, "params"), {"sigma"});
    for (auto it = p->begin(); it != p->end(); ++it)
      params.emplace(it.key(), number(it.value(), join(join(path, "params"), it.key())));
  }
  std::optional<Sequence> nu;
  if (const Json* n = find(v, "nu")) nu = expression(*n, join(path, "nu"), "i");
  std::optional<Kernel> inner;
  if (const Json* in = find(v, "inner")) inner = kernel_of(*in, join(path, "inner"));
  return in_field(path, [&] { return make_kernel(name, params, nu, inner ? &*inner : nullptr); });
}

ProductAnnotations annotations_of(const Json& v, const std::string& path, ProductAnnotations base) {
  only_keys(v, path,
            {"gamma_limit", "gamma_summable", "nonincreasing", "large_indices", "tail_majorant"});
  if (const Json* x = find(v, "gamma_limit")) base.gamma_limit = number(*x, join(path, "gamma_limit"));
  if (const Json* x = find(v, "gamma_summable"))
    base.gamma_summable = justified(*x, join(path, "gamma_summable"));
  if (const Json* x = find(v, "nonincreasing"))
    base.nonincreasing = boolean(*x, join(path, "nonincreasing"));
  if (const Json* x = find(v, "large_indices")) {
    const std::string f = join(path, "large_indices");
    if (!x->is_array()) bad(f, "expected an array of indices");
    std::vector<std::uint32_t> l;
    for (std::size_t i = 0; i < x->size(); ++i)
      l.push_back(static_cast<std::uint32_t>(count((*x)[i], f + "[" + std::to_string(i) + "]", 1, 1'000'000)));
    base.large_indices = std::move(l);
  }
  if (const Json* x = find(v, "tail_majorant"))
    base.tail_majorant = expression(*x, join(path, "tail_majorant"), "J");
  return base;
}

// "geometric(0.5)" -> 0.5
std::optional<double> rule_argument(const std::string& rule, std::string_view prefix,
                                    const std::string& field) {
  if (rule.rfind(prefix, 0) != 0 || rule.back() != ')') return std::nullopt;
  const std::string inner = rule.substr(prefix.size(), rule.size() - prefix.size() - 1);
  try {
    std::size_t used = 0;
    const double q = std::stod(inner, &used);
    if (used != inner.size()) bad(field, "malformed argument in '" + rule + "'");
    return q;
  } catch (const std::logic_error&) {
    bad(field, "malformed argument in '" + rule + "'");
  }
}

}  // namespace

std::optional<Command> parse_command(std::string_view name) {
  for (const auto& [c, n] : kCommands)
    if (n == name) return c;
  return std::nullopt;
}

std::string_view to_string(Command c) {
  for (const auto& [k, n] : kCommands)
    if (k == c) return n;
  return "unknown";
}

Json Tunables::to_json() const {
  Json j = Json::object();
  j["horizon"] = horizon;
  j["levels"] = levels;
  j["top_n"] = top_n;
  j["truncation"] = truncation ? Json(*truncation) : Json(nullptr);
  j["stabilization_threshold"] = stabilization_threshold;
  j["eigenvalues"] = eigenvalues ? Json(*eigenvalues) : Json(nullptr);
  j["eigen_count"] = eigen_count;
  j["assume_l2_orthogonal"] = assume_l2_orthogonal;
  return j;
}

RunConfig parse_config(std::string_view command, std::string_view text_in) {
  const auto cmd = parse_command(command);
  if (!cmd) bad("command", "unknown command '" + std::string(command) + "'");

  Json doc;
  try {
    doc = Json::parse(text_in);
  } catch (const nlohmann::json::parse_error& e) {
    bad("config", std::string("not valid JSON: ") + e.what());
  }
  only_keys(doc, "config",
            {"command", "kernel", "measure", "weights", "norm", "norm_sq", "pair", "points", "x",
             "y", "x_tail", "tunables", "output"});
  if (const Json* c = find(doc, "command"))
    if (text(*c, "command") != command)
      bad("command", "config names '" + c->get<std::string>() + "' but '" + std::string(command) +
                         "' was requested");

  RunConfig cfg{*cmd, doc, {}, std::nullopt, std::nullopt};
  Tunables& t = cfg.tunables;
  if (const Json* tv = find(doc, "tunables")) {
    const std::string p = "tunables";
    only_keys(*tv, p,
              {"horizon", "levels", "top_n", "truncation", "stabilization_threshold",
               "eigenvalues", "eigen_count", "assume_l2_orthogonal"});
    if (const Json* x = find(*tv, "horizon")) t.horizon = count(*x, "tunables.horizon", 10, 100'000'000);
    if (const Json* x = find(*tv, "levels")) {
      if (!x->is_array() || x->empty()) bad("tunables.levels", "expected a nonempty array");
      t.levels.clear();
      for (std::size_t i = 0; i < x->size(); ++i) {
        const std::size_t l = count((*x)[i], "tunables.levels[" + std::to_string(i) + "]", 1, kMaxLevel);
        if (!t.levels.empty() && l <= t.levels.back())
          bad("tunables.levels", "levels must be strictly increasing");
        t.levels.push_back(l);
      }
    }
    if (const Json* x = find(*tv, "top_n")) t.top_n = count(*x, "tunables.top_n", 1, 1'000'000);
    if (const Json* x = find(*tv, "truncation"))
      t.truncation = count(*x, "tunables.truncation", 0, 1'000'000);
    if (const Json* x = find(*tv, "stabilization_threshold")) {
      t.stabilization_threshold = number(*x, "tunables.stabilization_threshold");
      if (!(t.stabilization_threshold > 0.0 && t.stabilization_threshold < 1.0))
        bad("tunables.stabilization_threshold", "must lie in (0, 1)");
    }
    if (const Json* x = find(*tv, "eigenvalues")) {
      t.eigenvalues = numbers(*x, "tunables.eigenvalues");
      if (t.eigenvalues->empty()) bad("tunables.eigenvalues", "must not be empty");
    }
    if (const Json* x = find(*tv, "eigen_count")) t.eigen_count = count(*x, "tunables.eigen_count", 1, 1000);
    if (const Json* x = find(*tv, "assume_l2_orthogonal"))
      t.assume_l2_orthogonal = boolean(*x, "tunables.assume_l2_orthogonal");
  }
  if (const Json* o = find(doc, "output")) {
    only_keys(*o, "output", {"json", "csv"});
    if (const Json* x = find(*o, "json")) cfg.json_path = text(*x, "output.json");
    if (const Json* x = find(*o, "csv")) cfg.csv_path = text(*x, "output.csv");
  }
  return cfg;
}

Kernel config_kernel(const RunConfig& cfg) {
  return kernel_of(need(cfg.document, "kernel", ""), "kernel");
}

DiscreteMeasure config_measure(const RunConfig& cfg, const Domain& default_domain) {
  const std::string p = "measure";
  const Json& v = need(cfg.document, "measure", "");
  if (!v.is_object()) bad(p, "expected an object");
  const Json* kind = find(v, "kind");
  const std::string k = kind ? text(*kind, "measure.kind") : std::string("atoms");
  if (k == "grid") {
    only_keys(v, p, {"kind", "a", "b", "m"});
    const double a = number(need(v, "a", p), "measure.a");
    const double b = number(need(v, "b", p), "measure.b");
    const std::size_t m = count(need(v, "m", p), "measure.m", 1, kMaxLevel);
    return in_field(p, [&] { return uniform_grid_measure(a, b, m); });
  }
  if (k == "atoms") {
    only_keys(v, p, {"kind", "atoms", "weights", "domain"});
    auto atoms = numbers(need(v, "atoms", p), "measure.atoms");
    auto weights = numbers(need(v, "weights", p), "measure.weights");
    const Domain d = find(v, "domain") ? domain_of(v["domain"], "measure.domain") : default_domain;
    return in_field(p, [&] { return atomic_measure(std::move(atoms), std::move(weights), d); });
  }
  if (k == "sequence") {
    only_keys(v, p, {"kind", "weights", "n"});
    const Sequence w = expression(need(v, "weights", p), "measure.weights", "i");
    const std::size_t n = count(need(v, "n", p), "measure.n", 1, kMaxLevel);
    return in_field(p, [&] { return sequence_measure(w, n); });
  }
  bad("measure.kind", "expected \"grid\", \"atoms\" or \"sequence\"");
}

RefinementLadder config_ladder(const RunConfig& cfg, const Kernel& kernel) {
  const std::string p = "measure";
  const Json& v = need(cfg.document, "measure", "");
  if (!v.is_object()) bad(p, "expected an object");
  const Json* kind = find(v, "kind");
  const std::string k = kind ? text(*kind, "measure.kind") : std::string();
  if (k == "grid") {
    only_keys(v, p, {"kind", "a", "b", "m"});
    const double a = number(need(v, "a", p), "measure.a");
    const double b = number(need(v, "b", p), "measure.b");
    if (!(a < b)) bad(p, "need a < b");
    return grid_ladder(kernel, a, b, cfg.tunables.levels);
  }
  if (k == "sequence") {
    only_keys(v, p, {"kind", "weights", "n"});
    return truncation_ladder(kernel, expression(need(v, "weights", p), "measure.weights", "i"),
                             cfg.tunables.levels);
  }
  bad("measure.kind", "diagnose refines a \"grid\" or \"sequence\" measure");
}

WeightSchema config_weights(const RunConfig& cfg) {
  const std::string p = "weights";
  const Json& v = need(cfg.document, "weights", "");
  only_keys(v, p, {"product", "explicit"});
  if (v.size() != 1) bad(p, "give exactly one of \"product\" or \"explicit\"");

  if (const Json* e = find(v, "explicit")) {
    const std::string f = "weights.explicit";
    if (!e->is_array()) bad(f, "expected an array of [[u...], gamma] pairs");
    std::vector<std::pair<Subset, double>> entries;
    for (std::size_t i = 0; i < e->size(); ++i) {
      const std::string fi = f + "[" + std::to_string(i) + "]";
      const Json& item = (*e)[i];
      if (!item.is_array() || item.size() != 2 || !item[0].is_array())
        bad(fi, "expected [[u...], gamma]");
      std::vector<std::uint32_t> elems;
      for (std::size_t k = 0; k < item[0].size(); ++k)
        elems.push_back(static_cast<std::uint32_t>(
            count(item[0][k], fi + "[0][" + std::to_string(k) + "]", 1, 1'000'000'000)));
      Subset u = in_field(fi, [&] { return Subset(std::move(elems)); });
      entries.emplace_back(std::move(u), number(item[1], fi + "[1]"));
    }
    return in_field(f, [&] { return WeightSchema::explicit_list(std::move(entries)); });
  }

  const std::string f = "weights.product";
  const Json& prod = v["product"];
  only_keys(prod, f, {"rule", "annotations"});
  const std::string& rule = text(need(prod, "rule", f), f + ".rule");
  const Json* ann = find(prod, "annotations");

  std::optional<WeightSchema> builtin;
  if (rule == "pow2") builtin = WeightSchema::pow2();
  else if (rule == "inverse_square") builtin = WeightSchema::inverse_square();
  else if (auto q = rule_argument(rule, "geometric(", f + ".rule"))
    builtin = in_field(f + ".rule", [&] { return WeightSchema::geometric(*q); });
  else if (auto c = rule_argument(rule, "constant(", f + ".rule"))
    builtin = in_field(f + ".rule", [&] { return WeightSchema::constant(*c); });

  if (builtin) {
    if (!ann) return *builtin;
    const ProductWeights& pw = builtin->product_weights();
    auto merged = annotations_of(*ann, f + ".annotations", pw.annotations);
    return in_field(f, [&] { return WeightSchema::product(pw.gamma, std::move(merged)); });
  }
  Sequence gamma = expression(prod["rule"], f + ".rule", "j");
  auto a = ann ? annotations_of(*ann, f + ".annotations", {}) : ProductAnnotations{};
  return in_field(f, [&] { return WeightSchema::product(std::move(gamma), std::move(a)); });
}

std::optional<double> config_norm_sq(const RunConfig& cfg) {
  const Json* n = find(cfg.document, "norm");
  const Json* n2 = find(cfg.document, "norm_sq");
  if (n && n2) bad("norm", "give at most one of \"norm\" and \"norm_sq\"");
  if (n) {
    const double c = number(*n, "norm");
    if (c < 0.0) bad("norm", "must be nonnegative");
    return c * c;
  }
  if (n2) {
    const double c2 = number(*n2, "norm_sq");
    if (c2 < 0.0) bad("norm_sq", "must be nonnegative");
    return c2;
  }
  return std::nullopt;
}

SequencePair config_pair(const RunConfig& cfg) {
  const std::string p = "pair";
  const Json& v = need(cfg.document, "pair", "");
  if (v.is_string()) {
    if (v.get<std::string>() == "log_example") return log_example();
    bad(p, "unknown built-in pair '" + v.get<std::string>() + "'");
  }
  if (!v.is_object()) bad(p, "expected \"log_example\", {\"equal\": ...} or {\"mu\", \"nu\"}");
  if (const Json* e = find(v, "equal")) {
    only_keys(v, p, {"equal"});
    return equal_pair(expression(*e, "pair.equal", "i"));
  }
  only_keys(v, p, {"mu", "nu", "annotations"});
  SequencePair pair;
  pair.mu = expression(need(v, "mu", p), "pair.mu", "i");
  pair.nu = expression(need(v, "nu", p), "pair.nu", "i");
  if (const Json* a = find(v, "annotations")) {
    const std::string f = "pair.annotations";
    only_keys(*a, f, {"ratio_limit", "ratio_sup_finite", "ratio_sum_divergent", "ratio_sq_sum_divergent"});
    auto& ann = pair.annotations;
    if (const Json* x = find(*a, "ratio_limit")) ann.ratio_limit = number(*x, f + ".ratio_limit");
    if (const Json* x = find(*a, "ratio_sup_finite"))
      ann.ratio_sup_finite = boolean(*x, f + ".ratio_sup_finite");
    if (const Json* x = find(*a, "ratio_sum_divergent"))
      ann.ratio_sum_divergent = justified(*x, f + ".ratio_sum_divergent");
    if (const Json* x = find(*a, "ratio_sq_sum_divergent"))
      ann.ratio_sq_sum_divergent = justified(*x, f + ".ratio_sq_sum_divergent");
  }
  return pair;
}

std::vector<double> config_points(const RunConfig& cfg, const char* key) {
  return numbers(need(cfg.document, key, ""), key);
}

PointSequence config_x_sequence(const RunConfig& cfg, std::vector<double> prefix) {
  PointSequence x;
  x.prefix = std::move(prefix);
  if (const Json* t = find(cfg.document, "x_tail")) {
    const std::string p = "x_tail";
    only_keys(*t, p, {"constant", "diag_upper", "diag_lower"});
    if (const Json* c = find(*t, "constant")) x.constant_tail = number(*c, p + ".constant");
    if (const Json* c = find(*t, "diag_upper")) x.diag_upper = number(*c, p + ".diag_upper");
    if (const Json* c = find(*t, "diag_lower")) x.diag_lower = number(*c, p + ".diag_lower");
  }
  return x;
}

}  // namespace kembed::cli
