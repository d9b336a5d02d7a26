#include "rswan/run.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <set>

#include "rswan/error.hpp"
#include "rswan/extensions.hpp"
#include "rswan/logdiff.hpp"
#include "rswan/parse.hpp"
#include "rswan/reciprocity.hpp"
#include "rswan/rsw.hpp"
#include "rswan/witt.hpp"

namespace rswan {

namespace {

constexpr int kReportVersion = 1;
const char* const kWittOrder = "(a_{s-1},...,a_0); internal a_i has weight p^i";
const char* const kEmbedding = "1 -> p^(s-1)";

const std::set<std::string> kTasks = {"swan",       "rsw",  "duality", "reciprocity", "conductor-change",
                                      "thmB",       "thmC", "exp-congruences"};

struct NamedCharacter {
  std::string tower;
  Character chi;
};

struct Context {
  std::map<std::string, RingPtr> towers;
  std::map<std::string, NamedCharacter> characters;
  std::map<std::string, ExtensionMap> extensions;
  std::uint64_t seed = 0;
};

template <class T>
T get_or(const Json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ConfigError(std::string("field '") + key + "' has the wrong type");
  }
}

template <class T>
T require(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw ConfigError(where + ": missing field '" + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ConfigError(where + ": field '" + key + "' has the wrong type");
  }
}

RingPtr parse_tower(const Json& j, const std::string& name, const RunOptions& options) {
  if (!j.is_object()) throw ConfigError("tower '" + name + "' must be an object");
  FieldTower t;
  t.p = require<int>(j, "p", "tower '" + name + "'");
  t.k = get_or<int>(j, "k", 1);
  t.s = get_or<int>(j, "s", 1);
  t.variables = get_or<std::vector<std::string>>(j, "variables", {"t"});
  t.precision = options.precision ? *options.precision : get_or<int>(j, "precision", 64);
  try {
    t.validate();
  } catch (const Error& e) {
    throw ConfigError("tower '" + name + "': " + e.what());
  }
  return Ring::field(t);
}

Series parse_literal(const std::string& text, const RingPtr& ring, const std::string& where) {
  try {
    return parse_series(text, ring);
  } catch (const Error& e) {
    throw ConfigError(where + ": cannot parse '" + text + "': " + e.what());
  }
}

const RingPtr& tower_ref(const Context& ctx, const std::string& name, const std::string& where) {
  auto it = ctx.towers.find(name);
  if (it == ctx.towers.end()) throw ConfigError(where + ": undefined tower '" + name + "'");
  return it->second;
}

const NamedCharacter& character_ref(const Context& ctx, const std::string& name, const std::string& where) {
  auto it = ctx.characters.find(name);
  if (it == ctx.characters.end()) throw ConfigError(where + ": undefined character '" + name + "'");
  return it->second;
}

const ExtensionMap& extension_ref(const Context& ctx, const std::string& name, const std::string& where) {
  auto it = ctx.extensions.find(name);
  if (it == ctx.extensions.end()) throw ConfigError(where + ": undefined extension '" + name + "'");
  return it->second;
}

Context build_context(const Json& config, const RunOptions& options) {
  if (!config.is_object()) throw ConfigError("config must be a JSON object");
  if (config.contains("version") && config.at("version") != kReportVersion)
    throw ConfigError("unsupported config version");
  Context ctx;
  ctx.seed = options.seed ? *options.seed : get_or<std::uint64_t>(config, "seed", 0);
  if (config.contains("tower")) ctx.towers["default"] = parse_tower(config.at("tower"), "default", options);
  if (config.contains("towers")) {
    if (!config.at("towers").is_object()) throw ConfigError("'towers' must be an object");
    for (const auto& [name, j] : config.at("towers").items()) {
      if (ctx.towers.count(name)) throw ConfigError("tower '" + name + "' defined twice");
      ctx.towers[name] = parse_tower(j, name, options);
    }
  }
  if (config.contains("characters")) {
    for (const auto& [name, j] : config.at("characters").items()) {
      const std::string where = "character '" + name + "'";
      std::string tower = "default";
      Json comps = j;
      if (j.is_object()) {
        tower = get_or<std::string>(j, "tower", "default");
        comps = require<Json>(j, "components", where);
      }
      if (!comps.is_array()) throw ConfigError(where + ": components must be an array");
      const RingPtr& ring = tower_ref(ctx, tower, where);
      if (static_cast<int>(comps.size()) != ring->tower().s)
        throw ConfigError(where + ": expected " + std::to_string(ring->tower().s) + " components");
      std::vector<Series> printed;
      for (const auto& c : comps) {
        if (!c.is_string()) throw ConfigError(where + ": components must be series literals");
        printed.push_back(parse_literal(c.get<std::string>(), ring, where));
      }
      ctx.characters[name] = NamedCharacter{tower, Character{WittVector::from_print_order(ring, printed), false}};
    }
  }
  if (config.contains("extensions")) {
    for (const auto& [name, j] : config.at("extensions").items()) {
      const std::string where = "extension '" + name + "'";
      const RingPtr& src = tower_ref(ctx, get_or<std::string>(j, "source", "default"), where);
      const RingPtr& tgt = tower_ref(ctx, require<std::string>(j, "target", where), where);
      const Json images = require<Json>(j, "images", where);
      if (!images.is_object()) throw ConfigError(where + ": images must be an object");
      ExtensionMap phi{src, tgt, {}};
      for (const auto& var : src->tower().variables) {
        if (!images.contains(var)) throw ConfigError(where + ": no image for variable '" + var + "'");
        if (!images.at(var).is_string()) throw ConfigError(where + ": image of '" + var + "' must be a series literal");
        phi.images.push_back(parse_literal(images.at(var).get<std::string>(), tgt, where));
      }
      for (const auto& [var, _] : images.items())
        if (std::find(src->tower().variables.begin(), src->tower().variables.end(), var) == src->tower().variables.end())
          throw ConfigError(where + ": '" + var + "' is not a variable of the source tower");
      ctx.extensions[name] = std::move(phi);
    }
  }
  if (!config.contains("tasks") || !config.at("tasks").is_array()) throw ConfigError("config needs a 'tasks' array");

  // Reference checks before anything runs.
  std::size_t index = 0;
  for (const auto& task : config.at("tasks")) {
    const std::string where = "task #" + std::to_string(index++);
    const std::string kind = require<std::string>(task, "task", where);
    if (!kTasks.count(kind)) throw ConfigError(where + ": unknown task '" + kind + "'");
    if (kind == "swan" || kind == "rsw" || kind == "reciprocity" || kind == "conductor-change" || kind == "thmB")
      character_ref(ctx, require<std::string>(task, "character", where), where);
    if (kind == "conductor-change") {
      const auto& phi = extension_ref(ctx, require<std::string>(task, "extension", where), where);
      const auto& chi = character_ref(ctx, task.at("character").get<std::string>(), where);
      if (tower_ref(ctx, chi.tower, where) != phi.source)
        throw ConfigError(where + ": character and extension source live on different towers");
    }
    if (kind == "thmB") {
      if (task.contains("extensions")) {
        for (const auto& e : task.at("extensions")) extension_ref(ctx, e.get<std::string>(), where);
      } else {
        require<std::vector<std::int64_t>>(task, "taus", where);
      }
    }
    if (kind == "duality") {
      tower_ref(ctx, get_or<std::string>(task, "tower", "default"), where);
      require<std::int64_t>(task, "n", where);
      require<std::int64_t>(task, "m", where);
    }
    if (kind == "thmC") {
      const RingPtr& ring = tower_ref(ctx, get_or<std::string>(task, "tower", "default"), where);
      parse_literal(require<std::string>(task, "f", where), ring, where);
      require<std::vector<std::int64_t>>(task, "e", where);
    }
    if (kind == "exp-congruences") {
      const int p = require<int>(task, "p", where);
      if (p != 2 && p != 3 && p != 5) throw ConfigError(where + ": p must be 2, 3 or 5");
    }
  }
  return ctx;
}

std::string ratio_text(const Ratio& r) { return r.to_string(); }

struct Outcome {
  Json result = Json::object();
  Status status = Status::Pass;
};

Outcome run_swan(const Context& ctx, const Json& task) {
  const auto& nc = ctx.characters.at(task.at("character").get<std::string>());
  const Character red = asw_reduce(nc.chi.rep);
  Outcome o;
  o.result["sw"] = swan_conductor(red);
  o.result["reduced"] = render_witt(red.rep);
  return o;
}

Outcome run_rsw(const Context& ctx, const Json& task) {
  const auto& nc = ctx.characters.at(task.at("character").get<std::string>());
  const Character red = asw_reduce(nc.chi.rep);
  const RswValue v = rsw_char_p(red);
  const RingPtr& ring = red.rep.ring();
  const int d = ring->dimension();
  Outcome o;
  o.result["n"] = v.value.n;
  o.result["m"] = v.value.m;
  o.result["form"] = render_form(v.value);
  const WindowedForm lead = rsw_leading_term(v);
  o.result["leading"] = render_form(lead);
  const std::int64_t recovered = sw_from_rsw(v);
  o.result["sw_from_rsw"] = recovered;
  bool closed = true;
  if (d >= 2) closed = WindowedForm{rswan::d(v.value.form), v.value.n, v.value.m}.canonical().form.is_zero();
  o.result["closed"] = closed;
  const RswDecomposition dec = rsw_decompose(v);
  Json residual = Json::object(), residual_unit = Json::object();
  for (std::size_t l = 0; l < dec.residual.size(); ++l) {
    residual[ring->tower().variables[l]] = render_series(dec.residual[l]);
    residual_unit[ring->tower().variables[l]] = static_cast<bool>(dec.residual_unit[l]);
  }
  o.result["decomposition"] = {{"residual", residual},
                               {"residual_unit", residual_unit},
                               {"c", render_series(dec.c)},
                               {"c_unit", dec.c_unit}};
  const bool ok = recovered == v.value.n && closed && !lead.form.is_zero();
  o.status = ok ? Status::Pass : Status::Fail;
  return o;
}

Outcome run_duality(const Context& ctx, const Json& task) {
  const RingPtr& ring = ctx.towers.at(get_or<std::string>(task, "tower", "default"));
  const std::int64_t n = task.at("n").get<std::int64_t>();
  const std::int64_t m = task.at("m").get<std::int64_t>();
  int b = 0;
  for (std::int64_t pb = 1; pb < n - m; pb *= ring->prime()) ++b;
  b = get_or<int>(task, "b", b);
  const int d = ring->dimension();
  std::vector<int> degrees;
  if (task.contains("i"))
    degrees.push_back(task.at("i").get<int>());
  else
    for (int i = 0; i <= d; ++i) degrees.push_back(i);
  Outcome o;
  o.result["b"] = b;
  Json pairings = Json::array();
  bool all = true;
  for (int i : degrees) {
    const DualityMatrix M = duality_matrix(n, m, b, ring, i, d - i);
    const std::size_t rank = matrix_rank(M.entries);
    const bool inv = M.left.size() == M.right.size() && rank == M.left.size();
    all = all && inv;
    pairings.push_back({{"i", i},
                        {"j", d - i},
                        {"left_dim", M.left.size()},
                        {"right_dim", M.right.size()},
                        {"rank", rank},
                        {"invertible", inv}});
  }
  o.result["pairings"] = pairings;
  o.status = all ? Status::Pass : Status::Fail;
  return o;
}

Outcome run_reciprocity(const Context& ctx, const Json& task) {
  const auto& nc = ctx.characters.at(task.at("character").get<std::string>());
  const int samples = get_or<int>(task, "samples", 100);
  const std::uint64_t seed = get_or<std::uint64_t>(task, "seed", ctx.seed);
  const CharacterizationReport rep = verify_rsw_characterization(asw_reduce(nc.chi.rep), samples, seed);
  Outcome o;
  o.result["n"] = rep.n;
  o.result["m"] = rep.m;
  o.result["b"] = rep.b;
  o.result["embedding"] = kEmbedding;
  Json rows = Json::array();
  std::size_t mismatches = 0;
  for (const auto& s : rep.samples) {
    Json row = {{"alpha", s.alpha}, {"lhs", s.lhs}, {"rhs", s.rhs}};
    if (s.schmid) row["schmid"] = *s.schmid;
    if (!s.equal()) ++mismatches;
    rows.push_back(row);
  }
  o.result["samples"] = rep.samples.size();
  o.result["mismatches"] = mismatches;
  o.result["records"] = rows;
  o.status = mismatches == 0 ? Status::Pass : Status::Fail;
  return o;
}

Outcome run_conductor_change(const Context& ctx, const Json& task) {
  const auto& nc = ctx.characters.at(task.at("character").get<std::string>());
  const auto& phi = ctx.extensions.at(task.at("extension").get<std::string>());
  const ConductorChangeReport rep = conductor_change(nc.chi, phi);
  Outcome o;
  o.result["e"] = rep.e;
  o.result["delta_tor"] = rep.delta;
  o.result["sw_K"] = rep.sw_k;
  o.result["hypothesis"] = rep.hypothesis;
  o.result["predicted_sw_L"] = rep.predicted;
  o.result["direct_sw_L"] = rep.direct;
  o.status = rep.status;
  return o;
}

Json ratio_rows(const std::vector<RatioRow>& rows, bool with_expected) {
  Json out = Json::array();
  for (const auto& r : rows) {
    Json row = {{"e", r.e}, {"sw", r.sw}, {"ratio", ratio_text(r.ratio)}};
    if (with_expected && r.expected_known) row["expected"] = ratio_text(r.expected);
    out.push_back(row);
  }
  return out;
}

Outcome run_thmB(const Context& ctx, const Json& task) {
  const auto& nc = ctx.characters.at(task.at("character").get<std::string>());
  std::vector<ExtensionMap> family;
  bool canned = false;
  if (task.contains("extensions")) {
    for (const auto& e : task.at("extensions")) family.push_back(ctx.extensions.at(e.get<std::string>()));
  } else {
    canned = true;
    family = thmB_family(nc.chi.rep.ring(), task.at("taus").get<std::vector<std::int64_t>>(),
                         get_or<std::vector<std::string>>(task, "target_variables", {"v", "w"}));
  }
  const ThmBReport rep = thmB_ratio_experiment(nc.chi, family, canned);
  Outcome o;
  o.result["n"] = rep.n;
  o.result["c_unit"] = rep.c_unit;
  o.result["residual_unit"] = rep.residual_unit;
  o.result["rows"] = ratio_rows(rep.rows, true);
  o.result["max_ratio"] = ratio_text(rep.max_ratio);
  o.result["all_bounded"] = rep.all_bounded;
  o.result["all_expected"] = rep.all_expected;
  o.status = rep.status;
  return o;
}

Outcome run_thmC(const Context& ctx, const Json& task) {
  const RingPtr& ring = ctx.towers.at(get_or<std::string>(task, "tower", "default"));
  const Series f = parse_series(task.at("f").get<std::string>(), ring);
  const CurveReport rep = curve_ratio_experiment(f, get_or<std::int64_t>(task, "x0", 0),
                                                 task.at("e").get<std::vector<std::int64_t>>(),
                                                 get_or<std::string>(task, "curve_variable", "u"));
  Outcome o;
  o.result["sw_D"] = rep.sw_d;
  o.result["rows"] = ratio_rows(rep.rows, false);
  o.result["all_bounded"] = rep.all_bounded;
  o.result["approaches"] = rep.approaches;
  o.status = rep.status;
  return o;
}

Outcome run_exp(const Json& task) {
  const int p = task.at("p").get<int>();
  const ExpCongruenceReport rep = check_exp_congruences(p, get_or<int>(task, "M", p));
  const char* names[3] = {"additivity", "moebius-product", "log-derivative"};
  Outcome o;
  o.result["p"] = p;
  o.result["M"] = rep.degree_bound;
  Json list = Json::array();
  bool all = true;
  for (int i = 0; i < 3; ++i) {
    list.push_back({{"congruence", names[i]},
                    {"status", to_string(rep.pass[static_cast<std::size_t>(i)] ? Status::Pass : Status::Fail)},
                    {"detail", rep.detail[static_cast<std::size_t>(i)]}});
    all = all && rep.pass[static_cast<std::size_t>(i)];
  }
  o.result["congruences"] = list;
  o.result["literal_unit_form"] = rep.literal_unit_form;
  o.result["product_p_integral"] = rep.product_p_integral;
  o.status = all ? Status::Pass : Status::Fail;
  return o;
}

Outcome execute(const Context& ctx, const Json& task) {
  const std::string kind = task.at("task").get<std::string>();
  if (kind == "swan") return run_swan(ctx, task);
  if (kind == "rsw") return run_rsw(ctx, task);
  if (kind == "duality") return run_duality(ctx, task);
  if (kind == "reciprocity") return run_reciprocity(ctx, task);
  if (kind == "conductor-change") return run_conductor_change(ctx, task);
  if (kind == "thmB") return run_thmB(ctx, task);
  if (kind == "thmC") return run_thmC(ctx, task);
  return run_exp(task);
}

// Precision budget of the tower a task works in, when there is one.
Json task_precision(const Context& ctx, const Json& task) {
  if (task.contains("character")) {
    const auto& nc = ctx.characters.at(task.at("character").get<std::string>());
    return ctx.towers.at(nc.tower)->precision();
  }
  if (task.at("task") == "duality" || task.at("task") == "thmC")
    return ctx.towers.at(get_or<std::string>(task, "tower", "default"))->precision();
  return nullptr;
}

}  // namespace

Json run_config(const Json& config, const RunOptions& options) {
  const Context ctx = build_context(config, options);
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  Json report;
  report["version"] = kReportVersion;
  report["conventions"] = {{"witt_order", kWittOrder}, {"fp_embedding", kEmbedding}};
  report["seed"] = ctx.seed;
  Json tasks = Json::array();
  Json timing = Json::array();
  std::size_t index = 0;
  for (const auto& task : config.at("tasks")) {
    const std::string kind = task.at("task").get<std::string>();
    Json rec;
    rec["id"] = get_or<std::string>(task, "id", kind + "#" + std::to_string(index));
    rec["task"] = kind;
    rec["input"] = task;
    rec["precision"] = task_precision(ctx, task);
    const auto t0 = Clock::now();
    try {
      Outcome o = execute(ctx, task);
      if (task.contains("expect")) {
        Json mismatch = Json::array();
        for (const auto& [key, want] : task.at("expect").items())
          if (!o.result.contains(key) || o.result.at(key) != want) mismatch.push_back(key);
        if (!mismatch.empty()) {
          o.status = Status::Fail;
          rec["expect_mismatch"] = mismatch;
        }
      }
      rec["status"] = to_string(o.status);
      rec["result"] = std::move(o.result);
    } catch (const Error& e) {
      rec["status"] = to_string(Status::Fail);
      rec["error"] = {{"kind", e.kind()}, {"message", e.what()}};
    } catch (const std::exception& e) {
      rec["status"] = to_string(Status::Fail);
      rec["error"] = {{"kind", "InternalError"}, {"message", e.what()}};
    }
    const double ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
    timing.push_back({{"id", rec["id"]}, {"ms", ms}});
    tasks.push_back(std::move(rec));
    ++index;
  }
  report["tasks"] = std::move(tasks);
  report["timing"] = {{"total_ms", std::chrono::duration<double, std::milli>(Clock::now() - start).count()},
                      {"tasks", std::move(timing)}};
  return report;
}

Json report_body(const Json& report) {
  Json body = report;
  body.erase("timing");
  return body;
}

bool report_has_failures(const Json& report) {
  for (const auto& rec : report.at("tasks"))
    if (rec.at("status") == "FAIL") return true;
  return false;
}

Json check_all(int p, const RunOptions& options) { return run_config(catalog_config(p), options); }

}  // namespace rswan
