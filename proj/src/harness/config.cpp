#include "seqode/harness/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace seqode {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& field, const std::string& what) {
  throw ValidationError("config." + field + ": " + what);
}

void reject_unknown(const json& obj, const std::string& where, const std::set<std::string>& known) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (!known.count(it.key())) {
      fail(where.empty() ? it.key() : where + "." + it.key(), "unknown field");
    }
  }
}

const json& object_at(const json& obj, const std::string& key, const std::string& field) {
  const json& value = obj.at(key);
  if (!value.is_object()) fail(field, "expected an object");
  return value;
}

double number(const json& value, const std::string& field) {
  if (!value.is_number()) fail(field, "expected a number");
  const double x = value.get<double>();
  if (!std::isfinite(x)) fail(field, "must be finite");
  return x;
}

std::int64_t integer(const json& value, const std::string& field) {
  if (!value.is_number_integer()) fail(field, "expected an integer");
  return value.get<std::int64_t>();
}

std::string text(const json& value, const std::string& field) {
  if (!value.is_string()) fail(field, "expected a string");
  return value.get<std::string>();
}

std::vector<Index> index_list(const json& value, const std::string& field) {
  if (!value.is_array()) fail(field, "expected a list of integers");
  std::vector<Index> out;
  for (std::size_t i = 0; i < value.size(); ++i) {
    out.push_back(integer(value[i], field + "[" + std::to_string(i) + "]"));
  }
  return out;
}

std::vector<double> number_list(const json& value, const std::string& field) {
  if (!value.is_array()) fail(field, "expected a list of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < value.size(); ++i) {
    out.push_back(number(value[i], field + "[" + std::to_string(i) + "]"));
  }
  return out;
}

void check_positive_list(const std::vector<Index>& values, const std::string& field) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] < 1) fail(field + "[" + std::to_string(i) + "]", "must be a positive integer");
  }
}

}  // namespace

void validate(const ExperimentConfig& c) {
  static const std::set<std::string> labels{"lp_sin", "lp_coupled", "linear", "finite",
                                            "case1",  "case2",      "case3"};
  if (!labels.count(c.instance.label)) {
    fail("instance.label", "unknown instance \"" + c.instance.label +
                               "\" (expected lp_sin, lp_coupled, linear, finite, case1, case2, case3)");
  }
  if (!(c.instance.p > 1.0)) fail("instance.p", "must exceed 1");
  if (c.instance.support < 1) fail("instance.support", "must be a positive integer");
  if (c.instance.case_dim < 1) fail("instance.N", "must be a positive integer");
  if (!(c.instance.case_slope > 0.0)) fail("instance.A", "must be positive");
  if (c.r < 0 || c.r > 8) fail("r", "must be an integer in [0, 8]");
  if (c.mesh.kind == MeshKind::graded && !(c.mesh.sigma >= 1.0 && c.mesh.sigma <= 2.0)) {
    fail("mesh.sigma", "must lie in [1, 2]");
  }
  check_positive_list(c.n, "n");
  check_positive_list(c.N, "N");
  if (c.schedule) {
    if (c.schedule->rule != "constant" && c.schedule->rule != "linear") {
      fail("schedule.rule", "expected \"constant\" or \"linear\"");
    }
    if (c.schedule->first < 1) fail("schedule.first", "must be a positive integer");
    if (c.schedule->last < 1) fail("schedule.last", "must be a positive integer");
  }
  for (std::size_t i = 0; i < c.epsilon.size(); ++i) {
    if (!(c.epsilon[i] > 0.0)) fail("epsilon[" + std::to_string(i) + "]", "must be positive");
  }
  if (!(c.cost_beta >= 0.0)) fail("cost_beta", "must be nonnegative");
  if (c.samples_per_interval < 2) fail("samples_per_interval", "must be at least 2");
  if (c.constants.source != "certified" && c.constants.source != "instance" &&
      c.constants.source != "explicit") {
    fail("constants.source", "expected \"certified\", \"instance\" or \"explicit\"");
  }
  if (c.constants.source == "explicit" && !(c.constants.A > 0.0 && c.constants.B > 0.0)) {
    fail("constants", "explicit A and B must be positive");
  }
  if (c.case3_bounds) {
    if (!(c.case3_bounds->M1 > 0.0)) fail("case3.M1", "must be positive");
    if (!(c.case3_bounds->L1 > 0.0)) fail("case3.L1", "must be positive");
    if (!(c.case3_bounds->D1 > 0.0)) fail("case3.D1", "must be positive");
  }
  if (c.csv_components < 1) fail("csv_components", "must be a positive integer");
  if (c.threads < 1) fail("threads", "must be a positive integer");
}

ExperimentConfig parse_config(const json& doc) {
  if (!doc.is_object()) fail("", "top level must be an object");
  reject_unknown(doc, "",
                 {"instance", "r", "mesh", "n", "N", "schedule", "epsilon", "cost_beta",
                  "samples_per_interval", "error_scope", "constants", "case3", "csv_components",
                  "seed", "threads"});
  ExperimentConfig c;
  if (doc.contains("instance")) {
    const json& inst = object_at(doc, "instance", "instance");
    reject_unknown(inst, "instance", {"label", "p", "lambda", "support", "N", "A"});
    if (inst.contains("label")) c.instance.label = text(inst["label"], "instance.label");
    if (inst.contains("p")) c.instance.p = number(inst["p"], "instance.p");
    if (inst.contains("lambda")) c.instance.lambda = number(inst["lambda"], "instance.lambda");
    if (inst.contains("support")) c.instance.support = integer(inst["support"], "instance.support");
    if (inst.contains("N")) c.instance.case_dim = integer(inst["N"], "instance.N");
    if (inst.contains("A")) c.instance.case_slope = number(inst["A"], "instance.A");
  }
  if (doc.contains("r")) c.r = static_cast<int>(integer(doc["r"], "r"));
  if (doc.contains("mesh")) {
    const json& mesh = object_at(doc, "mesh", "mesh");
    reject_unknown(mesh, "mesh", {"kind", "sigma"});
    if (mesh.contains("kind")) {
      const std::string kind = text(mesh["kind"], "mesh.kind");
      if (kind == "uniform") {
        c.mesh.kind = MeshKind::uniform;
      } else if (kind == "graded") {
        c.mesh.kind = MeshKind::graded;
      } else {
        fail("mesh.kind", "expected \"uniform\" or \"graded\", got \"" + kind + "\"");
      }
    }
    if (mesh.contains("sigma")) c.mesh.sigma = number(mesh["sigma"], "mesh.sigma");
  }
  if (doc.contains("n")) c.n = index_list(doc["n"], "n");
  if (doc.contains("N")) c.N = index_list(doc["N"], "N");
  if (doc.contains("schedule")) {
    const json& sched = object_at(doc, "schedule", "schedule");
    reject_unknown(sched, "schedule", {"rule", "first", "last"});
    ScheduleSpec spec;
    if (sched.contains("rule")) spec.rule = text(sched["rule"], "schedule.rule");
    if (!sched.contains("first")) fail("schedule.first", "missing");
    spec.first = integer(sched["first"], "schedule.first");
    spec.last = sched.contains("last") ? integer(sched["last"], "schedule.last") : spec.first;
    c.schedule = spec;
  }
  if (doc.contains("epsilon")) c.epsilon = number_list(doc["epsilon"], "epsilon");
  if (doc.contains("cost_beta")) c.cost_beta = number(doc["cost_beta"], "cost_beta");
  if (doc.contains("samples_per_interval")) {
    c.samples_per_interval =
        static_cast<int>(integer(doc["samples_per_interval"], "samples_per_interval"));
  }
  if (doc.contains("error_scope")) {
    try {
      c.error_scope = error_scope_from_string(text(doc["error_scope"], "error_scope"));
    } catch (const ValidationError& e) {
      fail("error_scope", e.what());
    }
  }
  if (doc.contains("constants")) {
    const json& value = doc["constants"];
    if (value.is_string()) {
      c.constants.source = value.get<std::string>();
    } else if (value.is_object()) {
      reject_unknown(value, "constants", {"A", "B"});
      if (!value.contains("A") || !value.contains("B")) fail("constants", "explicit form needs A and B");
      c.constants.source = "explicit";
      c.constants.A = number(value["A"], "constants.A");
      c.constants.B = number(value["B"], "constants.B");
    } else {
      fail("constants", "expected \"certified\", \"instance\" or {\"A\": .., \"B\": ..}");
    }
  }
  if (doc.contains("case3")) {
    const json& value = object_at(doc, "case3", "case3");
    reject_unknown(value, "case3", {"M1", "L1", "D1"});
    Case3Bounds bounds;
    for (const char* key : {"M1", "L1", "D1"}) {
      if (!value.contains(key)) fail(std::string("case3.") + key, "missing");
    }
    bounds.M1 = number(value["M1"], "case3.M1");
    bounds.L1 = number(value["L1"], "case3.L1");
    bounds.D1 = number(value["D1"], "case3.D1");
    c.case3_bounds = bounds;
  }
  if (doc.contains("csv_components")) c.csv_components = integer(doc["csv_components"], "csv_components");
  if (doc.contains("seed")) {
    const std::int64_t seed = integer(doc["seed"], "seed");
    if (seed < 0) fail("seed", "must be nonnegative");
    c.seed = static_cast<std::uint64_t>(seed);
  }
  if (doc.contains("threads")) c.threads = static_cast<int>(integer(doc["threads"], "threads"));
  validate(c);
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("config: cannot open " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ValidationError("config: " + path + " is not valid JSON: " + e.what());
  }
  return parse_config(doc);
}

json to_json(const ExperimentConfig& c) {
  json out;
  out["instance"] = {{"label", c.instance.label}, {"p", c.instance.p}, {"lambda", c.instance.lambda},
                     {"support", c.instance.support}, {"N", c.instance.case_dim},
                     {"A", c.instance.case_slope}};
  out["r"] = c.r;
  out["mesh"] = {{"kind", to_string(c.mesh.kind)}, {"sigma", c.mesh.sigma}};
  out["n"] = c.n;
  out["N"] = c.N;
  if (c.schedule) {
    out["schedule"] = {{"rule", c.schedule->rule}, {"first", c.schedule->first}, {"last", c.schedule->last}};
  }
  out["epsilon"] = c.epsilon;
  out["cost_beta"] = c.cost_beta;
  out["samples_per_interval"] = c.samples_per_interval;
  out["error_scope"] = to_string(c.error_scope);
  if (c.constants.source == "explicit") {
    out["constants"] = {{"A", c.constants.A}, {"B", c.constants.B}};
  } else {
    out["constants"] = c.constants.source;
  }
  if (c.case3_bounds) {
    out["case3"] = {{"M1", c.case3_bounds->M1}, {"L1", c.case3_bounds->L1}, {"D1", c.case3_bounds->D1}};
  }
  out["csv_components"] = c.csv_components;
  out["seed"] = c.seed;
  out["threads"] = c.threads;
  return out;
}

}  // namespace seqode
