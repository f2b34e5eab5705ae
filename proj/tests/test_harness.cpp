#include <doctest.h>

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "seqode/harness/acceptance.hpp"
#include "seqode/harness/csv.hpp"
#include "seqode/harness/experiments.hpp"
#include "seqode/harness/parallel.hpp"

using namespace seqode;
using nlohmann::json;

namespace {

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path);
  std::stringstream out;
  out << in.rdbuf();
  return out.str();
}

std::string scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("seqode_test_" + name);
  std::filesystem::remove_all(dir);
  return dir.string();
}

std::string rejection(const json& doc) {
  try {
    parse_config(doc);
  } catch (const ValidationError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("shortest round-trip number formatting") {
  std::mt19937_64 rng(42);
  std::uniform_int_distribution<std::uint64_t> bits;
  for (int i = 0; i < 20000; ++i) {
    std::uint64_t u = bits(rng);
    double x;
    std::memcpy(&x, &u, sizeof x);
    if (!std::isfinite(x)) continue;
    const std::string s = format_number(x);
    double back = 0.0;
    std::from_chars(s.data(), s.data() + s.size(), back);
    CHECK(std::memcmp(&back, &x, sizeof x) == 0);
  }
  CHECK(format_number(0.1) == "0.1");
  CHECK(format_number(std::int64_t{42}) == "42");
  CHECK(format_number(std::nan("")) == "nan");
}

TEST_CASE("csv writer checks row width") {
  const std::string dir = scratch("csv");
  std::filesystem::create_directories(dir);
  const std::string path = dir + "/x.csv";
  {
    CsvWriter csv(path, {"a", "b"});
    csv << 1.5 << std::int64_t{2};
    csv.end_row();
    csv << 1.0;
    CHECK_THROWS(csv.end_row());
  }
  CHECK(slurp(path).rfind("a,b\n1.5,2\n", 0) == 0);
}

TEST_CASE("config rejection names the field") {
  CHECK(rejection({{"bogus", 1}}).find("config.bogus") != std::string::npos);
  CHECK(rejection({{"instance", {{"label", "nope"}}}}).find("config.instance.label") != std::string::npos);
  CHECK(rejection({{"instance", {{"p", 1.0}}}}).find("config.instance.p") != std::string::npos);
  CHECK(rejection({{"n", {4, 0}}}).find("config.n[1]") != std::string::npos);
  CHECK(rejection({{"n", "many"}}).find("config.n") != std::string::npos);
  CHECK(rejection({{"r", -1}}).find("config.r") != std::string::npos);
  CHECK(rejection({{"mesh", {{"kind", "graded"}, {"sigma", 3.0}}}}).find("config.mesh.sigma") != std::string::npos);
  CHECK(rejection({{"epsilon", {0.1, -0.1}}}).find("config.epsilon[1]") != std::string::npos);
  CHECK(rejection({{"schedule", {{"rule", "cubic"}, {"first", 2}}}}).find("config.schedule.rule") !=
        std::string::npos);
  CHECK(rejection({{"samples_per_interval", 1}}).find("config.samples_per_interval") != std::string::npos);
  CHECK(rejection({{"error_scope", "some"}}).find("config.error_scope") != std::string::npos);
  CHECK(rejection({{"constants", {{"A", 1.0}}}}).find("config.constants") != std::string::npos);
  CHECK(rejection({{"threads", 0}}).find("config.threads") != std::string::npos);
  CHECK(rejection({{"cost_beta", -1.0}}).find("config.cost_beta") != std::string::npos);
}

TEST_CASE("config round trip") {
  const json doc = {{"instance", {{"label", "lp_coupled"}, {"p", 3.0}}},
                    {"r", 2},
                    {"mesh", {{"kind", "graded"}, {"sigma", 1.25}}},
                    {"n", {8, 16}},
                    {"N", {32}},
                    {"schedule", {{"rule", "linear"}, {"first", 4}, {"last", 40}}},
                    {"epsilon", {0.1}},
                    {"cost_beta", 0.5},
                    {"constants", {{"A", 2.0}, {"B", 3.0}}},
                    {"case3", {{"M1", 0.1}, {"L1", 0.1}, {"D1", 0.1}}},
                    {"threads", 3}};
  const ExperimentConfig c = parse_config(doc);
  CHECK(to_json(parse_config(to_json(c))) == to_json(c));
  CHECK(c.schedule->last == 40);
  CHECK(c.constants.source == "explicit");
}

TEST_CASE("solve: bound check, determinism, and f = 0") {
  ExperimentConfig c = parse_config({{"instance", {{"label", "lp_sin"}}}, {"r", 1}, {"n", {64}}, {"N", {64}}});
  const std::string out1 = scratch("solve1");
  const std::string out2 = scratch("solve2");
  const json rec = cmd_solve(c, out1);
  cmd_solve(c, out2);
  CHECK(slurp(out1 + "/solve.csv") == slurp(out2 + "/solve.csv"));
  const auto space = WeightedSpace::power(2.0);
  const auto AB = constants_AB(2.0, lp_radius(space), space.weight_norm());
  const double err = rec["runs"][0]["error"];
  CHECK(err <= AB.A / 8 + AB.B / 64);
  CHECK(rec["runs"][0]["cost"] == rec["runs"][0]["formula_cost"]);
  CHECK(slurp(out1 + "/solve.csv").rfind("t,component,value\n", 0) == 0);

  // case1's first member has f = 0, so every sample equals eta (zero below N + 1).
  ExperimentConfig zero = parse_config({{"instance", {{"label", "case1"}, {"N", 2}}}, {"n", {4}}, {"N", {3}},
                                        {"csv_components", 3}});
  const std::string out3 = scratch("solve3");
  cmd_solve(zero, out3);
  const auto inst = build_instance(zero.instance, zero.r);
  std::istringstream lines(slurp(out3 + "/solve.csv"));
  std::string line;
  std::getline(lines, line);
  int rows = 0;
  while (std::getline(lines, line)) {
    const auto a = line.find(','), b = line.rfind(',');
    const Index j = std::stoll(line.substr(a + 1, b - a - 1));
    CHECK(std::stod(line.substr(b + 1)) == inst.eta(j));
    ++rows;
  }
  CHECK(rows > 0);
}

TEST_CASE("converge and truncate report fitted slopes") {
  ExperimentConfig c = parse_config({{"instance", {{"label", "lp_sin"}}},
                                     {"r", 2},
                                     {"n", {16, 32, 64, 128}},
                                     {"N", {4096}},
                                     {"error_scope", "computed"},
                                     {"threads", 2}});
  const json conv = cmd_converge(c, scratch("conv"));
  CHECK(conv["order"]["slope"].get<double>() >= 1.7);
  CHECK(conv["order"]["slope"].get<double>() <= 2.3);

  ExperimentConfig t = parse_config(
      {{"instance", {{"label", "lp_sin"}}}, {"r", 1}, {"n", {1024}}, {"N", {4, 16, 64, 256, 1024}}});
  const json tr = cmd_truncate(t, scratch("trunc"));
  CHECK(tr["slope_vs_N"]["slope"].get<double>() >= -0.65);
  CHECK(tr["slope_vs_N"]["slope"].get<double>() <= -0.35);

  // The finite instance has no tail: the error stops improving once N covers the support.
  ExperimentConfig f = parse_config({{"instance", {{"label", "finite"}, {"support", 8}}},
                                     {"r", 1}, {"n", {64}}, {"N", {8, 16, 64}}});
  const json flat = cmd_truncate(f, scratch("flat"));
  const double e8 = flat["runs"][0]["error"], e64 = flat["runs"][2]["error"];
  CHECK(e8 == e64);
}

TEST_CASE("workprecision on small targets") {
  ExperimentConfig c = parse_config({{"instance", {{"label", "lp_sin"}}}, {"r", 0}, {"cost_beta", 1.0},
                                     {"constants", "instance"}, {"epsilon", {0.0625, 0.03125, 0.015625}}});
  const json rec = cmd_workprecision(c, scratch("wp"));
  CHECK(rec["all_realized"] == true);
  CHECK(rec["all_within_epsilon"] == true);
  CHECK(rec["expected_exponent"] == 5.0);
  for (const auto& plan : rec["plans"]) CHECK(plan["grid"]["feasible"] == true);
  ExperimentConfig bad = c;
  bad.instance.label = "finite";
  CHECK_THROWS_AS(cmd_workprecision(bad, scratch("wp2")), ValidationError);
}

TEST_CASE("lowerbound witnesses") {
  ExperimentConfig c = parse_config({{"instance", {{"label", "case3"}}}, {"r", 1}, {"n", {32, 64, 128}},
                                     {"N", {4, 16384}}});
  const json rec = cmd_lowerbound(c, scratch("lb"));
  int case3 = 0;
  double lo = 1e300, hi = 0.0;
  for (const auto& row : rec["cases"]) {
    if (row["case"] == "I" && row["N"] == 4) CHECK(row["guaranteed_gap"].get<double>() == doctest::Approx(0.5));
    if (row.contains("identical")) CHECK(row["identical"] == true);
    if (row["case"] == "III") {
      ++case3;
      lo = std::min(lo, row["scaled_gap"].get<double>());
      hi = std::max(hi, row["scaled_gap"].get<double>());
    }
  }
  CHECK(case3 == 3);
  CHECK(hi / lo <= 2.0);
}

TEST_CASE("reference solution stands in for a closed form") {
  const auto inst = make_lp_sin(2.0);
  const Mesh mesh = Mesh::uniform(0.0, 1.0, 256);
  std::optional<Trajectory<double>> kept;
  run_kept(inst, mesh, TruncationSchedule::constant(256, 40), 3, PowerCost{}, {}, kept);
  const auto ref = reference_solution(std::make_shared<const Trajectory<double>>(std::move(*kept)), inst.space);
  CHECK(ref.component(3, 0.7) == doctest::Approx(lp_sin_first_component(0.7)).epsilon(1e-9));
  Vec block(5);
  ref.block(0.33, 38, block);
  CHECK(block(2) == doctest::Approx(lp_sin_first_component(0.33)).epsilon(1e-9));
  CHECK(block(3) == 0.0);
}

TEST_CASE("parallel_for covers every index and rethrows") {
  std::vector<int> hits(100, 0);
  parallel_for(hits.size(), 4, [&](std::size_t i) { hits[i] += 1; });
  CHECK(std::count(hits.begin(), hits.end(), 1) == 100);
  CHECK_THROWS_WITH(parallel_for(10, 3,
                                 [](std::size_t i) {
                                   if (i == 3 || i == 7) throw std::runtime_error("bad " + std::to_string(i));
                                 }),
                    "bad 3");
}

TEST_CASE("tampered tolerances make criteria fail") {
  AcceptanceOptions strict;
  strict.tol.order = 1e-4;
  CHECK_FALSE(run_criterion("C1", strict).passed);
  AcceptanceOptions squeezed;
  squeezed.tol.gap_ratio = 0.5;
  CHECK_FALSE(run_criterion("C5", squeezed).passed);
  AcceptanceOptions fine;
  CHECK(run_criterion("C6", fine).passed);
  CHECK(run_criterion("C5", fine).passed);
}
