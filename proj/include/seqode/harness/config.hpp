#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "seqode/error_norms.hpp"
#include "seqode/mesh.hpp"

namespace seqode {

struct InstanceSpec {
  std::string label = "lp_sin";  ///< lp_sin | lp_coupled | linear | finite | case1 | case2 | case3
  double p = 2.0;
  double lambda = 1.0;    ///< linear
  Index support = 8;      ///< finite
  Index case_dim = 4;     ///< case1 / case2: N
  double case_slope = kDefaultCase3Slope;  ///< case3: A
};

struct MeshSpec {
  MeshKind kind = MeshKind::uniform;
  double sigma = 1.5;  ///< graded
};

struct ScheduleSpec {
  std::string rule = "constant";  ///< constant | linear
  Index first = 0;
  Index last = 0;
};

/// Where A and B of the bound A N^{-(1-1/p)} + B / n come from.
struct ConstantsSpec {
  std::string source = "certified";  ///< certified | instance | explicit
  double A = 0.0;
  double B = 0.0;
};

struct ExperimentConfig {
  InstanceSpec instance;
  int r = 1;
  MeshSpec mesh;
  std::vector<Index> n;
  std::vector<Index> N;
  std::optional<ScheduleSpec> schedule;
  std::vector<double> epsilon;
  double cost_beta = 0.0;
  int samples_per_interval = 8;
  ErrorScope error_scope = ErrorScope::full;
  ConstantsSpec constants;
  std::optional<Case3Bounds> case3_bounds;
  Index csv_components = 8;
  std::uint64_t seed = 0;
  int threads = 1;
};

/// Throws ValidationError naming the offending field.
ExperimentConfig parse_config(const nlohmann::json& doc);
ExperimentConfig load_config(const std::string& path);
nlohmann::json to_json(const ExperimentConfig& config);

/// Field checks shared by parse_config and programmatic configs.
void validate(const ExperimentConfig& config);

}  // namespace seqode
