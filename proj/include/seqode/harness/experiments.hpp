#pragma once

#include <memory>
#include <optional>
#include <string>

#include <json.hpp>

#include "seqode/analysis.hpp"
#include "seqode/error_norms.hpp"
#include "seqode/harness/config.hpp"

namespace seqode {

/// The instance named by the config. case1/case2 give the first member of the
/// pair, case3 the f = A e_1 member.
ProblemInstance<double> build_instance(const InstanceSpec& spec, int r);

Mesh build_mesh(const MeshSpec& spec, const ClassParams& params, Index n);

/// The configured schedule rule for n intervals, or the constant dimension N.
TruncationSchedule build_schedule(const ExperimentConfig& config, Index n, Index N);

/// Exact-solution stand-in backed by a stored reference trajectory. The tail is
/// the reference's own norm beyond the requested dimension.
ExactSolution reference_solution(std::shared_ptr<const Trajectory<double>> reference,
                                  const WeightedSpace& space);

/// One streamed solve with inline audits.
struct RunResult {
  Index n = 0;
  Index N = 0;  ///< max_k N_k
  bool constant_dim = true;
  double error = 0.0;  ///< NaN without an exact solution
  double worst_time = 0.0;
  double ball = 0.0;    ///< sampled max_t ||l(t) - eta||
  double radius = 0.0;  ///< radius_R of the class; 0 for non-members
  BoundReport bound;
  double cost = 0.0;
  double formula_cost = 0.0;  ///< sum_k c(M_k) N_k m(m+1)/2 recomputed from the schedule
  Index scalar_evaluations = 0;
  Index min_step_evaluations = 0;
  Index information_points = 0;
  double seconds = 0.0;

  bool ball_ok() const { return radius == 0.0 || ball <= radius; }
  /// Per-step scalar evaluations >= N (checked for constant schedules).
  bool condition_c() const { return !constant_dim || min_step_evaluations >= N; }
};

RunResult run_streamed(const ProblemInstance<double>& inst, const Mesh& mesh,
                       const TruncationSchedule& sched, int r, const PowerCost& cost,
                       const ErrorOptions& options);

/// The same run, keeping the trajectory as well.
RunResult run_kept(const ProblemInstance<double>& inst, const Mesh& mesh,
                   const TruncationSchedule& sched, int r, const PowerCost& cost,
                   const ErrorOptions& options, std::optional<Trajectory<double>>& trajectory);

/// Bitwise equality of knots and segment coefficients.
bool same_bits(const Trajectory<double>& x, const Trajectory<double>& y);

nlohmann::json to_json(const RunResult& run);

/// A and B per the configured source for the lp examples.
ErrorCoefficients bound_constants(const ConstantsSpec& spec, double p);

/// Subcommands. Each writes its CSV into out_dir and returns the run record.
nlohmann::json cmd_solve(const ExperimentConfig& config, const std::string& out_dir);
nlohmann::json cmd_converge(const ExperimentConfig& config, const std::string& out_dir);
nlohmann::json cmd_truncate(const ExperimentConfig& config, const std::string& out_dir);
nlohmann::json cmd_workprecision(const ExperimentConfig& config, const std::string& out_dir);
nlohmann::json cmd_lowerbound(const ExperimentConfig& config, const std::string& out_dir);

/// Realized runs above this many component-steps (n N) are planned but not run.
constexpr double kMaxRealizedWork = 1e10;

/// Outcome of the Case III construction for one (r, n).
struct Case3Witness {
  int r = 0;
  Index n = 0;
  double guaranteed_gap = 0.0;
  double scaled_gap = 0.0;  ///< gap n^{max(r,1)}
  Index trace_points = 0;
  Index bumps = 0;
  bool identical = false;  ///< perturbed run reproduced the trajectory byte for byte
};

Case3Witness case3_witness(const WeightedSpace& space, const ClassParams& base, int r, Index n,
                           double A, const Case3Bounds& bounds);

/// Outcome of a Case I or II pair run at dimension N.
struct PairWitness {
  Index N = 0;
  double guaranteed_gap = 0.0;
  double measured_gap = 0.0;  ///< sup_t ||z_first - z_second|| from the closed forms
  bool identical = false;     ///< same information digest and bit-identical output
  Index min_step_evaluations = 0;
};

PairWitness pair_witness(const AdversarialPair& pair, const ClassParams& base, Index n, int r);

}  // namespace seqode
