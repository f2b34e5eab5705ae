#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "seqode/problem_class.hpp"
#include "seqode/space.hpp"

namespace seqode {

/// One argument passed to the right-hand side: its first raw coordinate and
/// the number of scalar component evaluations made there.
struct TracePoint {
  double first_coordinate = 0.0;
  Index evaluations = 0;
};

/// Scalar-evaluation accounting: per step l_k and M_k, total sum c(M_k) l_k,
/// and (optionally) the evaluation-point trace plus a digest of every value
/// returned by the right-hand side.
class CostLedger {
 public:
  static constexpr Index kDefaultTraceLimit = Index{1} << 22;

  explicit CostLedger(PowerCost cost = {}, bool record_trace = false,
                      Index trace_limit = kDefaultTraceLimit);

  void begin_step(Index arg_dim);
  void add_evaluations(double first_coordinate, Index count);
  void mix_values(std::span<const double> values);

  Index steps() const { return static_cast<Index>(evaluations_.size()); }
  const std::vector<Index>& evaluations() const { return evaluations_; }
  const std::vector<Index>& arg_dims() const { return arg_dims_; }
  Index information_points() const { return information_points_; }
  Index scalar_evaluations() const;
  double total() const;
  const PowerCost& cost() const { return cost_; }

  bool recording() const { return record_trace_; }
  const std::vector<TracePoint>& trace() const { return trace_; }
  /// Number of scalar evaluations covered by the stored trace.
  Index trace_length() const;
  bool trace_truncated() const { return trace_truncated_; }
  std::uint64_t information_digest() const { return digest_; }

 private:
  PowerCost cost_;
  bool record_trace_;
  Index trace_limit_;
  bool trace_truncated_ = false;
  std::vector<Index> evaluations_;
  std::vector<Index> arg_dims_;
  std::vector<TracePoint> trace_;
  Index information_points_ = 0;
  std::uint64_t digest_ = 0xcbf29ce484222325ULL;
};

}  // namespace seqode
