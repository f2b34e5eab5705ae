#pragma once

#include <vector>

#include "seqode/instances.hpp"
#include "seqode/integrator.hpp"

namespace seqode {

/// full: the whole norm, with the certified tail of z beyond the computed
/// dimension; computed: only the components the trajectory carries.
enum class ErrorScope { full, computed };

std::string to_string(ErrorScope scope);
ErrorScope error_scope_from_string(const std::string& name);

struct ErrorOptions {
  int samples = 8;  ///< per interval, Chebyshev-Lobatto spaced, endpoints included
  ErrorScope scope = ErrorScope::full;
};

/// Sample positions in tau on [0, 1].
std::vector<double> lobatto_samples(int samples);

/// Streams segments and keeps the sampled sup error against the exact solution
/// and the sampled sup of ||l(t) - eta||. Components are processed in chunks,
/// so no full-length copy of z(t) is ever built.
class ErrorMonitor {
 public:
  ErrorMonitor(const ProblemInstance<double>& inst, ErrorOptions options = {});

  void observe(const Segment<double>& seg);

  bool has_exact() const { return inst_->exact.has_value(); }
  double sup_error() const;
  /// Time where the sup error was attained.
  double worst_time() const { return worst_time_; }
  /// Upper bound on max_t ||l(t) - eta||, using eta_tail beyond the computed dimension.
  double ball_excursion() const { return ball_; }
  Index samples_taken() const { return samples_taken_; }

 private:
  void grow(Index dim);

  const ProblemInstance<double>* inst_;
  ErrorOptions options_;
  std::vector<double> taus_;
  Vec weight_powers_;
  Vec eta_;
  Vec l_chunk_;
  Vec z_chunk_;
  double error_ = 0.0;
  double worst_time_ = 0.0;
  double ball_ = 0.0;
  Index samples_taken_ = 0;
};

/// Sampled sup error of a stored trajectory.
double sup_error(const Trajectory<double>& traj, const ProblemInstance<double>& inst,
                 const ErrorOptions& options = {});

/// Sampled max_t ||l(t) - eta|| of a stored trajectory.
double ball_excursion(const Trajectory<double>& traj, const ProblemInstance<double>& inst,
                      const ErrorOptions& options = {});

}  // namespace seqode
