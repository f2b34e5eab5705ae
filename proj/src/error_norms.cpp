#include "seqode/error_norms.hpp"

#include <cmath>
#include <numbers>

namespace seqode {

namespace {

constexpr Index kChunk = 2048;

struct ChunkSums {
  double error = 0.0;
  double ball = 0.0;
};

// sum_j |d_j|^p w_j with w_j already raised to p.
template <class Diff, class Weights>
double weighted_power_sum(const Diff& d, const Weights& w, double p) {
  if (p == 2.0) return (d.square() * w).sum();
  return (d.abs().pow(p) * w).sum();
}

}  // namespace

std::string to_string(ErrorScope scope) {
  return scope == ErrorScope::full ? "full" : "computed";
}

ErrorScope error_scope_from_string(const std::string& name) {
  if (name == "full") return ErrorScope::full;
  if (name == "computed") return ErrorScope::computed;
  throw ValidationError("error_scope: expected \"full\" or \"computed\", got \"" + name + "\"");
}

std::vector<double> lobatto_samples(int samples) {
  require(samples >= 2, "samples_per_interval must be at least 2");
  std::vector<double> out(static_cast<std::size_t>(samples));
  for (int i = 0; i < samples; ++i) {
    out[static_cast<std::size_t>(i)] =
        0.5 * (1.0 - std::cos(std::numbers::pi * i / (samples - 1)));
  }
  out.front() = 0.0;
  out.back() = 1.0;
  return out;
}

ErrorMonitor::ErrorMonitor(const ProblemInstance<double>& inst, ErrorOptions options)
    : inst_(&inst), options_(options), taus_(lobatto_samples(options.samples)) {
  l_chunk_.resize(kChunk);
  z_chunk_.resize(kChunk);
}

void ErrorMonitor::grow(Index dim) {
  const Index old = weight_powers_.size();
  if (dim <= old) return;
  const Index size = std::max(dim, 2 * old);
  weight_powers_.conservativeResize(size);
  eta_.conservativeResize(size);
  const double p = inst_->space.p();
  for (Index j = old; j < size; ++j) {
    weight_powers_(j) = std::pow(inst_->space.weight(j + 1), p);
    eta_(j) = inst_->eta(j + 1);
  }
}

void ErrorMonitor::observe(const Segment<double>& seg) {
  const Index D = seg.dim();
  grow(D);
  const double p = inst_->space.p();
  const bool exact = has_exact();
  const std::size_t count = taus_.size();
  std::vector<double> times(count);
  for (std::size_t s = 0; s < count; ++s) {
    times[s] = taus_[s] == 1.0 ? seg.t0 + seg.h : seg.t0 + taus_[s] * seg.h;
  }
  // Chunk-major so each slice of the segment is read from memory once.
  std::vector<ChunkSums> sums(count);
  for (Index j0 = 0; j0 < D; j0 += kChunk) {
    const Index len = std::min(kChunk, D - j0);
    const auto rows = seg.coeffs.middleRows(j0, len);
    const auto w = weight_powers_.segment(j0, len).array();
    const auto eta = eta_.segment(j0, len).array();
    auto l = l_chunk_.head(len);
    auto z = z_chunk_.head(len);
    for (std::size_t s = 0; s < count; ++s) {
      polyval_rows_into(rows, taus_[s], l);
      sums[s].ball += weighted_power_sum(l.array() - eta, w, p);
      if (exact) {
        exact_block(*inst_->exact, times[s], j0 + 1, z);
        sums[s].error += weighted_power_sum(z.array() - l.array(), w, p);
      }
    }
  }
  const double eta_tail = std::pow(inst_->eta_tail(D), p);
  for (std::size_t s = 0; s < count; ++s) {
    ball_ = std::max(ball_, std::pow(sums[s].ball + eta_tail, 1.0 / p));
    ++samples_taken_;
    if (!exact) continue;
    double total = sums[s].error;
    if (options_.scope == ErrorScope::full) total += std::pow(inst_->exact->tail(D, times[s]), p);
    const double value = std::pow(total, 1.0 / p);
    if (!std::isfinite(value)) {
      throw NumericalFailure("error monitor: non-finite error at t = " + std::to_string(times[s]));
    }
    if (value > error_) {
      error_ = value;
      worst_time_ = times[s];
    }
  }
}

double ErrorMonitor::sup_error() const {
  require(has_exact(), "sup_error: instance " + inst_->label + " has no exact solution");
  return error_;
}

double sup_error(const Trajectory<double>& traj, const ProblemInstance<double>& inst,
                 const ErrorOptions& options) {
  ErrorMonitor monitor(inst, options);
  for (const auto& seg : traj.segments) monitor.observe(seg);
  return monitor.sup_error();
}

double ball_excursion(const Trajectory<double>& traj, const ProblemInstance<double>& inst,
                      const ErrorOptions& options) {
  ErrorMonitor monitor(inst, options);
  for (const auto& seg : traj.segments) monitor.observe(seg);
  return monitor.ball_excursion();
}

}  // namespace seqode
