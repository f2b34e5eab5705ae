#pragma once

#include <algorithm>
#include <functional>
#include <span>
#include <sstream>
#include <type_traits>
#include <vector>

#include "seqode/instances.hpp"
#include "seqode/ledger.hpp"
#include "seqode/mesh.hpp"
#include "seqode/polynomial.hpp"

namespace seqode {

/// The local polynomial on [t0, t0 + h] in tau = (t - t0) / h. Row j holds the
/// coefficients of component j + 1; rows at or beyond `updated` are constant.
template <class Scalar>
struct Segment {
  Scalar t0{0};
  Scalar h{0};
  Index updated = 0;  ///< N_k
  CoeffMatrix<Scalar> coeffs;

  Index dim() const { return coeffs.rows(); }
  int degree() const { return static_cast<int>(coeffs.cols()) - 1; }
};

/// Piecewise polynomial output with the knot values y_0..y_n.
template <class Scalar>
struct Trajectory {
  BasicMesh<Scalar> mesh;
  int r = 0;
  std::vector<Segment<Scalar>> segments;
  std::vector<TruncVec<Scalar>> knots;

  Index max_dim() const {
    Index out = knots.empty() ? 0 : knots.front().size();
    for (const auto& seg : segments) out = std::max(out, seg.dim());
    return out;
  }
};

namespace detail {

template <class Scalar>
double to_double(const Scalar& x) {
  return static_cast<double>(x);
}

}  // namespace detail

/// One interval of the iterated Lagrange scheme, reusing its buffers.
template <class Scalar>
class Stepper {
 public:
  using Vector = TruncVec<Scalar>;

  Stepper(const ProblemInstance<Scalar>& inst, int r) : inst_(&inst), m_(std::max(r, 1)) {
    require(r >= 0, "solver: r must be nonnegative");
    require(static_cast<bool>(inst.component) || static_cast<bool>(inst.block),
            "solver: instance has no right-hand side");
    basis_.resize(static_cast<std::size_t>(m_));
    for (int s = 1; s < m_; ++s) {
      basis_[static_cast<std::size_t>(s)] = lagrange_basis(local_stage_nodes<Scalar>(s));
    }
  }

  int order() const { return m_; }

  /// Advances y (dimension D_k >= N_k, already padded) across the interval and
  /// writes the D_k x (m + 1) local polynomial into seg.
  void step(Index k, const Scalar& t0, const Scalar& h, Index N, Vector& y, CostLedger& ledger,
            Segment<Scalar>& seg) {
    const Index D = y.size();
    require(N >= 1 && N <= D, "solver: need 1 <= N_k <= D_k");
    seg.t0 = t0;
    seg.h = h;
    seg.updated = N;
    auto& coeffs = seg.coeffs;
    if (coeffs.rows() != D || coeffs.cols() != m_ + 1) coeffs.resize(D, m_ + 1);
    coeffs.col(0) = y;
    if (D > N) coeffs.bottomRightCorner(D - N, m_).setZero();
    if (F_.rows() != N || F_.cols() != m_) F_.resize(N, m_);

    for (int s = 0; s < m_; ++s) {
      for (int p = 0; p <= s; ++p) {
        if (p == 0) {
          evaluate_at(k, s, y, N, ledger);
        } else {
          polyval_rows_into(coeffs.leftCols(s + 1), Scalar(p) / Scalar(s), arg_);
          evaluate_at(k, s, arg_, N, ledger, p);
        }
      }
      if (s == 0) {
        coeffs.col(1).head(N) = h * F_.col(0) / Scalar(1);
        continue;
      }
      const auto& basis = basis_[static_cast<std::size_t>(s)];
      if (Q_.rows() != N || Q_.cols() != m_) Q_.resize(N, m_);
      for (int i = 0; i <= s; ++i) {
        Q_.col(i) = F_.col(0) * basis(0, i);
        for (int p = 1; p <= s; ++p) Q_.col(i) += F_.col(p) * basis(p, i);
      }
      for (int i = 0; i <= s; ++i) {
        coeffs.col(i + 1).head(N) = h * Q_.col(i) / Scalar(i + 1);
      }
    }
    polyval_rows_into(coeffs, Scalar(1), y);
  }

 private:
  void evaluate_at(Index k, int s, const Vector& arg, Index N, CostLedger& ledger, int p = 0) {
    auto column = F_.col(p);
    evaluate(*inst_, arg, Eigen::Ref<Vector>(column));
    if constexpr (std::is_floating_point_v<Scalar>) {
      for (Index j = 0; j < N; ++j) {
        if (!std::isfinite(column(j))) {
          std::ostringstream msg;
          msg << "non-finite right-hand side at step k = " << k << ", stage s = " << s
              << ", component j = " << j + 1 << " (" << inst_->label << ")";
          throw NumericalFailure(msg.str());
        }
      }
      ledger.add_evaluations(arg.size() > 0 ? arg(0) : 0.0, N);
      ledger.mix_values(std::span<const double>(column.data(), static_cast<std::size_t>(N)));
    } else {
      ledger.add_evaluations(arg.size() > 0 ? detail::to_double(arg(0)) : 0.0, N);
    }
  }

  const ProblemInstance<Scalar>* inst_;
  int m_;
  std::vector<CoeffMatrix<Scalar>> basis_;
  CoeffMatrix<Scalar> F_;
  CoeffMatrix<Scalar> Q_;
  Vector arg_;
};

/// Result of one interval on its own.
template <class Scalar>
struct StepResult {
  Segment<Scalar> segment;
  TruncVec<Scalar> next;
};

/// One interval from y_k with truncation N_k; arguments have the dimension of y_k.
template <class Scalar>
StepResult<Scalar> local_step(const ProblemInstance<Scalar>& inst, const TruncVec<Scalar>& y_k,
                              const Scalar& t_k, const Scalar& h_k, Index N_k, int r,
                              CostLedger& ledger) {
  require(h_k > Scalar(0), "local_step: step must be positive");
  Stepper<Scalar> stepper(inst, r);
  StepResult<Scalar> out;
  out.next = resized(y_k, std::max(y_k.size(), N_k));
  ledger.begin_step(out.next.size());
  stepper.step(0, t_k, h_k, N_k, out.next, ledger, out.segment);
  return out;
}

template <class Scalar>
struct SolveOptions {
  bool keep_trajectory = true;
  bool record_trace = false;
  Index trace_limit = CostLedger::kDefaultTraceLimit;
  /// Called with every finished segment, in order.
  std::function<void(Index k, const Segment<Scalar>&)> observer;
};

template <class Scalar>
struct SolveResult {
  Trajectory<Scalar> trajectory;
  CostLedger ledger;
  TruncVec<Scalar> final_value;
};

/// The full sweep: y_0 = P_{N_{-1}} eta, then one interval per mesh step with
/// argument dimension M_k = max_{j <= k} N_j.
template <class Scalar>
SolveResult<Scalar> solve(const ProblemInstance<Scalar>& inst, const BasicMesh<Scalar>& mesh,
                          const TruncationSchedule& sched, int r, const PowerCost& cost,
                          const SolveOptions<Scalar>& options = {}) {
  require(sched.intervals() == mesh.intervals(),
          "solve: schedule length does not match the mesh");
  Stepper<Scalar> stepper(inst, r);
  SolveResult<Scalar> result{Trajectory<Scalar>{mesh, r, {}, {}},
                             CostLedger(cost, options.record_trace, options.trace_limit),
                             initial_value(inst, sched.initial_dim())};
  auto& traj = result.trajectory;
  auto& y = result.final_value;
  if (options.keep_trajectory) {
    traj.segments.reserve(static_cast<std::size_t>(mesh.intervals()));
    traj.knots.reserve(static_cast<std::size_t>(mesh.intervals() + 1));
    traj.knots.push_back(y);
  }
  Segment<Scalar> work;
  Index arg_dim = sched.initial_dim();
  for (Index k = 0; k < mesh.intervals(); ++k) {
    const Index N = sched.dim(k);
    arg_dim = std::max(arg_dim, N);
    if (y.size() < arg_dim) {
      const Index old = y.size();
      y.conservativeResize(arg_dim);
      y.tail(arg_dim - old).setZero();
    }
    result.ledger.begin_step(arg_dim);
    stepper.step(k, mesh.point(k), mesh.step(k), N, y, result.ledger, work);
    if (options.observer) options.observer(k, work);
    if (options.keep_trajectory) {
      traj.segments.push_back(work);
      traj.knots.push_back(y);
    }
  }
  return result;
}

/// Index of the segment containing t: knots belong to the left segment, except a.
template <class Scalar>
Index locate_segment(const BasicMesh<Scalar>& mesh, const Scalar& t) {
  if (!(t >= mesh.a() && t <= mesh.b())) {
    std::ostringstream msg;
    msg << "eval_trajectory: t = " << detail::to_double(t) << " outside ["
        << detail::to_double(mesh.a()) << ", " << detail::to_double(mesh.b()) << "]";
    throw ValidationError(msg.str());
  }
  const auto& points = mesh.points();
  auto it = std::lower_bound(points.begin() + 1, points.end(), t);
  return static_cast<Index>(it - points.begin()) - 1;
}

/// The piecewise polynomial at t; knots give the stored knot values exactly.
template <class Scalar>
TruncVec<Scalar> eval_trajectory(const Trajectory<Scalar>& traj, const Scalar& t) {
  require(!traj.segments.empty(), "eval_trajectory: trajectory was not kept");
  const Index k = locate_segment(traj.mesh, t);
  if (t == traj.mesh.point(k + 1)) return traj.knots[static_cast<std::size_t>(k + 1)];
  if (t == traj.mesh.point(k)) return traj.knots[static_cast<std::size_t>(k)];
  const auto& seg = traj.segments[static_cast<std::size_t>(k)];
  const Scalar tau = (t - seg.t0) / seg.h;
  return polyval_rows(seg.coeffs, tau);
}

}  // namespace seqode
