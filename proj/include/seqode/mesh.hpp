#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "seqode/errors.hpp"
#include "seqode/space.hpp"

namespace seqode {

enum class MeshKind { uniform, graded, custom };

std::string to_string(MeshKind kind);

/// Partition a = t_0 < t_1 < ... < t_n = b with max step <= alpha_n.
template <class Scalar>
class BasicMesh {
 public:
  /// General partition; steps are the point differences.
  BasicMesh(std::vector<Scalar> points, double alpha_n, MeshKind kind = MeshKind::custom)
      : points_(std::move(points)), alpha_(alpha_n), kind_(kind) {
    require(points_.size() >= 2, "mesh: need at least one interval");
    steps_.reserve(points_.size() - 1);
    for (std::size_t k = 0; k + 1 < points_.size(); ++k) {
      require(points_[k] < points_[k + 1], "mesh: points must be strictly increasing");
      steps_.push_back(points_[k + 1] - points_[k]);
    }
    check();
  }

  /// n equal steps (b - a) / n; alpha(n) = (b - a) / n.
  static BasicMesh uniform(const Scalar& a, const Scalar& b, Index n) {
    require(n >= 1, "mesh: n must be positive");
    require(a < b, "mesh: need a < b");
    const Scalar h = (b - a) / Scalar(n);
    BasicMesh mesh;
    mesh.points_.resize(static_cast<std::size_t>(n + 1));
    for (Index k = 0; k <= n; ++k) {
      mesh.points_[static_cast<std::size_t>(k)] = a + (b - a) * Scalar(k) / Scalar(n);
    }
    mesh.points_.back() = b;
    mesh.steps_.assign(static_cast<std::size_t>(n), h);
    mesh.alpha_ = static_cast<double>(h);
    mesh.kind_ = MeshKind::uniform;
    mesh.check();
    return mesh;
  }

  Index intervals() const { return static_cast<Index>(steps_.size()); }
  const Scalar& a() const { return points_.front(); }
  const Scalar& b() const { return points_.back(); }
  const std::vector<Scalar>& points() const { return points_; }
  const Scalar& point(Index k) const { return points_[static_cast<std::size_t>(k)]; }
  const Scalar& step(Index k) const { return steps_[static_cast<std::size_t>(k)]; }
  const std::vector<Scalar>& steps() const { return steps_; }
  double alpha() const { return alpha_; }
  MeshKind kind() const { return kind_; }
  /// K1 with alpha(n) = K1 / n.
  double uniformity_constant() const { return alpha_ * static_cast<double>(intervals()); }
  double max_step() const {
    double out = 0.0;
    for (const auto& h : steps_) out = std::max(out, static_cast<double>(h));
    return out;
  }

 private:
  BasicMesh() = default;

  void check() const {
    const double length = static_cast<double>(b() - a());
    require(max_step() <= alpha_ * (1.0 + 1e-12), "mesh: a step exceeds alpha(n)");
    require(alpha_ * static_cast<double>(intervals()) >= length * (1.0 - 1e-12),
            "mesh: alpha(n) must be at least (b - a) / n");
  }

  std::vector<Scalar> points_;
  std::vector<Scalar> steps_;
  double alpha_ = 0.0;
  MeshKind kind_ = MeshKind::custom;
};

using Mesh = BasicMesh<double>;

/// t_k = a + (b - a) (k / n)^sigma, sigma in [1, 2]; alpha(n) = sigma (b - a) / n.
Mesh graded_mesh(double a, double b, Index n, double sigma);

/// Truncation dimensions [N_{-1}, N_0, ..., N_{n-1}].
class TruncationSchedule {
 public:
  explicit TruncationSchedule(std::vector<Index> dims);
  static TruncationSchedule constant(Index n, Index dim);
  /// N_{-1} = first, then N_k interpolated linearly (rounded) from first to last.
  static TruncationSchedule linear(Index n, Index first, Index last);

  Index intervals() const { return static_cast<Index>(dims_.size()) - 1; }
  Index initial_dim() const { return dims_.front(); }
  Index dim(Index k) const { return dims_[static_cast<std::size_t>(k + 1)]; }
  const std::vector<Index>& dims() const { return dims_; }
  /// M_k = max_{j=-1..k} N_j, k = 0..n-1.
  std::vector<Index> arg_dims() const;
  Index max_dim() const { return *std::max_element(dims_.begin(), dims_.end()); }
  bool is_constant() const;

 private:
  std::vector<Index> dims_;
};

}  // namespace seqode
