#include "seqode/mesh.hpp"

#include <cmath>

namespace seqode {

std::string to_string(MeshKind kind) {
  switch (kind) {
    case MeshKind::uniform: return "uniform";
    case MeshKind::graded: return "graded";
    case MeshKind::custom: return "custom";
  }
  return "custom";
}

Mesh graded_mesh(double a, double b, Index n, double sigma) {
  require(n >= 1, "mesh: n must be positive");
  require(a < b, "mesh: need a < b");
  require(sigma >= 1.0 && sigma <= 2.0, "mesh: graded sigma must lie in [1, 2]");
  std::vector<double> points(static_cast<std::size_t>(n + 1));
  for (Index k = 0; k <= n; ++k) {
    const double x = static_cast<double>(k) / static_cast<double>(n);
    points[static_cast<std::size_t>(k)] = a + (b - a) * std::pow(x, sigma);
  }
  points.front() = a;
  points.back() = b;
  return Mesh(std::move(points), sigma * (b - a) / static_cast<double>(n), MeshKind::graded);
}

TruncationSchedule::TruncationSchedule(std::vector<Index> dims) : dims_(std::move(dims)) {
  require(dims_.size() >= 2, "schedule: need N_{-1} and at least one N_k");
  for (Index d : dims_) require(d >= 1, "schedule: dimensions must be >= 1");
}

TruncationSchedule TruncationSchedule::constant(Index n, Index dim) {
  require(n >= 1, "schedule: n must be positive");
  return TruncationSchedule(std::vector<Index>(static_cast<std::size_t>(n + 1), dim));
}

TruncationSchedule TruncationSchedule::linear(Index n, Index first, Index last) {
  require(n >= 1, "schedule: n must be positive");
  std::vector<Index> dims(static_cast<std::size_t>(n + 1));
  dims[0] = first;
  for (Index k = 0; k < n; ++k) {
    const double x = n == 1 ? 1.0 : static_cast<double>(k) / static_cast<double>(n - 1);
    dims[static_cast<std::size_t>(k + 1)] =
        static_cast<Index>(std::llround(static_cast<double>(first) +
                                        x * static_cast<double>(last - first)));
  }
  return TruncationSchedule(std::move(dims));
}

std::vector<Index> TruncationSchedule::arg_dims() const {
  std::vector<Index> out;
  out.reserve(dims_.size() - 1);
  Index running = dims_.front();
  for (std::size_t k = 1; k < dims_.size(); ++k) {
    running = std::max(running, dims_[k]);
    out.push_back(running);
  }
  return out;
}

bool TruncationSchedule::is_constant() const {
  return std::all_of(dims_.begin(), dims_.end(),
                     [&](Index d) { return d == dims_.front(); });
}

}  // namespace seqode
