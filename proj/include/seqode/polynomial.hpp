#pragma once

#include <Eigen/Core>

#include <vector>

#include "seqode/errors.hpp"
#include "seqode/space.hpp"

namespace seqode {

/// Monomial coefficients c_0..c_d of c_0 + c_1 tau + ... + c_d tau^d.
template <class Scalar>
using CoeffRow = Eigen::Matrix<Scalar, 1, Eigen::Dynamic>;

/// One polynomial per row, same layout as CoeffRow.
template <class Scalar>
using CoeffMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

/// Stage nodes t_k + p h_k / s, p = 0..s; the single node t_k when s = 0.
template <class Scalar>
std::vector<Scalar> stage_nodes(const Scalar& t_k, const Scalar& h_k, Index s) {
  require(s >= 0, "stage_nodes: s must be nonnegative");
  require(h_k > Scalar(0), "stage_nodes: step must be positive");
  if (s == 0) return {t_k};
  std::vector<Scalar> nodes;
  nodes.reserve(static_cast<std::size_t>(s + 1));
  for (Index p = 0; p <= s; ++p) {
    nodes.push_back(t_k + Scalar(p) * h_k / Scalar(s));
  }
  return nodes;
}

/// The same nodes in the local variable tau = (t - t_k) / h_k.
template <class Scalar>
std::vector<Scalar> local_stage_nodes(Index s) {
  return stage_nodes<Scalar>(Scalar(0), Scalar(1), s);
}

/// Row p holds the monomial coefficients of the Lagrange basis polynomial
/// prod_{l != p} (tau - tau_l) / (tau_p - tau_l).
template <class Scalar>
CoeffMatrix<Scalar> lagrange_basis(const std::vector<Scalar>& nodes) {
  const Index count = static_cast<Index>(nodes.size());
  require(count >= 1, "lagrange_basis: need at least one node");
  CoeffMatrix<Scalar> basis = CoeffMatrix<Scalar>::Zero(count, count);
  for (Index p = 0; p < count; ++p) {
    CoeffRow<Scalar> poly = CoeffRow<Scalar>::Zero(count);
    poly(0) = Scalar(1);
    Index degree = 0;
    Scalar denominator(1);
    for (Index l = 0; l < count; ++l) {
      if (l == p) continue;
      const Scalar gap = nodes[p] - nodes[l];
      require(gap != Scalar(0), "lagrange_basis: duplicate interpolation nodes");
      denominator *= gap;
      // poly *= (tau - tau_l)
      for (Index i = degree + 1; i >= 1; --i) {
        poly(i) = poly(i - 1) - nodes[l] * poly(i);
      }
      poly(0) = -nodes[l] * poly(0);
      ++degree;
    }
    basis.row(p) = poly / denominator;
  }
  return basis;
}

/// Coefficients of the unique interpolant of degree <= nodes.size() - 1.
template <class Scalar>
CoeffRow<Scalar> lagrange_monomial(const std::vector<Scalar>& nodes,
                                   const std::vector<Scalar>& values) {
  require(nodes.size() == values.size(),
          "lagrange_monomial: nodes and values differ in length");
  const CoeffMatrix<Scalar> basis = lagrange_basis(nodes);
  CoeffRow<Scalar> out = CoeffRow<Scalar>::Zero(basis.cols());
  for (Index p = 0; p < basis.rows(); ++p) {
    out += values[static_cast<std::size_t>(p)] * basis.row(p);
  }
  return out;
}

/// Antiderivative in t of each row polynomial in tau, vanishing at tau = 0:
/// c_i tau^i -> h c_i / (i + 1) tau^{i+1}.
template <class Derived>
Eigen::Matrix<typename Derived::Scalar, Derived::RowsAtCompileTime, Eigen::Dynamic>
integrate_local(const Eigen::MatrixBase<Derived>& coeffs,
                const typename Derived::Scalar& h) {
  using Scalar = typename Derived::Scalar;
  Eigen::Matrix<Scalar, Derived::RowsAtCompileTime, Eigen::Dynamic> out(
      coeffs.rows(), coeffs.cols() + 1);
  out.col(0).setZero();
  for (Index i = 0; i < coeffs.cols(); ++i) {
    out.col(i + 1) = h * coeffs.col(i) / Scalar(i + 1);
  }
  return out;
}

/// Horner evaluation of every row polynomial at tau, written to out.
template <class Derived, class OutDerived>
void polyval_rows_into(const Eigen::MatrixBase<Derived>& coeffs,
                       const typename Derived::Scalar& tau,
                       const Eigen::MatrixBase<OutDerived>& out_) {
  auto& out = const_cast<Eigen::MatrixBase<OutDerived>&>(out_);
  const Index last = coeffs.cols() - 1;
  out = coeffs.col(last);
  for (Index i = last - 1; i >= 0; --i) {
    out.array() = out.array() * tau + coeffs.col(i).array();
  }
}

template <class Derived>
TruncVec<typename Derived::Scalar> polyval_rows(
    const Eigen::MatrixBase<Derived>& coeffs, const typename Derived::Scalar& tau) {
  TruncVec<typename Derived::Scalar> out(coeffs.rows());
  polyval_rows_into(coeffs, tau, out);
  return out;
}

template <class Scalar>
Scalar polyval(const CoeffRow<Scalar>& coeffs, const Scalar& tau) {
  Scalar out = coeffs(coeffs.size() - 1);
  for (Index i = coeffs.size() - 2; i >= 0; --i) out = out * tau + coeffs(i);
  return out;
}

/// Coefficients of the derivative polynomial.
template <class Scalar>
CoeffRow<Scalar> differentiate(const CoeffRow<Scalar>& coeffs) {
  if (coeffs.size() <= 1) return CoeffRow<Scalar>::Zero(1);
  CoeffRow<Scalar> out(coeffs.size() - 1);
  for (Index i = 1; i < coeffs.size(); ++i) out(i - 1) = Scalar(i) * coeffs(i);
  return out;
}

}  // namespace seqode
