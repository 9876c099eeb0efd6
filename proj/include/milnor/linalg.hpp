#pragma once

#include "milnor/rational.hpp"

#include <stdexcept>
#include <utility>
#include <vector>

namespace milnor {

struct SignatureTriple {
  std::size_t positive = 0;
  std::size_t negative = 0;
  std::size_t zero = 0;

  long signature() const { return static_cast<long>(positive) - static_cast<long>(negative); }
  std::size_t rank() const { return positive + negative; }
  friend bool operator==(const SignatureTriple&, const SignatureTriple&) = default;
};

namespace detail {

template <typename Scalar>
int scalar_sign(const Scalar& s) {
  if (s > Scalar(0)) return 1;
  if (s < Scalar(0)) return -1;
  return 0;
}

template <typename Derived>
void swap_symmetric(Eigen::MatrixBase<Derived>& a, Eigen::Index i, Eigen::Index j) {
  if (i == j) return;
  a.row(i).swap(a.row(j));
  a.col(i).swap(a.col(j));
}

}  // namespace detail

/// Inertia of a symmetric matrix by congruence diagonalization. Exact for
/// exact scalars; a zero diagonal with a non-zero off-diagonal entry is split
/// off as a hyperbolic plane.
template <typename Scalar>
SignatureTriple signature_of_form(MatrixX<Scalar> a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("signature of a non-square matrix");
  if (!(a == a.transpose())) throw std::invalid_argument("signature of a non-symmetric matrix");
  const Eigen::Index n = a.rows();
  const Scalar zero(0);
  SignatureTriple out;
  Eigen::Index k = 0;
  while (k < n) {
    Eigen::Index piv = -1;
    for (Eigen::Index i = k; i < n; ++i)
      if (a(i, i) != zero) {
        piv = i;
        break;
      }
    if (piv >= 0) {
      detail::swap_symmetric(a, k, piv);
      const Scalar d = a(k, k);
      (detail::scalar_sign(d) > 0 ? out.positive : out.negative) += 1;
      for (Eigen::Index r = k + 1; r < n; ++r) {
        if (a(r, k) == zero) continue;
        const Scalar f = a(r, k) / d;
        for (Eigen::Index c = k + 1; c < n; ++c)
          if (a(k, c) != zero) a(r, c) -= f * a(k, c);
      }
      for (Eigen::Index r = k + 1; r < n; ++r) a(r, k) = a(k, r) = zero;
      ++k;
      continue;
    }
    Eigen::Index pi = -1, pj = -1;
    for (Eigen::Index i = k; i < n && pi < 0; ++i)
      for (Eigen::Index j = i + 1; j < n; ++j)
        if (a(i, j) != zero) {
          pi = i;
          pj = j;
          break;
        }
    if (pi < 0) {
      out.zero += static_cast<std::size_t>(n - k);
      break;
    }
    detail::swap_symmetric(a, k, pi);
    detail::swap_symmetric(a, k + 1, pj);
    const Scalar h = a(k, k + 1);
    out.positive += 1;
    out.negative += 1;
    for (Eigen::Index r = k + 2; r < n; ++r) {
      const Scalar u = a(r, k) / h;
      const Scalar v = a(r, k + 1) / h;
      if (u == zero && v == zero) continue;
      for (Eigen::Index c = k + 2; c < n; ++c) a(r, c) -= u * a(k + 1, c) + v * a(k, c);
    }
    k += 2;
  }
  return out;
}

/// Reduced row echelon form in place; returns the pivot columns.
template <typename Scalar>
std::vector<Eigen::Index> row_reduce(MatrixX<Scalar>& a) {
  const Scalar zero(0);
  std::vector<Eigen::Index> pivots;
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < a.cols() && row < a.rows(); ++col) {
    Eigen::Index p = -1;
    for (Eigen::Index r = row; r < a.rows(); ++r)
      if (a(r, col) != zero) {
        p = r;
        break;
      }
    if (p < 0) continue;
    a.row(row).swap(a.row(p));
    const Scalar inv = Scalar(1) / a(row, col);
    for (Eigen::Index c = col; c < a.cols(); ++c)
      if (a(row, c) != zero) a(row, c) *= inv;
    for (Eigen::Index r = 0; r < a.rows(); ++r) {
      if (r == row || a(r, col) == zero) continue;
      const Scalar f = a(r, col);
      for (Eigen::Index c = col; c < a.cols(); ++c)
        if (a(row, c) != zero) a(r, c) -= f * a(row, c);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

template <typename Scalar>
std::size_t rank(MatrixX<Scalar> a) {
  return row_reduce(a).size();
}

// Columns form a basis of the kernel.
template <typename Scalar>
MatrixX<Scalar> nullspace(MatrixX<Scalar> a) {
  auto pivots = row_reduce(a);
  std::vector<bool> is_pivot(static_cast<std::size_t>(a.cols()), false);
  for (auto p : pivots) is_pivot[static_cast<std::size_t>(p)] = true;
  MatrixX<Scalar> basis = MatrixX<Scalar>::Zero(a.cols(), a.cols() - static_cast<Eigen::Index>(pivots.size()));
  Eigen::Index out = 0;
  for (Eigen::Index free = 0; free < a.cols(); ++free) {
    if (is_pivot[static_cast<std::size_t>(free)]) continue;
    basis(free, out) = Scalar(1);
    for (std::size_t r = 0; r < pivots.size(); ++r)
      basis(pivots[r], out) = -a(static_cast<Eigen::Index>(r), free);
    ++out;
  }
  return basis;
}

}  // namespace milnor
