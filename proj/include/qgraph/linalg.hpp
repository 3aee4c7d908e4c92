#ifndef QGRAPH_LINALG_HPP
#define QGRAPH_LINALG_HPP

#include <Eigen/Dense>
#include <cstddef>
#include <span>
#include <vector>

namespace qgraph {

/// Determinant by LU with partial pivoting; the 0x0 determinant is 1.
template <typename Derived>
typename Derived::Scalar determinant(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  if (m.rows() == 0) return Scalar(1);
  return Eigen::PartialPivLU<Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>>(m).determinant();
}

/// Sign of the permutation that lists original indices in the given order.
inline int permutation_sign(std::span<const std::size_t> order) {
  int sign = 1;
  std::vector<bool> seen(order.size(), false);
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (seen[i]) continue;
    std::size_t len = 0;
    for (std::size_t j = i; !seen[j]; j = order[j]) {
      seen[j] = true;
      ++len;
    }
    if (len % 2 == 0) sign = -sign;
  }
  return sign;
}

/// Rows and columns picked out of m, in the given order.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic> submatrix(
    const Eigen::MatrixBase<Derived>& m, std::span<const std::size_t> rows,
    std::span<const std::size_t> cols) {
  Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic> out(rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j)
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          m(static_cast<Eigen::Index>(rows[i]), static_cast<Eigen::Index>(cols[j]));
  return out;
}

}  // namespace qgraph

#endif  // QGRAPH_LINALG_HPP
