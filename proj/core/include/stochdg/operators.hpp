#pragma once

#include <cstddef>
#include <vector>

namespace stochdg {

// Dense row-major square matrix; sizes here never exceed (degree+1) <= 21.
struct SquareMatrix {
  int n = 0;
  std::vector<double> a;

  SquareMatrix() = default;
  explicit SquareMatrix(int n_) : n(n_), a(static_cast<std::size_t>(n_) * n_, 0.0) {}

  double& operator()(int i, int j) { return a[static_cast<std::size_t>(i) * n + j]; }
  double operator()(int i, int j) const { return a[static_cast<std::size_t>(i) * n + j]; }
};

inline constexpr int max_operator_degree = 20;

struct GaussLobatto {
  std::vector<double> nodes;    // strictly increasing in [-1, 1]
  std::vector<double> weights;  // positive, sum to 2
};

// Gauss-Lobatto-Legendre nodes and quadrature weights for polynomial degree p
// (p+1 points). Degree 0 degenerates to the midpoint rule: node 0, weight 2.
GaussLobatto gauss_lobatto(int degree);

// First-derivative collocation matrix for the Lagrange basis on the given
// nodes, via barycentric weights with the negative-sum diagonal.
SquareMatrix lagrange_diff_matrix(const std::vector<double>& nodes);

// Collocation operators on the reference element [-1,1]:
//   D  derivative, M = diag(weights), Q = M D, B = diag(-1, 0, ..., 0, +1).
// They satisfy the summation-by-parts identity Q + Q^T = B.
struct OperatorSet {
  int degree = 0;
  std::vector<double> nodes;
  std::vector<double> weights;
  SquareMatrix diff;               // D
  SquareMatrix stiffness;          // Q = M D
  std::vector<double> boundary;    // diagonal of B

  int n_nodes() const { return degree + 1; }
};

OperatorSet assemble_operator_set(int degree);

}  // namespace stochdg
