#include "stochdg/operators.hpp"

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <stdexcept>
#include <string>

namespace stochdg {
namespace {

// Legendre P_p and its derivative at x, by the three-term recurrence
// (k+1) P_{k+1} = (2k+1) x P_k - k P_{k-1} and P'_{k+1} = P'_{k-1} + (2k+1) P_k.
struct LegendreEval {
  double p;   // P_degree(x)
  double dp;  // P'_degree(x)
};

LegendreEval legendre(int degree, double x) {
  double p0 = 1.0, dp0 = 0.0;
  if (degree == 0) return {p0, dp0};
  double p1 = x, dp1 = 1.0;
  for (int k = 1; k < degree; ++k) {
    double p2 = ((2 * k + 1) * x * p1 - k * p0) / (k + 1);
    double dp2 = dp0 + (2 * k + 1) * p1;
    p0 = p1;
    dp0 = dp1;
    p1 = p2;
    dp1 = dp2;
  }
  return {p1, dp1};
}

}  // namespace

GaussLobatto gauss_lobatto(int degree) {
  if (degree < 0) throw std::invalid_argument("gauss_lobatto: negative degree");
  if (degree > max_operator_degree)
    throw std::invalid_argument("gauss_lobatto: degree " + std::to_string(degree) +
                                " exceeds supported maximum " +
                                std::to_string(max_operator_degree));
  if (degree == 0) return {{0.0}, {2.0}};

  const int np = degree + 1;
  GaussLobatto gl;
  gl.nodes.assign(np, 0.0);
  gl.weights.assign(np, 0.0);
  gl.nodes.front() = -1.0;
  gl.nodes.back() = 1.0;

  // Interior nodes are the roots of P'_degree. Newton on f = (1-x^2) P'_p with
  // f' = -p(p+1) P_p (Legendre ODE), seeded from Chebyshev-Lobatto points.
  const double pp1 = static_cast<double>(degree) * (degree + 1);
  for (int j = 1; j <= (np - 1) / 2; ++j) {
    double x = -std::cos(std::numbers::pi * j / degree);
    bool converged = false;
    for (int it = 0; it < 100; ++it) {
      auto [p, dp] = legendre(degree, x);
      double step = (1.0 - x * x) * dp / (pp1 * p);
      x += step;
      if (std::abs(step) <= 1e-15) {
        converged = true;
        break;
      }
    }
    if (!converged) throw std::runtime_error("gauss_lobatto: Newton iteration stalled");
    gl.nodes[j] = x;
    gl.nodes[degree - j] = -x;  // enforce exact symmetry
  }
  if (degree % 2 == 0) gl.nodes[degree / 2] = 0.0;

  for (int j = 0; j < np; ++j) {
    double p = legendre(degree, gl.nodes[j]).p;
    double w = 2.0 / (pp1 * p * p);
    gl.weights[j] = w;
  }
  for (int j = 0; j < np / 2; ++j) gl.weights[degree - j] = gl.weights[j];
  return gl;
}

SquareMatrix lagrange_diff_matrix(const std::vector<double>& nodes) {
  const int np = static_cast<int>(nodes.size());
  if (np == 0) throw std::invalid_argument("lagrange_diff_matrix: empty node set");
  for (int i = 0; i < np; ++i)
    for (int j = i + 1; j < np; ++j)
      if (nodes[i] == nodes[j])
        throw std::invalid_argument("lagrange_diff_matrix: duplicate node at indices " +
                                    std::to_string(i) + "," + std::to_string(j));

  SquareMatrix d(np);
  if (np == 1) return d;  // derivative of a constant

  std::vector<double> bary(np, 1.0);
  for (int i = 0; i < np; ++i)
    for (int j = 0; j < np; ++j)
      if (j != i) bary[i] *= nodes[i] - nodes[j];
  for (double& b : bary) b = 1.0 / b;

  for (int i = 0; i < np; ++i) {
    double diag = 0.0;
    for (int j = 0; j < np; ++j) {
      if (j == i) continue;
      d(i, j) = (bary[j] / bary[i]) / (nodes[i] - nodes[j]);
      diag -= d(i, j);
    }
    d(i, i) = diag;  // rows of D annihilate constants exactly
  }
  return d;
}

OperatorSet assemble_operator_set(int degree) {
  OperatorSet ops;
  ops.degree = degree;
  auto gl = gauss_lobatto(degree);
  ops.nodes = std::move(gl.nodes);
  ops.weights = std::move(gl.weights);
  ops.diff = lagrange_diff_matrix(ops.nodes);

  const int np = degree + 1;
  ops.stiffness = SquareMatrix(np);
  for (int i = 0; i < np; ++i)
    for (int j = 0; j < np; ++j) ops.stiffness(i, j) = ops.weights[i] * ops.diff(i, j);

  ops.boundary.assign(np, 0.0);
  if (np == 1) {
    // Single node carries both element faces; the signed restrictions cancel
    // in the stored diagonal but are applied per face in the RHS assembly.
    ops.boundary[0] = 0.0;
  } else {
    ops.boundary.front() = -1.0;
    ops.boundary.back() = 1.0;
  }
  return ops;
}

}  // namespace stochdg
