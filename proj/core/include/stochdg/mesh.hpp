#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "stochdg/errors.hpp"
#include "stochdg/operators.hpp"

namespace stochdg {

enum class BoundaryKind { periodic, outflow };

inline const char* to_string(BoundaryKind bc) {
  return bc == BoundaryKind::periodic ? "periodic" : "outflow";
}

// Uniform line (dim 1) or tensor-product quad (dim 2) mesh with the same
// element count n along every axis.
struct Mesh {
  int dim = 1;
  int elements_per_axis = 1;
  std::array<double, 2> lower{-1.0, -1.0};
  std::array<double, 2> upper{1.0, 1.0};
  std::array<BoundaryKind, 2> bc{BoundaryKind::periodic, BoundaryKind::periodic};

  static Mesh line(double lo, double hi, int n, BoundaryKind kind) {
    if (n < 1 || !(hi > lo)) throw ConfigError("mesh: need n >= 1 and hi > lo");
    Mesh m;
    m.dim = 1;
    m.elements_per_axis = n;
    m.lower = {lo, 0.0};
    m.upper = {hi, 0.0};
    m.bc = {kind, kind};
    return m;
  }
  static Mesh square(double lo, double hi, int n, BoundaryKind kind) {
    Mesh m = line(lo, hi, n, kind);
    m.dim = 2;
    m.lower[1] = lo;
    m.upper[1] = hi;
    return m;
  }

  double extent(int axis) const { return upper[axis] - lower[axis]; }
  double spacing(int axis) const { return extent(axis) / elements_per_axis; }
  int n_elements() const {
    return dim == 1 ? elements_per_axis : elements_per_axis * elements_per_axis;
  }
  double measure() const { return dim == 1 ? extent(0) : extent(0) * extent(1); }
};

// Nodal coefficients, element-major; within an element nodes run x-fastest;
// per node the conserved components (rho, m_1[, m_2], E) are contiguous.
struct DiscreteField {
  Mesh mesh;
  int degree = 0;
  std::vector<double> data;

  static DiscreteField zeros(const Mesh& mesh, int degree) {
    DiscreteField f;
    f.mesh = mesh;
    f.degree = degree;
    f.data.assign(f.n_nodes() * f.n_comp(), 0.0);
    return f;
  }

  int n_comp() const { return mesh.dim + 2; }
  int nodes_per_axis() const { return degree + 1; }
  int nodes_per_elem() const {
    int np = degree + 1;
    return mesh.dim == 1 ? np : np * np;
  }
  std::size_t n_nodes() const {
    return static_cast<std::size_t>(mesh.n_elements()) * nodes_per_elem();
  }

  double* node(int elem, int node_idx) {
    return data.data() + (static_cast<std::size_t>(elem) * nodes_per_elem() + node_idx) * n_comp();
  }
  const double* node(int elem, int node_idx) const {
    return data.data() + (static_cast<std::size_t>(elem) * nodes_per_elem() + node_idx) * n_comp();
  }

  bool same_shape(const DiscreteField& other) const {
    return mesh.dim == other.mesh.dim && degree == other.degree &&
           mesh.elements_per_axis == other.mesh.elements_per_axis &&
           data.size() == other.data.size();
  }
};

// Physical coordinate along one axis of a reference node in a given element.
inline double node_coordinate(const Mesh& mesh, const OperatorSet& ops, int elem_axis_idx,
                              int ref_node, int axis) {
  double h = mesh.spacing(axis);
  return mesh.lower[axis] + h * (elem_axis_idx + 0.5 * (ops.nodes[ref_node] + 1.0));
}

inline std::array<double, 2> node_position(const Mesh& mesh, const OperatorSet& ops, int elem,
                                           int node_idx) {
  int np = ops.degree + 1;
  if (mesh.dim == 1)
    return {node_coordinate(mesh, ops, elem, node_idx, 0), 0.0};
  int n = mesh.elements_per_axis;
  int ex = elem % n, ey = elem / n;
  int i = node_idx % np, j = node_idx / np;
  return {node_coordinate(mesh, ops, ex, i, 0), node_coordinate(mesh, ops, ey, j, 1)};
}

}  // namespace stochdg
