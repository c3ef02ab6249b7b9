#include "stochdg/semidisc.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <string>

namespace stochdg {
namespace {

struct KahanSum {
  double s = 0.0, c = 0.0;
  void add(double x) {
    double y = x - c;
    double t = s + y;
    c = (t - s) - y;
    s = t;
  }
  double value() const { return s; }
};

template <int Dim>
inline Cons<Dim> load_cons(const double* p) {
  Cons<Dim> u;
  u.rho = p[0];
  for (int k = 0; k < Dim; ++k) u.mom[k] = p[1 + k];
  u.ener = p[1 + Dim];
  return u;
}

template <int Dim>
inline Prim<Dim> load_prim(const double* p) {
  Prim<Dim> q;
  q.rho = p[0];
  for (int k = 0; k < Dim; ++k) q.vel[k] = p[1 + k];
  q.press = p[1 + Dim];
  q.theta = p[2 + Dim];
  return q;
}

template <int Dim>
inline void store_prim(double* p, const Prim<Dim>& q) {
  p[0] = q.rho;
  for (int k = 0; k < Dim; ++k) p[1 + k] = q.vel[k];
  p[1 + Dim] = q.press;
  p[2 + Dim] = q.theta;
}

// Fill the primitive cache; locate and report the first invalid node.
template <int Dim>
void build_prim_cache(const DiscreteField& field, const GasModel& gas,
                      const ValidityFloors& floors, std::vector<double>& cache) {
  constexpr int pc = Dim + 3;
  const int nc = Dim + 2;
  const std::size_t nn = field.n_nodes();
  cache.resize(nn * pc);
  const double* src = field.data.data();
  double* dst = cache.data();
  for (std::size_t g = 0; g < nn; ++g, src += nc, dst += pc) {
    Prim<Dim> q;
    if (!try_cons_to_prim(load_cons<Dim>(src), gas, floors, q)) {
      int per = field.nodes_per_elem();
      int elem = static_cast<int>(g / per);
      int node = static_cast<int>(g % per);
      throw StateError("invalid state during RHS evaluation at element " +
                           std::to_string(elem) + ", node " + std::to_string(node),
                       elem, node);
    }
    store_prim<Dim>(dst, q);
  }
}

struct EcVolume {
  GasModel gas;
  EcEnergyForm form;
  template <int Dim>
  Cons<Dim> flux(const Cons<Dim>&, const Prim<Dim>& ql, const Cons<Dim>&, const Prim<Dim>& qr,
                 int axis) const {
    return ec_flux(ql, qr, axis, gas, form);
  }
};

struct CentralVolume {
  GasModel gas;
  template <int Dim>
  Cons<Dim> flux(const Cons<Dim>& ul, const Prim<Dim>& ql, const Cons<Dim>& ur,
                 const Prim<Dim>& qr, int axis) const {
    return central_flux(ul, ql, ur, qr, axis);
  }
};

struct LlfSurface {
  GasModel gas;
  LlfDissipation diss;
  template <int Dim>
  Cons<Dim> flux(const Cons<Dim>& ul, const Prim<Dim>& ql, const Cons<Dim>& ur,
                 const Prim<Dim>& qr, int axis) const {
    return llf_flux(ul, ql, ur, qr, axis, 1.0, gas, diss);
  }
};

struct EcSurface {
  GasModel gas;
  EcEnergyForm form;
  template <int Dim>
  Cons<Dim> flux(const Cons<Dim>&, const Prim<Dim>& ql, const Cons<Dim>&, const Prim<Dim>& qr,
                 int axis) const {
    return ec_flux(ql, qr, axis, gas, form);
  }
};

template <int Dim>
inline void axpy_cons(double* out, double a, const Cons<Dim>& f) {
  out[0] += a * f.rho;
  for (int k = 0; k < Dim; ++k) out[1 + k] += a * f.mom[k];
  out[1 + Dim] += a * f.ener;
}

// Flux-differencing volume contribution along one tensor line of an element,
// exploiting the symmetry of the two-point flux: the pair (i,l) updates both
// rows with weights D(i,l) and D(l,i).
template <int Dim, class VolF>
inline void line_volume(const double* field, const double* prim, const SquareMatrix& D,
                        double jac, std::size_t base, std::size_t stride, int axis,
                        const VolF& vol, double* out) {
  constexpr int nc = Dim + 2;
  constexpr int pc = Dim + 3;
  const int np = D.n;
  for (int i = 0; i < np; ++i) {
    std::size_t gi = base + i * stride;
    Cons<Dim> ui = load_cons<Dim>(field + gi * nc);
    Prim<Dim> qi = load_prim<Dim>(prim + gi * pc);
    // diagonal: f_vol(U,U) = f(U)
    axpy_cons<Dim>(out + gi * nc, -2.0 * jac * D(i, i), physical_flux(ui, qi, axis));
    for (int l = i + 1; l < np; ++l) {
      std::size_t gl = base + l * stride;
      Cons<Dim> f = vol.template flux<Dim>(ui, qi, load_cons<Dim>(field + gl * nc),
                                           load_prim<Dim>(prim + gl * pc), axis);
      axpy_cons<Dim>(out + gi * nc, -2.0 * jac * D(i, l), f);
      axpy_cons<Dim>(out + gl * nc, -2.0 * jac * D(l, i), f);
    }
  }
}

// Surface correction at the two ends of one tensor line:
//   node 0:   -(2/h) (1/w_0)  (f(U).n - F*_left)
//   node p:   +(2/h) (1/w_p)  (f(U).n - F*_right)
// For degree 0 both act on the single node, reducing to the classical
// finite-volume update (F*_left - F*_right)/h.
template <int Dim>
inline void line_faces(const double* field, const double* prim, const OperatorSet& ops,
                       double jac, std::size_t base, std::size_t stride, int axis,
                       const double* f_left, const double* f_right, double* out) {
  constexpr int nc = Dim + 2;
  constexpr int pc = Dim + 3;
  const int p = ops.degree;
  {
    std::size_t g0 = base;
    Cons<Dim> f = physical_flux(load_cons<Dim>(field + g0 * nc), load_prim<Dim>(prim + g0 * pc), axis);
    double a = -jac / ops.weights[0];
    double* o = out + g0 * nc;
    o[0] += a * (f.rho - f_left[0]);
    for (int k = 0; k < Dim; ++k) o[1 + k] += a * (f.mom[k] - f_left[1 + k]);
    o[1 + Dim] += a * (f.ener - f_left[1 + Dim]);
  }
  {
    std::size_t gp = base + static_cast<std::size_t>(p) * stride;
    Cons<Dim> f = physical_flux(load_cons<Dim>(field + gp * nc), load_prim<Dim>(prim + gp * pc), axis);
    double a = jac / ops.weights[p];
    double* o = out + gp * nc;
    o[0] += a * (f.rho - f_right[0]);
    for (int k = 0; k < Dim; ++k) o[1 + k] += a * (f.mom[k] - f_right[1 + k]);
    o[1 + Dim] += a * (f.ener - f_right[1 + Dim]);
  }
}

template <int Dim, class SurfF>
inline void store_surface_flux(const double* field, const double* prim, std::size_t gl,
                               std::size_t gr, int axis, const SurfF& surf, double* slot) {
  constexpr int nc = Dim + 2;
  constexpr int pc = Dim + 3;
  Cons<Dim> f = surf.template flux<Dim>(load_cons<Dim>(field + gl * nc), load_prim<Dim>(prim + gl * pc),
                                        load_cons<Dim>(field + gr * nc), load_prim<Dim>(prim + gr * pc),
                                        axis);
  slot[0] = f.rho;
  for (int k = 0; k < Dim; ++k) slot[1 + k] = f.mom[k];
  slot[1 + Dim] = f.ener;
}

template <class VolF, class SurfF>
void rhs_1d(const DiscreteField& U, const OperatorSet& ops, const VolF& vol, const SurfF& surf,
            DiscreteField& out, RhsScratch& s) {
  constexpr int Dim = 1;
  constexpr int nc = 3;
  const int n = U.mesh.elements_per_axis;
  const int np = ops.degree + 1;
  const double jac = 2.0 / U.mesh.spacing(0);
  const bool periodic = U.mesh.bc[0] == BoundaryKind::periodic;
  const double* f = U.data.data();
  const double* pr = s.prim.data();
  double* o = out.data.data();

  // Interface i sits between elements i-1 and i; n+1 slots, slot n aliased to
  // slot 0 when periodic.
  s.iface.resize(static_cast<std::size_t>(n + 1) * nc);
  auto trace_r = [&](int e) { return static_cast<std::size_t>(e) * np + (np - 1); };
  auto trace_l = [&](int e) { return static_cast<std::size_t>(e) * np; };
  for (int i = 1; i < n; ++i)
    store_surface_flux<Dim>(f, pr, trace_r(i - 1), trace_l(i), 0, surf, s.iface.data() + i * nc);
  if (periodic) {
    store_surface_flux<Dim>(f, pr, trace_r(n - 1), trace_l(0), 0, surf, s.iface.data());
    std::memcpy(s.iface.data() + static_cast<std::size_t>(n) * nc, s.iface.data(),
                nc * sizeof(double));
  } else {
    store_surface_flux<Dim>(f, pr, trace_l(0), trace_l(0), 0, surf, s.iface.data());
    store_surface_flux<Dim>(f, pr, trace_r(n - 1), trace_r(n - 1), 0, surf,
                            s.iface.data() + static_cast<std::size_t>(n) * nc);
  }

  for (int e = 0; e < n; ++e) {
    std::size_t base = static_cast<std::size_t>(e) * np;
    if (np > 1) line_volume<Dim>(f, pr, ops.diff, jac, base, 1, 0, vol, o);
    line_faces<Dim>(f, pr, ops, jac, base, 1, 0, s.iface.data() + static_cast<std::size_t>(e) * nc,
                    s.iface.data() + static_cast<std::size_t>(e + 1) * nc, o);
  }
}

template <class VolF, class SurfF>
void rhs_2d(const DiscreteField& U, const OperatorSet& ops, const VolF& vol, const SurfF& surf,
            DiscreteField& out, RhsScratch& s) {
  constexpr int Dim = 2;
  constexpr int nc = 4;
  const int n = U.mesh.elements_per_axis;
  const int np = ops.degree + 1;
  const int npe = np * np;
  const double jacx = 2.0 / U.mesh.spacing(0);
  const double jacy = 2.0 / U.mesh.spacing(1);
  const double* f = U.data.data();
  const double* pr = s.prim.data();
  double* o = out.data.data();

  auto elem = [&](int ex, int ey) { return static_cast<std::size_t>(ey) * n + ex; };
  auto node = [&](std::size_t e, int i, int j) { return e * npe + static_cast<std::size_t>(j) * np + i; };

  // Vertical interfaces (normal +x): slot (ix, ey, j), ix in [0, n]; then
  // horizontal interfaces (normal +y): slot (iy, ex, i).
  const std::size_t per_axis = static_cast<std::size_t>(n + 1) * n * np;
  s.iface.resize(2 * per_axis * nc);
  double* fx = s.iface.data();
  double* fy = s.iface.data() + per_axis * nc;
  const bool per_x = U.mesh.bc[0] == BoundaryKind::periodic;
  const bool per_y = U.mesh.bc[1] == BoundaryKind::periodic;

  for (int ey = 0; ey < n; ++ey)
    for (int j = 0; j < np; ++j) {
      for (int ix = 1; ix < n; ++ix)
        store_surface_flux<Dim>(f, pr, node(elem(ix - 1, ey), np - 1, j), node(elem(ix, ey), 0, j),
                                0, surf,
                                fx + ((static_cast<std::size_t>(ix) * n + ey) * np + j) * nc);
      double* s0 = fx + ((static_cast<std::size_t>(0) * n + ey) * np + j) * nc;
      double* sn = fx + ((static_cast<std::size_t>(n) * n + ey) * np + j) * nc;
      if (per_x) {
        store_surface_flux<Dim>(f, pr, node(elem(n - 1, ey), np - 1, j), node(elem(0, ey), 0, j), 0,
                                surf, s0);
        std::memcpy(sn, s0, nc * sizeof(double));
      } else {
        std::size_t gl = node(elem(0, ey), 0, j);
        std::size_t gr = node(elem(n - 1, ey), np - 1, j);
        store_surface_flux<Dim>(f, pr, gl, gl, 0, surf, s0);
        store_surface_flux<Dim>(f, pr, gr, gr, 0, surf, sn);
      }
    }

  for (int ex = 0; ex < n; ++ex)
    for (int i = 0; i < np; ++i) {
      for (int iy = 1; iy < n; ++iy)
        store_surface_flux<Dim>(f, pr, node(elem(ex, iy - 1), i, np - 1), node(elem(ex, iy), i, 0),
                                1, surf,
                                fy + ((static_cast<std::size_t>(iy) * n + ex) * np + i) * nc);
      double* s0 = fy + ((static_cast<std::size_t>(0) * n + ex) * np + i) * nc;
      double* sn = fy + ((static_cast<std::size_t>(n) * n + ex) * np + i) * nc;
      if (per_y) {
        store_surface_flux<Dim>(f, pr, node(elem(ex, n - 1), i, np - 1), node(elem(ex, 0), i, 0), 1,
                                surf, s0);
        std::memcpy(sn, s0, nc * sizeof(double));
      } else {
        std::size_t gl = node(elem(ex, 0), i, 0);
        std::size_t gr = node(elem(ex, n - 1), i, np - 1);
        store_surface_flux<Dim>(f, pr, gl, gl, 1, surf, s0);
        store_surface_flux<Dim>(f, pr, gr, gr, 1, surf, sn);
      }
    }

  for (int ey = 0; ey < n; ++ey)
    for (int ex = 0; ex < n; ++ex) {
      std::size_t e = elem(ex, ey);
      std::size_t ebase = e * npe;
      if (np > 1) {
        for (int j = 0; j < np; ++j)
          line_volume<Dim>(f, pr, ops.diff, jacx, ebase + static_cast<std::size_t>(j) * np, 1, 0,
                           vol, o);
        for (int i = 0; i < np; ++i)
          line_volume<Dim>(f, pr, ops.diff, jacy, ebase + i, np, 1, vol, o);
      }
      for (int j = 0; j < np; ++j)
        line_faces<Dim>(f, pr, ops, jacx, ebase + static_cast<std::size_t>(j) * np, 1, 0,
                        fx + ((static_cast<std::size_t>(ex) * n + ey) * np + j) * nc,
                        fx + ((static_cast<std::size_t>(ex + 1) * n + ey) * np + j) * nc, o);
      for (int i = 0; i < np; ++i)
        line_faces<Dim>(f, pr, ops, jacy, ebase + i, np, 1,
                        fy + ((static_cast<std::size_t>(ey) * n + ex) * np + i) * nc,
                        fy + ((static_cast<std::size_t>(ey + 1) * n + ex) * np + i) * nc, o);
    }
}

template <class VolF, class SurfF>
void rhs_dispatch_dim(const DiscreteField& U, const OperatorSet& ops, const GasModel& gas,
                      const ValidityFloors& floors, const VolF& vol, const SurfF& surf,
                      DiscreteField& out, RhsScratch& s) {
  std::fill(out.data.begin(), out.data.end(), 0.0);
  if (U.mesh.dim == 1) {
    build_prim_cache<1>(U, gas, floors, s.prim);
    rhs_1d(U, ops, vol, surf, out, s);
  } else {
    build_prim_cache<2>(U, gas, floors, s.prim);
    rhs_2d(U, ops, vol, surf, out, s);
  }
}

}  // namespace

void dg_rhs(const DiscreteField& field, const OperatorSet& ops, const GasModel& gas,
            const FluxConfig& fluxes, const ValidityFloors& floors, DiscreteField& drift,
            RhsScratch& scratch) {
  if (ops.degree != field.degree)
    throw std::invalid_argument("dg_rhs: operator degree does not match the field");
  if (!drift.same_shape(field)) drift = DiscreteField::zeros(field.mesh, field.degree);

  const bool ec_vol = fluxes.volume == VolumeFluxKind::entropy_conservative;
  const bool llf_surf = fluxes.surface == SurfaceFluxKind::llf;
  if (ec_vol && llf_surf)
    rhs_dispatch_dim(field, ops, gas, floors, EcVolume{gas, fluxes.ec_energy_form},
                     LlfSurface{gas, fluxes.llf_dissipation}, drift, scratch);
  else if (ec_vol && !llf_surf)
    rhs_dispatch_dim(field, ops, gas, floors, EcVolume{gas, fluxes.ec_energy_form},
                     EcSurface{gas, fluxes.ec_energy_form}, drift, scratch);
  else if (!ec_vol && llf_surf)
    rhs_dispatch_dim(field, ops, gas, floors, CentralVolume{gas},
                     LlfSurface{gas, fluxes.llf_dissipation}, drift, scratch);
  else
    rhs_dispatch_dim(field, ops, gas, floors, CentralVolume{gas},
                     EcSurface{gas, fluxes.ec_energy_form}, drift, scratch);
}

DiscreteField dg_rhs(const DiscreteField& field, const OperatorSet& ops, const GasModel& gas,
                     const FluxConfig& fluxes, const ValidityFloors& floors) {
  DiscreteField drift = DiscreteField::zeros(field.mesh, field.degree);
  RhsScratch scratch;
  dg_rhs(field, ops, gas, fluxes, floors, drift, scratch);
  return drift;
}

double discrete_l2_norm(const Mesh& mesh, const OperatorSet& ops, std::span<const double> nodal) {
  const int np = ops.degree + 1;
  KahanSum sum;
  if (mesh.dim == 1) {
    const double scale = 0.5 * mesh.spacing(0);
    const int n = mesh.elements_per_axis;
    if (nodal.size() != static_cast<std::size_t>(n) * np)
      throw std::invalid_argument("discrete_l2_norm: array size does not match mesh");
    std::size_t g = 0;
    for (int e = 0; e < n; ++e)
      for (int i = 0; i < np; ++i, ++g) sum.add(ops.weights[i] * scale * nodal[g] * nodal[g]);
  } else {
    const double scale = 0.25 * mesh.spacing(0) * mesh.spacing(1);
    const int n = mesh.elements_per_axis;
    if (nodal.size() != static_cast<std::size_t>(n) * n * np * np)
      throw std::invalid_argument("discrete_l2_norm: array size does not match mesh");
    std::size_t g = 0;
    for (int e = 0; e < n * n; ++e)
      for (int j = 0; j < np; ++j)
        for (int i = 0; i < np; ++i, ++g)
          sum.add(ops.weights[i] * ops.weights[j] * scale * nodal[g] * nodal[g]);
  }
  return std::sqrt(sum.value());
}

double discrete_l2_norm(const DiscreteField& field, const OperatorSet& ops, int comp) {
  std::vector<double> nodal(field.n_nodes());
  const int nc = field.n_comp();
  for (std::size_t g = 0; g < nodal.size(); ++g) nodal[g] = field.data[g * nc + comp];
  return discrete_l2_norm(field.mesh, ops, nodal);
}

namespace {

template <int Dim>
Totals totals_impl(const DiscreteField& field, const OperatorSet& ops, const GasModel& gas) {
  const int np = ops.degree + 1;
  const int n = field.mesh.elements_per_axis;
  KahanSum mass, mom0, mom1, ener, entr;
  bool valid = true;
  auto accumulate = [&](double w, const double* u) {
    mass.add(w * u[0]);
    mom0.add(w * u[1]);
    if constexpr (Dim == 2) mom1.add(w * u[2]);
    ener.add(w * u[1 + Dim]);
    Cons<Dim> c = load_cons<Dim>(u);
    double p = pressure(c, gas);
    if (c.rho > 0.0 && p > 0.0)
      entr.add(w * total_entropy(c, gas));
    else
      valid = false;
  };
  if constexpr (Dim == 1) {
    const double scale = 0.5 * field.mesh.spacing(0);
    for (int e = 0; e < n; ++e)
      for (int i = 0; i < np; ++i) accumulate(ops.weights[i] * scale, field.node(e, i));
  } else {
    const double scale = 0.25 * field.mesh.spacing(0) * field.mesh.spacing(1);
    for (int e = 0; e < n * n; ++e)
      for (int j = 0; j < np; ++j)
        for (int i = 0; i < np; ++i)
          accumulate(ops.weights[i] * ops.weights[j] * scale, field.node(e, j * np + i));
  }
  Totals t;
  t.mass = mass.value();
  t.momentum = {mom0.value(), mom1.value()};
  t.energy = ener.value();
  t.entropy = valid ? entr.value() : std::numeric_limits<double>::quiet_NaN();
  return t;
}

}  // namespace

Totals total_quantities(const DiscreteField& field, const OperatorSet& ops, const GasModel& gas) {
  return field.mesh.dim == 1 ? totals_impl<1>(field, ops, gas) : totals_impl<2>(field, ops, gas);
}

void conserved_totals(const DiscreteField& field, const OperatorSet& ops, double* mass,
                      double* momentum, double* energy) {
  const int np = ops.degree + 1;
  const int n = field.mesh.elements_per_axis;
  const int nc = field.n_comp();
  const int dim = field.mesh.dim;
  KahanSum m, p0, p1, en;
  if (dim == 1) {
    const double scale = 0.5 * field.mesh.spacing(0);
    const double* u = field.data.data();
    for (int e = 0; e < n; ++e)
      for (int i = 0; i < np; ++i, u += nc) {
        double w = ops.weights[i] * scale;
        m.add(w * u[0]);
        p0.add(w * u[1]);
        en.add(w * u[2]);
      }
  } else {
    const double scale = 0.25 * field.mesh.spacing(0) * field.mesh.spacing(1);
    const double* u = field.data.data();
    for (int e = 0; e < n * n; ++e)
      for (int j = 0; j < np; ++j)
        for (int i = 0; i < np; ++i, u += nc) {
          double w = ops.weights[i] * ops.weights[j] * scale;
          m.add(w * u[0]);
          p0.add(w * u[1]);
          p1.add(w * u[2]);
          en.add(w * u[3]);
        }
  }
  *mass = m.value();
  momentum[0] = p0.value();
  momentum[1] = p1.value();
  *energy = en.value();
}

namespace {

// Coarse Lagrange basis evaluated at the fine nodes of each refined
// sub-element: weights[s][q][i] = L_i(xi of fine node q inside sub-cell s).
std::vector<double> refinement_weights(const OperatorSet& coarse, const OperatorSet& fine,
                                       int ratio) {
  const int npc = coarse.degree + 1;
  const int npf = fine.degree + 1;
  std::vector<double> bary(npc, 1.0);
  for (int i = 0; i < npc; ++i)
    for (int j = 0; j < npc; ++j)
      if (j != i) bary[i] *= coarse.nodes[i] - coarse.nodes[j];
  for (double& b : bary) b = 1.0 / b;

  std::vector<double> w(static_cast<std::size_t>(ratio) * npf * npc, 0.0);
  for (int s = 0; s < ratio; ++s)
    for (int q = 0; q < npf; ++q) {
      double xi = -1.0 + (2.0 * s + (fine.nodes[q] + 1.0)) / ratio;
      double* row = w.data() + (static_cast<std::size_t>(s) * npf + q) * npc;
      int hit = -1;
      for (int i = 0; i < npc; ++i)
        if (xi == coarse.nodes[i]) hit = i;
      if (hit >= 0) {
        row[hit] = 1.0;
        continue;
      }
      double denom = 0.0;
      for (int i = 0; i < npc; ++i) {
        row[i] = bary[i] / (xi - coarse.nodes[i]);
        denom += row[i];
      }
      for (int i = 0; i < npc; ++i) row[i] /= denom;
    }
  return w;
}

}  // namespace

DiscreteField interpolate_to_reference(const DiscreteField& coarse, const OperatorSet& coarse_ops,
                                       const Mesh& fine_mesh, int fine_degree,
                                       const OperatorSet& fine_ops) {
  const Mesh& cm = coarse.mesh;
  if (cm.dim != fine_mesh.dim)
    throw std::invalid_argument("interpolate_to_reference: dimension mismatch");
  for (int a = 0; a < cm.dim; ++a)
    if (cm.lower[a] != fine_mesh.lower[a] || cm.upper[a] != fine_mesh.upper[a])
      throw std::invalid_argument("interpolate_to_reference: domain mismatch");
  if (fine_mesh.elements_per_axis % cm.elements_per_axis != 0)
    throw std::invalid_argument(
        "interpolate_to_reference: fine element count must be a multiple of the coarse count");

  const int ratio = fine_mesh.elements_per_axis / cm.elements_per_axis;
  const int npc = coarse_ops.degree + 1;
  const int npf = fine_ops.degree + 1;
  const int nc = cm.dim + 2;
  std::vector<double> w = refinement_weights(coarse_ops, fine_ops, ratio);
  auto wrow = [&](int s, int q) { return w.data() + (static_cast<std::size_t>(s) * npf + q) * npc; };

  DiscreteField fine = DiscreteField::zeros(fine_mesh, fine_degree);
  if (cm.dim == 1) {
    for (int ef = 0; ef < fine_mesh.elements_per_axis; ++ef) {
      int ec = ef / ratio, s = ef % ratio;
      for (int q = 0; q < npf; ++q) {
        const double* row = wrow(s, q);
        double* dst = fine.node(ef, q);
        for (int c = 0; c < nc; ++c) {
          double acc = 0.0;
          for (int i = 0; i < npc; ++i) acc += row[i] * coarse.node(ec, i)[c];
          dst[c] = acc;
        }
      }
    }
    return fine;
  }

  const int ncoarse = cm.elements_per_axis;
  const int nfine = fine_mesh.elements_per_axis;
  std::vector<double> stage(static_cast<std::size_t>(npc) * nc);  // x-interpolated, y-pending
  for (int efy = 0; efy < nfine; ++efy) {
    int ecy = efy / ratio, sy = efy % ratio;
    for (int efx = 0; efx < nfine; ++efx) {
      int ecx = efx / ratio, sx = efx % ratio;
      const int ec = ecy * ncoarse + ecx;
      const int ef = efy * nfine + efx;
      for (int qx = 0; qx < npf; ++qx) {
        const double* rowx = wrow(sx, qx);
        for (int j = 0; j < npc; ++j) {
          double* st = stage.data() + static_cast<std::size_t>(j) * nc;
          for (int c = 0; c < nc; ++c) {
            double acc = 0.0;
            for (int i = 0; i < npc; ++i) acc += rowx[i] * coarse.node(ec, j * npc + i)[c];
            st[c] = acc;
          }
        }
        for (int qy = 0; qy < npf; ++qy) {
          const double* rowy = wrow(sy, qy);
          double* dst = fine.node(ef, qy * npf + qx);
          for (int c = 0; c < nc; ++c) {
            double acc = 0.0;
            for (int j = 0; j < npc; ++j) acc += rowy[j] * stage[static_cast<std::size_t>(j) * nc + c];
            dst[c] = acc;
          }
        }
      }
    }
  }
  return fine;
}

double relative_entropy(const DiscreteField& field, const OperatorSet& ops, const GasModel& gas,
                        const ReferenceTriple& ref, const ValidityFloors& floors) {
  const int np = ops.degree + 1;
  const int n = field.mesh.elements_per_axis;
  const int dim = field.mesh.dim;
  KahanSum sum;
  auto add_node = [&](double w, int elem, int node_idx) {
    std::array<double, 2> x = node_position(field.mesh, ops, elem, node_idx);
    double r = ref.density(x);
    double Theta = ref.temperature(x);
    if (!(r > 0.0) || !(Theta > 0.0))
      throw std::domain_error("relative_entropy: reference density and temperature must be positive");
    std::array<double, 2> v = ref.velocity(x);
    const double* u = field.node(elem, node_idx);
    double integrand;
    if (dim == 1) {
      Prim<1> q = cons_to_prim(load_cons<1>(u), gas, floors);
      double sh = specific_entropy(q.rho, q.theta, gas);
      double sr = specific_entropy(r, Theta, gas);
      double dH = Theta * (gas.c_v + 1.0 - sr);
      double H = gas.c_v * r * Theta - Theta * r * sr;
      double du = q.vel[0] - v[0];
      integrand = 0.5 * q.rho * du * du - Theta * q.rho * sh - q.rho * dH + (r * dH - H);
    } else {
      Prim<2> q = cons_to_prim(load_cons<2>(u), gas, floors);
      double sh = specific_entropy(q.rho, q.theta, gas);
      double sr = specific_entropy(r, Theta, gas);
      double dH = Theta * (gas.c_v + 1.0 - sr);
      double H = gas.c_v * r * Theta - Theta * r * sr;
      double du0 = q.vel[0] - v[0], du1 = q.vel[1] - v[1];
      integrand = 0.5 * q.rho * (du0 * du0 + du1 * du1) - Theta * q.rho * sh - q.rho * dH +
                  (r * dH - H);
    }
    sum.add(w * integrand);
  };
  if (dim == 1) {
    const double scale = 0.5 * field.mesh.spacing(0);
    for (int e = 0; e < n; ++e)
      for (int i = 0; i < np; ++i) add_node(ops.weights[i] * scale, e, i);
  } else {
    const double scale = 0.25 * field.mesh.spacing(0) * field.mesh.spacing(1);
    for (int e = 0; e < n * n; ++e)
      for (int j = 0; j < np; ++j)
        for (int i = 0; i < np; ++i) add_node(ops.weights[i] * ops.weights[j] * scale, e, j * np + i);
  }
  return sum.value();
}

}  // namespace stochdg
