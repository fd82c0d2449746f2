#include "warpmcf/monitors.hpp"

#include <cmath>
#include <limits>

#include "warpmcf/ambient.hpp"
#include "warpmcf/comparison.hpp"

namespace warpmcf {

void BoundReport::finish(double tol) {
  tol_disc = tol;
  worst_margin = series.empty() ? 0.0 : series.front().margin;
  for (const BoundSample& s : series) {
    if (s.margin <= worst_margin) {
      worst_margin = s.margin;
      worst_time = s.t;
    }
  }
  if (!one_sided) pass = pass && (series.empty() || worst_margin >= -tol_disc);
}

double discretization_tol(const Trajectory& traj, double coeff) {
  const GridGeometry& g = *traj.geo;
  double h = g.h1();
  if (g.dim() == 2) {
    // Effective angular spacing: the arc length at mid-radius on polar grids.
    const double h2eff = g.polar() ? g.h2() * g.f()[g.n1() / 2] : g.h2();
    h = std::max(h, h2eff);
  }
  return coeff * (h * h + traj.dt);
}

namespace {

double sup_over_interior(const GraphFields& f, const std::vector<double>& field, int* argmax) {
  double s = field.empty() ? 0.0 : field[0];
  int arg = 0;
  for (int j = 0; j < f.interior_end; ++j)
    for (int k = 0; k < f.n2; ++k) {
      const int id = j * f.n2 + k;
      if (field[id] > s) {
        s = field[id];
        arg = id;
      }
    }
  if (argmax) *argmax = arg;
  return s;
}

}  // namespace

BoundReport gradient_bound_check(const Trajectory& traj, const EstimateConstants& consts,
                                 double tol_coeff) {
  if (traj.samples.empty()) throw std::runtime_error("gradient_bound_check: empty trajectory");
  BoundReport rep;
  rep.id = "gradient-bound";
  rep.constants = consts;
  const double v0 = traj.front().fields.sup_v;
  const double rate = consts.gradient_rate();
  double worst = std::numeric_limits<double>::infinity();
  for (const FlowSample& s : traj.samples) {
    BoundSample b;
    b.t = s.t;
    b.measured = s.fields.sup_v;
    b.bound = v0 * std::exp(rate * s.t);
    b.margin = b.bound - b.measured;
    if (b.margin < worst) {
      worst = b.margin;
      rep.worst_node = s.fields.argmax_v;
    }
    rep.series.push_back(b);
  }
  rep.finish(discretization_tol(traj, tol_coeff));
  return rep;
}

BoundReport frakg_bound_check(const Trajectory& traj, const EstimateConstants& consts,
                              double tol_coeff) {
  if (traj.samples.empty()) throw std::runtime_error("frakg_bound_check: empty trajectory");
  BoundReport rep;
  rep.id = "frakg-ceiling";
  rep.constants = consts;

  // g0_max from the first sample fixes the ceiling for the whole run.
  auto frakg_sup = [&](const FlowSample& s, bool* breached, int* node) -> double {
    double worst = 0.0;
    for (int j = 0; j < s.fields.interior_end; ++j)
      for (int k = 0; k < s.fields.n2; ++k) {
        const int id = j * s.fields.n2 + k;
        const double v2 = sqr(s.fields.v[id]);
        if (consts.delta * v2 >= 1.0) {
          *breached = true;
          *node = id;
          return worst;
        }
        worst = std::max(worst, consts.psi(s.fields.v[id]) * s.fields.normA2[id]);
      }
    return worst;
  };

  bool breached = false;
  int breach_node = -1;
  const double g0 = frakg_sup(traj.front(), &breached, &breach_node);
  const double ceiling = consts.frakg_ceiling(g0);
  double running = 0.0;
  for (const FlowSample& s : traj.samples) {
    const double gs = frakg_sup(s, &breached, &breach_node);
    if (breached) {
      rep.pass = false;
      rep.note = "gradient-bound breach: delta v^2 >= 1 at node " + std::to_string(breach_node) +
                 ", t = " + std::to_string(s.t);
      break;
    }
    running = std::max(running, gs);
    BoundSample b;
    b.t = s.t;
    b.measured = running;
    b.bound = ceiling;
    b.margin = b.bound - b.measured;
    rep.series.push_back(b);
  }
  rep.finish(discretization_tol(traj, tol_coeff));
  return rep;
}

BoundReport regularization_check(const Trajectory& traj, int m) {
  if (traj.samples.empty()) throw std::runtime_error("regularization_check: empty trajectory");
  if (m != 0 && m != 1) throw std::runtime_error("regularization_check supports m = 0, 1");
  const GridGeometry& g = *traj.geo;
  BoundReport rep;
  rep.id = m == 0 ? "regularization-m0" : "regularization-m1";
  rep.one_sided = true;  // finiteness statement, not a two-sided inequality

  if (m == 1 && (g.dim() != 1 || g.polar())) {
    rep.pass = true;
    rep.note = "m=1 not available on this chart (needs a 1-d flat chart)";
    return rep;
  }

  double running = 0.0;
  for (const FlowSample& s : traj.samples) {
    if (s.t <= 0.0) continue;
    double measured = 0.0;
    if (m == 0) {
      double supA2 = sup_over_interior(s.fields, s.fields.normA2, nullptr);
      measured = s.t * supA2 / (1.0 + s.t);
    } else {
      // |nabla A| along the curve: arclength derivative of the signed
      // curvature kappa = A11/g11 (g11 = v^2 when n = 1).
      const int n = g.n1();
      const double h = g.h1();
      double sup = 0.0;
      for (int i = 0; i < n; ++i) {
        const int ip = (i + 1) % n, im = (i + n - 1) % n;
        const double kp = s.fields.A11[ip] / sqr(s.fields.v[ip]);
        const double km = s.fields.A11[im] / sqr(s.fields.v[im]);
        const double dk = (kp - km) / (2.0 * h * s.fields.v[i]);
        sup = std::max(sup, dk * dk);
      }
      measured = sqr(s.t / (1.0 + s.t)) * sup;
    }
    running = std::max(running, measured);
    BoundSample b;
    b.t = s.t;
    b.measured = measured;
    b.bound = running;  // empirical alpha_m so far
    b.margin = b.bound - b.measured;
    rep.series.push_back(b);
  }
  rep.pass = std::isfinite(running);
  rep.note = "alpha_" + std::to_string(m) + " = " + std::to_string(running);
  rep.finish(0.0);
  return rep;
}

BoundReport decay_check(const Trajectory& traj, const EstimateConstants& consts, double k,
                        double tol_coeff) {
  if (traj.samples.empty()) throw std::runtime_error("decay_check: empty trajectory");
  if (!(k < 0.0)) throw std::runtime_error("decay_check needs an ambient ceiling k < 0");
  const GridGeometry& g = *traj.geo;
  const BaseManifold& base = g.base();
  const WarpFactor& warp = g.warp();

  // Precondition: ambient sectional <= k over the grid.
  for (int j = 0; j < g.interior_end(); ++j)
    for (int kk = 0; kk < g.n2(); ++kk) {
      const Vec2 x = g.point(j, kk);
      const double worst = ambient_sectional_max(base, warp, x);
      if (worst > k + 1e-12)
        throw std::runtime_error(
            "decay_check precondition failed: ambient sectional " + std::to_string(worst) +
            " > k at ring " + std::to_string(j));
    }

  BoundReport rep;
  rep.id = "slice-decay";
  rep.constants = consts;
  const int n = g.dim();

  bool exact = true;
  auto sup_sk = [&](const FlowSample& s) {
    double worst = 0.0;
    for (int j = 0; j < s.fields.interior_end; ++j)
      for (int kk = 0; kk < g.n2(); ++kk) {
        const int id = g.index(j, kk);
        const SliceDistance d = distance_to_slice(base, warp, g.point(j, kk), s.u[id]);
        exact = exact && d.exact;
        worst = std::max(worst, s_lambda(k, d.length));
      }
    return worst;
  };

  const double sk0 = sup_sk(traj.front());
  for (const FlowSample& s : traj.samples) {
    BoundSample b;
    b.t = s.t;
    b.measured = sup_sk(s);
    b.bound = sk0 * std::exp(k * n * s.t);
    b.margin = b.bound - b.measured;
    rep.series.push_back(b);
  }
  rep.one_sided = !exact;
  if (!exact) rep.note = "proxy distances (upper bounds): one-sided diagnostic only";
  rep.finish(discretization_tol(traj, tol_coeff));
  return rep;
}

BoundReport graph_property_check(const Trajectory& traj, const EstimateConstants& consts) {
  BoundReport rep;
  rep.id = "graph-property";
  rep.constants = consts;
  for (const FlowSample& s : traj.samples) {
    BoundSample b;
    b.t = s.t;
    b.measured = s.fields.sup_v;
    b.bound = kGraphFailureV;
    b.margin = b.bound - b.measured;
    rep.series.push_back(b);
    if (!std::isfinite(s.fields.sup_v)) rep.pass = false;
  }
  rep.finish(0.0);
  if (traj.blew_up) {
    rep.pass = false;
    rep.worst_node = traj.blowup.node;
    rep.worst_time = traj.blowup.time;
    rep.note = traj.blowup.what;
  }
  return rep;
}

ViolationClass classify_violation(double worst_violation_coarse, double worst_violation_fine) {
  const double tiny = 1e-14;
  if (worst_violation_fine <= tiny) return ViolationClass::None;
  if (worst_violation_fine <= 0.55 * worst_violation_coarse) return ViolationClass::Discretization;
  return ViolationClass::Genuine;
}

}  // namespace warpmcf
