#include "warpmcf/profile_curve.hpp"

#include <algorithm>
#include <cmath>

#include "warpmcf/spline.hpp"

namespace warpmcf {

double gudermann(double r) { return 2.0 * std::atan(std::tanh(0.5 * r)); }

namespace {

double seg_length_q(const ProfileNode& a, const ProfileNode& b) {
  const double rm = 0.5 * (a.r + b.r);
  return std::sqrt(sqr(b.r - a.r) + sqr(std::cosh(rm) * (b.u - a.u)));
}

}  // namespace

double ProfileCurve::q_length() const {
  double L = 0.0;
  for (std::size_t i = 1; i < nodes.size(); ++i) L += seg_length_q(nodes[i - 1], nodes[i]);
  return L;
}

double ProfileCurve::min_spacing() const {
  double s = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < nodes.size(); ++i)
    s = std::min(s, seg_length_q(nodes[i - 1], nodes[i]));
  return s;
}

double ProfileCurve::max_spacing() const {
  double s = 0.0;
  for (std::size_t i = 1; i < nodes.size(); ++i)
    s = std::max(s, seg_length_q(nodes[i - 1], nodes[i]));
  return s;
}

std::vector<NodeGeometry> generated_mean_curvature(const ProfileCurve& curve) {
  const int N = static_cast<int>(curve.nodes.size());
  if (N < 3) throw std::runtime_error("profile curve needs at least 3 nodes");
  std::vector<NodeGeometry> out(N);

  // Work in the isothermal plane (sigma, u); the conformal factor is cosh r,
  // and euclidean unit directions there coincide with q-frame components.
  std::vector<double> sx(N), sy(N);
  for (int i = 0; i < N; ++i) {
    sx[i] = gudermann(curve.nodes[i].r);
    sy[i] = curve.nodes[i].u;
  }

  for (int i = 1; i + 1 < N; ++i) {
    const double e1x = sx[i] - sx[i - 1], e1y = sy[i] - sy[i - 1];
    const double e2x = sx[i + 1] - sx[i], e2y = sy[i + 1] - sy[i];
    const double l1 = std::hypot(e1x, e1y), l2 = std::hypot(e2x, e2y);
    const double lc = std::hypot(e1x + e2x, e1y + e2y);
    if (l1 == 0.0 || l2 == 0.0 || lc == 0.0)
      throw CurveAbort("degenerate profile segment at node " + std::to_string(i));
    // Circumscribed-circle curvature, signed by the ccw normal.
    const double cross = e1x * e2y - e1y * e2x;
    const double kappa_e = 2.0 * cross / (l1 * l2 * lc);
    const double tx = (e1x + e2x) / lc, ty = (e1y + e2y) / lc;
    const double nx = -ty, ny = tx;

    const double r = curve.nodes[i].r;
    if (r <= 0.0) throw PinchError("interior node on the axis at index " + std::to_string(i));
    const double ch = std::cosh(r), sh = std::sinh(r);
    // kappa_q = (kappa_e - d_lambda/d_n)/c with lambda = log cosh r,
    // grad lambda = (sinh r, 0) in the isothermal plane.
    const double kq = (kappa_e - sh * nx) / ch;
    NodeGeometry ng;
    ng.kappa_q = kq;
    ng.nu_r = nx;
    ng.nu_u = ny;
    ng.H = kq - (curve.multiplicity - 1) * (ch / sh) * nx;
    out[i] = ng;
  }
  out[0] = out[1];
  out[N - 1] = out[N - 2];
  return out;
}

namespace {

bool segments_intersect(const ProfileNode& a, const ProfileNode& b, const ProfileNode& c,
                        const ProfileNode& d) {
  auto orient = [](const ProfileNode& p, const ProfileNode& q, const ProfileNode& r) {
    return (q.r - p.r) * (r.u - p.u) - (q.u - p.u) * (r.r - p.r);
  };
  const double o1 = orient(a, b, c), o2 = orient(a, b, d);
  const double o3 = orient(c, d, a), o4 = orient(c, d, b);
  return ((o1 > 0) != (o2 > 0)) && ((o3 > 0) != (o4 > 0));
}

void check_simple(const ProfileCurve& c) {
  const auto& nd = c.nodes;
  for (std::size_t i = 1; i < nd.size(); ++i)
    for (std::size_t j = i + 2; j < nd.size(); ++j)
      if (segments_intersect(nd[i - 1], nd[i], nd[j - 1], nd[j]))
        throw CurveAbort("profile curve self-intersects");
}

}  // namespace

ProfileCurve reparametrize(const ProfileCurve& curve) {
  const int N = static_cast<int>(curve.nodes.size());
  std::vector<double> s(N, 0.0);
  for (int i = 1; i < N; ++i)
    s[i] = s[i - 1] + seg_length_q(curve.nodes[i - 1], curve.nodes[i]);
  const double L = s[N - 1];
  if (!(L > 0.0)) throw PinchError("profile curve has zero length");

  int count = std::max(9, static_cast<int>(std::round(L / curve.target_spacing)) + 1);
  std::vector<double> rr(N), uu(N);
  for (int i = 0; i < N; ++i) {
    rr[i] = curve.nodes[i].r;
    uu[i] = curve.nodes[i].u;
  }
  // Guard against duplicate abscissae from collapsed segments.
  for (int i = 1; i < N; ++i)
    if (s[i] <= s[i - 1]) s[i] = s[i - 1] + 1e-12 * L;
  CubicSpline r_of_s(s, rr), u_of_s(std::move(s), std::move(uu));

  ProfileCurve out = curve;
  out.nodes.clear();
  out.nodes.reserve(count);
  for (int i = 0; i < count; ++i) {
    const double si = L * i / (count - 1);
    ProfileNode n;
    n.r = std::max(0.0, r_of_s.eval(si));
    n.u = u_of_s.eval(si);
    out.nodes.push_back(n);
  }
  out.nodes.front() = curve.nodes.front();
  out.nodes.back() = curve.nodes.back();
  check_simple(out);
  return out;
}

ProfileCurve step_profile(const ProfileCurve& curve, double dt, StepMode mode) {
  if (!(dt > 0.0)) throw std::runtime_error("dt must be positive");
  const auto geom = generated_mean_curvature(curve);
  const int N = static_cast<int>(curve.nodes.size());

  ProfileCurve next = curve;
  next.t = curve.t + dt;

  std::vector<double> vel_u(N, 0.0);  // coordinate u-velocity, for the axis ends
  for (int i = 1; i + 1 < N; ++i) {
    const double ch = std::cosh(curve.nodes[i].r);
    if (mode == StepMode::Vertical) {
      if (geom[i].nu_u <= 1e-8)
        throw CurveAbort("curve stopped being a graph over r at node " + std::to_string(i));
      const double vu = geom[i].H / (ch * geom[i].nu_u);
      next.nodes[i].u = curve.nodes[i].u + dt * vu;
      vel_u[i] = vu;
    } else {
      const double vr = geom[i].H * geom[i].nu_r;
      const double vu = geom[i].H * geom[i].nu_u / ch;  // frame -> coordinate
      next.nodes[i].r = curve.nodes[i].r + dt * vr;
      next.nodes[i].u = curve.nodes[i].u + dt * vu;
      vel_u[i] = vu;
      if (next.nodes[i].r <= 0.0)
        throw PinchError("curve touched the axis at t = " + std::to_string(next.t));
    }
  }
  // Axis and free ends ride along by extrapolation of the vertical
  // velocity; frozen ends stay put.
  if (curve.inner != EndCondition::Frozen && N >= 3)
    next.nodes.front().u += dt * (4.0 * vel_u[1] - vel_u[2]) / 3.0;
  if (curve.outer != EndCondition::Frozen && N >= 3)
    next.nodes.back().u += dt * (4.0 * vel_u[N - 2] - vel_u[N - 3]) / 3.0;

  const double lo = 0.5 * next.target_spacing, hi = 2.0 * next.target_spacing;
  if (next.min_spacing() < lo || next.max_spacing() > hi) next = reparametrize(next);
  return next;
}

double profile_dt(const ProfileCurve& curve, const std::vector<NodeGeometry>& geom, double cfl,
                  StepMode mode) {
  const double ds = curve.min_spacing();
  double vmax = 1e-12;
  for (std::size_t i = 1; i + 1 < curve.nodes.size(); ++i) {
    double speed = std::abs(geom[i].H);
    if (mode == StepMode::Vertical && geom[i].nu_u > 1e-8)
      speed = std::abs(geom[i].H) / geom[i].nu_u;  // q-speed of the vertical marker
    vmax = std::max(vmax, speed);
  }
  return cfl * std::min(0.25 * ds * ds, 0.5 * ds / vmax);
}

GraphMeasures graph_measures(const ProfileCurve& curve) {
  const auto geom = generated_mean_curvature(curve);
  const int N = static_cast<int>(curve.nodes.size());
  GraphMeasures m;
  m.v_eq.assign(N, 1.0);
  m.v_geo.assign(N, 1.0);
  const double inf = std::numeric_limits<double>::infinity();

  for (int i = 1; i + 1 < N; ++i) {
    const double r = curve.nodes[i].r, u = curve.nodes[i].u;
    const double sigma_eq = geom[i].nu_u;  // <N, e_u>
    m.v_eq[i] = sigma_eq > 0.0 ? 1.0 / sigma_eq : inf;

    // Unit direction of the geodesic foliation line (rho = const) in frame
    // components, from the closed-form chart.
    const double shl = std::cosh(r) * std::sinh(u);
    const double chl = std::sqrt(1.0 + shl * shl);
    const double shrho = std::sinh(r) / chl;
    const double drdl = shrho * shl / std::cosh(r);
    const double dudl = (chl - std::sinh(r) * std::sinh(u) * drdl) /
                        (std::cosh(r) * std::cosh(u));
    double lr = drdl, lu = std::cosh(r) * dudl;
    const double ln = std::hypot(lr, lu);
    lr /= ln;
    lu /= ln;
    const double sigma_geo = geom[i].nu_r * lr + geom[i].nu_u * lu;
    m.v_geo[i] = sigma_geo > 0.0 ? 1.0 / sigma_geo : inf;
    m.min_sigma_geo = std::min(m.min_sigma_geo, sigma_geo);
    m.sup_v_eq = std::max(m.sup_v_eq, m.v_eq[i]);
    m.sup_v_geo = std::max(m.sup_v_geo, m.v_geo[i]);
  }
  m.v_eq[0] = m.v_eq[1];
  m.v_geo[0] = m.v_geo[1];
  m.v_eq[N - 1] = m.v_eq[N - 2];
  m.v_geo[N - 1] = m.v_geo[N - 2];
  return m;
}

void to_geodesic_chart(double r, double u, double& rho, double& l) {
  const double shl = std::cosh(r) * std::sinh(u);
  l = std::asinh(shl);
  rho = std::asinh(std::sinh(r) / std::cosh(l));
}

void from_geodesic_chart(double rho, double l, double& r, double& u) {
  r = std::asinh(std::sinh(rho) * std::cosh(l));
  u = std::asinh(std::sinh(l) / std::cosh(r));
}

double generated_area(const ProfileCurve& curve) {
  double A = 0.0;
  const int p = curve.multiplicity - 1;
  for (std::size_t i = 1; i < curve.nodes.size(); ++i) {
    const double rm = 0.5 * (curve.nodes[i - 1].r + curve.nodes[i].r);
    A += std::pow(std::sinh(rm), p) * seg_length_q(curve.nodes[i - 1], curve.nodes[i]);
  }
  return A;
}

ProfileCurve make_slice_segment(double r_max, int count, int n) {
  ProfileCurve c;
  c.multiplicity = n;
  c.inner = EndCondition::Axis;
  c.outer = EndCondition::Frozen;
  for (int i = 0; i < count; ++i) c.nodes.push_back({r_max * i / (count - 1), 0.0});
  c.target_spacing = c.q_length() / (count - 1);
  return c;
}

ProfileCurve make_geodesic_sphere(double radius, int count, int n) {
  // Points at ambient distance `radius` from (r=0, u=0): cosh r cosh u =
  // cosh(radius); parametrized from the top axis point to the bottom one.
  ProfileCurve c;
  c.multiplicity = n;
  c.inner = EndCondition::Axis;
  c.outer = EndCondition::Axis;
  const double cr = std::cosh(radius);
  for (int i = 0; i < count; ++i) {
    // Bottom-to-top ordering makes the ccw normal point inward, so H > 0.
    const double a = M_PI * i / (count - 1);
    const double u = -radius * std::cos(a);
    const double r = std::acosh(std::max(1.0, cr / std::cosh(u)));
    c.nodes.push_back({r, u});
  }
  c.target_spacing = c.q_length() / (count - 1);
  return reparametrize(c);
}

ProfileCurve make_equidistant_curve(double l, double rho_max, int count, int n) {
  ProfileCurve c;
  c.multiplicity = n;
  c.inner = EndCondition::Axis;
  c.outer = EndCondition::Frozen;
  for (int i = 0; i < count; ++i) {
    double r, u;
    from_geodesic_chart(rho_max * i / (count - 1), l, r, u);
    c.nodes.push_back({r, u});
  }
  c.target_spacing = c.q_length() / (count - 1);
  return c;
}

ProfileCurve make_graph_curve(const std::vector<double>& r, const std::vector<double>& u, int n) {
  if (r.size() != u.size() || r.size() < 3) throw std::runtime_error("bad graph curve data");
  ProfileCurve c;
  c.multiplicity = n;
  c.inner = r.front() == 0.0 ? EndCondition::Axis : EndCondition::Frozen;
  c.outer = EndCondition::Frozen;
  for (std::size_t i = 0; i < r.size(); ++i) c.nodes.push_back({r[i], u[i]});
  c.target_spacing = c.q_length() / (static_cast<double>(r.size()) - 1);
  return c;
}

}  // namespace warpmcf
