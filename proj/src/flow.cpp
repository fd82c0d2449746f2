#include "warpmcf/flow.hpp"

#include <algorithm>
#include <cmath>

namespace warpmcf {

namespace {

struct Wrap {
  int n1, n2;
  bool polar;
  int jmap(int j, int& k) const {
    if (polar) {
      if (j < 0) {
        j = -1 - j;
        k += n2 / 2;
      }
    } else {
      if (j < 0) j += n1;
      else if (j >= n1) j -= n1;
    }
    return j;
  }
  double operator()(const double* u, int j, int k) const {
    j = jmap(j, k);
    if (k < 0) k += n2;
    else if (k >= n2) k -= n2;
    return u[j * n2 + k];
  }
};

/// Explicit right side of the height equation on periodic charts (n = 1, 2).
void rhs_periodic(const GridGeometry& g, const std::vector<double>& u, std::vector<double>& out,
                  int* bad_node) {
  const int n1 = g.n1(), n2 = g.n2();
  const int dim = g.dim();
  const double h1 = g.h1(), h2 = g.h2();
  const auto& phi = g.phi();
  const auto& gp1 = g.gphi1();
  const auto& gp2 = g.gphi2();
  Wrap U{n1, n2, false};
  const double* pu = u.data();

  for (int j = 0; j < n1; ++j) {
    for (int k = 0; k < n2; ++k) {
      const int id = j * n2 + k;
      const double uc = pu[id];
      const double up = U(pu, j + 1, k), um = U(pu, j - 1, k);
      const double u1 = (up - um) / (2.0 * h1);
      const double h11 = (up - 2.0 * uc + um) / (h1 * h1);
      double u2 = 0.0, h22 = 0.0, h12 = 0.0;
      if (dim == 2) {
        const double ur = U(pu, j, k + 1), ul = U(pu, j, k - 1);
        u2 = (ur - ul) / (2.0 * h2);
        h22 = (ur - 2.0 * uc + ul) / (h2 * h2);
        h12 = (U(pu, j + 1, k + 1) - U(pu, j - 1, k + 1) - U(pu, j + 1, k - 1) +
               U(pu, j - 1, k - 1)) /
              (4.0 * h1 * h2);
      }
      const double p = phi[id], p2 = p * p;
      const double v2 = 1.0 + p2 * (u1 * u1 + u2 * u2);
      if (!(v2 < kGraphFailureV * kGraphFailureV) && *bad_node < 0) *bad_node = id;
      const double w = p2 / v2;
      const double dot = u1 * gp1[id] + u2 * gp2[id];
      const double hessuu = u1 * u1 * h11 + 2.0 * u1 * u2 * h12 + u2 * u2 * h22;
      out[id] = (h11 + h22) - w * hessuu + dot * (v2 + 1.0) / (p * v2);
    }
  }
}

/// Cyclic tridiagonal solve (Thomas + Sherman-Morrison) for rows
///   -lo[k] x[k-1] + d[k] x[k] - hi[k] x[k+1] = b[k]  (indices mod n).
/// Coefficients here are diagonally dominant (d = 1 + lo + hi, lo,hi >= 0).
void solve_cyclic_tridiag(std::vector<double>& d, const std::vector<double>& lo,
                          const std::vector<double>& hi, std::vector<double>& b,
                          std::vector<double>& x, std::vector<double>& scratch) {
  const int n = static_cast<int>(d.size());
  // Condense the corner entries with u v^T: u = (gamma, 0, ..., alpha),
  // v = (1, 0, ..., beta/gamma), where alpha is the lower-left corner
  // (-hi[n-1]) and beta the upper-right one (-lo[0]).
  const double alpha = -hi[n - 1], beta = -lo[0];
  const double gamma = -d[0];
  std::vector<double>& z = scratch;
  z.assign(n, 0.0);
  z[0] = gamma;
  z[n - 1] = alpha;
  d[0] -= gamma;
  d[n - 1] -= alpha * beta / gamma;

  auto thomas = [&](std::vector<double>& rhs, std::vector<double>& sol) {
    static thread_local std::vector<double> cp, dp;
    cp.assign(n, 0.0);
    dp.assign(n, 0.0);
    cp[0] = -hi[0] / d[0];
    dp[0] = rhs[0] / d[0];
    for (int i = 1; i < n; ++i) {
      const double m = d[i] + lo[i] * cp[i - 1];
      cp[i] = -hi[i] / m;
      dp[i] = (rhs[i] + lo[i] * dp[i - 1]) / m;
    }
    sol.resize(n);
    sol[n - 1] = dp[n - 1];
    for (int i = n - 2; i >= 0; --i) sol[i] = dp[i] - cp[i] * sol[i + 1];
  };

  static thread_local std::vector<double> y, q;
  thomas(b, y);
  thomas(z, q);
  const double vy = y[0] + beta / gamma * y[n - 1];
  const double vq = q[0] + beta / gamma * q[n - 1];
  const double factor = vy / (1.0 + vq);
  x.resize(n);
  for (int i = 0; i < n; ++i) x[i] = y[i] - factor * q[i];
}

/// IMEX Euler step on polar charts: everything explicit except the angular
/// second difference, whose coefficient c = 1 - (phi^2/v^2) u_theta^2 is
/// frozen at the current state. Keeps dt tied to the radial spacing even
/// where f(r) h_theta is tiny near the pole. Solving for the increment
/// (I - dt c Dtt) du = dt rhs(u) keeps stationary data exactly stationary.
std::vector<double> step_polar(const GridGeometry& g, const std::vector<double>& u, double dt,
                               int* bad_node) {
  const int n1 = g.n1(), n2 = g.n2();
  const double h1 = g.h1(), h2 = g.h2();
  const auto& phi = g.phi();
  const auto& gp1 = g.gphi1();
  const auto& gp2 = g.gphi2();
  Wrap U{n1, n2, true};
  const double* pu = u.data();

  std::vector<double> out(u);  // frozen ring copies through
  std::vector<double> rhs(n2), diag(n2), lo(n2), hi(n2), sol, scratch;

  for (int j = 0; j < n1 - 1; ++j) {
    const double inv_f = g.inv_f()[j];
    const double fpf = g.fp_over_f()[j];
    const double ith = inv_f / h2;
    for (int k = 0; k < n2; ++k) {
      const int id = j * n2 + k;
      const double uc = pu[id];
      const double up = U(pu, j + 1, k), um = U(pu, j - 1, k);
      const double u1 = (up - um) / (2.0 * h1);
      const double h11 = (up - 2.0 * uc + um) / (h1 * h1);
      const double ur = U(pu, j, k + 1), ul = U(pu, j, k - 1);
      const double du2raw = (ur - ul) / (2.0 * h2);
      const double d22raw = ((ur - uc) - (uc - ul)) / (h2 * h2);
      const double cross = (U(pu, j + 1, k + 1) - U(pu, j - 1, k + 1) - U(pu, j + 1, k - 1) +
                            U(pu, j - 1, k - 1)) /
                           (4.0 * h1 * h2);
      const double u2 = du2raw * inv_f;
      const double h12 = inv_f * (cross - fpf * du2raw);

      const double p = phi[id], p2 = p * p;
      const double v2 = 1.0 + p2 * (u1 * u1 + u2 * u2);
      if (!(v2 < kGraphFailureV * kGraphFailureV) && *bad_node < 0) *bad_node = id;
      const double w = p2 / v2;
      const double ctheta = 1.0 - w * u2 * u2;  // implicit coefficient
      const double dot = u1 * gp1[id] + u2 * gp2[id];

      // Full right side at u^n; the (f'/f) u_r part of the angular frame
      // Hessian and the mixed piece stay explicit.
      const double full = (1.0 - w * u1 * u1) * h11 +
                          ctheta * (fpf * u1 + d22raw * inv_f * inv_f) -
                          2.0 * w * u1 * u2 * h12 + dot * (v2 + 1.0) / (p * v2);
      rhs[k] = dt * full;
      const double a = dt * ctheta * ith * ith;
      lo[k] = a;
      hi[k] = a;
      diag[k] = 1.0 + 2.0 * a;
    }
    solve_cyclic_tridiag(diag, lo, hi, rhs, sol, scratch);
    for (int k = 0; k < n2; ++k) out[j * n2 + k] = u[j * n2 + k] + sol[k];
  }
  return out;
}

void check_finite(const std::vector<double>& u, double t, int bad_from_v) {
  if (bad_from_v >= 0)
    throw BlowupError(bad_from_v, t, "graph failure: v exceeded threshold at node " +
                                         std::to_string(bad_from_v));
  for (std::size_t i = 0; i < u.size(); ++i)
    if (!std::isfinite(u[i]))
      throw BlowupError(static_cast<int>(i), t,
                        "graph failure: non-finite height at node " + std::to_string(i));
}

}  // namespace

double flow_dt(const GridGeometry& geo, const DtPolicy& policy) {
  if (!policy.cfl) {
    if (!(policy.fixed_dt > 0.0)) throw std::runtime_error("fixed dt must be positive");
    return policy.fixed_dt;
  }
  if (!(policy.cfl_fraction > 0.0 && policy.cfl_fraction <= 0.9))
    throw std::runtime_error("cfl fraction must lie in (0, 0.9]");
  const int n = geo.dim();
  double h_min = geo.h1();
  if (n == 2 && !geo.polar()) h_min = std::min(h_min, geo.h2());
  return policy.cfl_fraction * h_min * h_min / (2.0 * n);
}

GraphState step_flow(const GraphState& s, double dt, Scheme scheme) {
  if (!(dt > 0.0)) throw std::runtime_error("dt must be positive");
  const GridGeometry& g = *s.geo;
  int bad = -1;
  std::vector<double> unew;

  if (g.polar()) {
    if (scheme == Scheme::Rk2)
      throw std::runtime_error("rk2 is not offered on polar charts (imex euler only)");
    unew = step_polar(g, s.u, dt, &bad);
  } else {
    std::vector<double> k1(s.u.size());
    rhs_periodic(g, s.u, k1, &bad);
    if (scheme == Scheme::Euler) {
      unew = s.u;
      for (std::size_t i = 0; i < unew.size(); ++i) unew[i] += dt * k1[i];
    } else {
      std::vector<double> mid = s.u;
      for (std::size_t i = 0; i < mid.size(); ++i) mid[i] += 0.5 * dt * k1[i];
      std::vector<double> k2(s.u.size());
      rhs_periodic(g, mid, k2, &bad);
      unew = s.u;
      for (std::size_t i = 0; i < unew.size(); ++i) unew[i] += dt * k2[i];
    }
  }
  check_finite(unew, s.t + dt, bad);
  GraphState next;
  next.geo = s.geo;
  next.u = std::move(unew);
  next.t = s.t + dt;
  next.step = s.step + 1;
  return next;
}

std::vector<double> uniform_sample_times(double T, int count) {
  std::vector<double> ts;
  for (int i = 0; i <= count; ++i) ts.push_back(T * i / count);
  return ts;
}

std::vector<double> log_sample_times(double t_min, double T, int count) {
  if (count < 2 || !(t_min > 0.0) || !(T > t_min))
    throw std::runtime_error("log sampling needs count >= 2 and 0 < t_min < T");
  std::vector<double> ts = {0.0};
  for (int i = 0; i < count; ++i)
    ts.push_back(t_min * std::pow(T / t_min, static_cast<double>(i) / (count - 1)));
  return ts;
}

Trajectory run_flow(const GraphState& initial, const RunOptions& opts) {
  if (!(opts.T > 0.0)) throw std::runtime_error("flow horizon must be positive");
  Trajectory traj;
  traj.geo = initial.geo;
  traj.dt = flow_dt(*initial.geo, opts.dt_policy);

  const double dt = traj.dt;
  // Whole steps of dt plus one trailing partial step when dt does not
  // divide the horizon, so the run ends at T exactly.
  const long full = static_cast<long>(std::floor(opts.T / dt + 1e-9));
  const double remainder = opts.T - static_cast<double>(full) * dt;
  const bool partial = remainder > 1e-12 * std::max(1.0, opts.T);
  const long steps = full + (partial ? 1 : 0);

  // Map requested sample times to step indices (sorted, dedup, always
  // include 0 and the final step).
  std::vector<double> times = opts.sample_times;
  std::sort(times.begin(), times.end());
  std::vector<long> sample_steps = {0};
  for (double ts : times) {
    long sstep = static_cast<long>(std::ceil(ts / dt - 1e-9));
    sstep = std::clamp(sstep, 0L, steps);
    if (sstep != sample_steps.back()) sample_steps.push_back(sstep);
  }
  if (sample_steps.back() != steps) sample_steps.push_back(steps);

  GraphState s = initial;
  std::size_t next_sample = 0;
  // Resumed runs skip the sample points that lie before the restart step.
  while (next_sample < sample_steps.size() && sample_steps[next_sample] < s.step) ++next_sample;
  auto record = [&](const GraphState& st) {
    FlowSample smp;
    smp.t = st.t;
    smp.step = st.step;
    smp.u = st.u;
    smp.fields = compute_graph_fields(st);
    traj.samples.push_back(std::move(smp));
  };

  try {
    for (long k = s.step; k <= steps; ++k) {
      if (next_sample < sample_steps.size() && k == sample_steps[next_sample]) {
        record(s);
        ++next_sample;
        if (opts.stop_sup_h > 0.0 && traj.samples.back().fields.sup_abs_H < opts.stop_sup_h &&
            k > 0) {
          traj.stopped_near_limit = true;
          break;
        }
      }
      if (k == steps) break;
      const double dt_k = (partial && k == full) ? remainder : dt;
      s = step_flow(s, dt_k, opts.scheme);
    }
  } catch (const BlowupError& e) {
    traj.blew_up = true;
    traj.blowup = {e.node, e.time, e.what()};
  }
  traj.final_t = s.t;
  traj.total_steps = s.step;
  if (traj.samples.empty()) record(initial);
  return traj;
}

}  // namespace warpmcf
