#include "warpmcf/graph_state.hpp"

#include <cmath>
#include <stdexcept>

namespace warpmcf {

GraphState::GraphState(GeometryPtr g, std::vector<double> values, double time, long step_no)
    : geo(std::move(g)), u(std::move(values)), t(time), step(step_no) {
  if (!geo) throw std::runtime_error("graph state needs a geometry");
  if (static_cast<int>(u.size()) != geo->nodes())
    throw std::runtime_error("graph state size does not match the grid");
  for (double x : u)
    if (!std::isfinite(x)) throw std::runtime_error("graph state must be finite at every node");
}

double GraphState::sup_abs_u() const {
  double s = 0.0;
  for (double x : u) s = std::max(s, std::abs(x));
  return s;
}

namespace {

double periodic_dist(double x, double c, double L) {
  double d = std::fmod(std::abs(x - c), L);
  return std::min(d, L - d);
}

}  // namespace

GraphState make_initial_state(const GeometryPtr& geo, const InitialData& init) {
  std::vector<double> u(geo->nodes(), 0.0);
  const BaseManifold& base = geo->base();
  const bool polar = geo->polar();

  for (int j = 0; j < geo->n1(); ++j)
    for (int k = 0; k < geo->n2(); ++k) {
      const Vec2 x = geo->point(j, k);
      double val = 0.0;
      if (init.kind == "constant") {
        val = init.amplitude;
      } else if (init.kind == "sinusoid") {
        if (polar) throw std::runtime_error("sinusoid initial data is for periodic charts");
        val = init.amplitude * std::sin(init.k1 * x.a);
        if (base.dim() == 2) val *= std::sin(init.k2 * x.b);
      } else if (init.kind == "gaussian-bump") {
        double rho2;
        if (polar) {
          rho2 = sqr(x.a / init.width);
        } else if (base.dim() == 1) {
          rho2 = sqr(periodic_dist(x.a, init.center1, base.period(0)) / init.width);
        } else {
          rho2 = (sqr(periodic_dist(x.a, init.center1, base.period(0))) +
                  sqr(periodic_dist(x.b, init.center2, base.period(1)))) /
                 sqr(init.width);
        }
        val = init.amplitude * std::exp(-rho2);
      } else if (init.kind == "lipschitz-cone") {
        double rho;
        if (polar) {
          rho = x.a;
        } else if (base.dim() == 1) {
          rho = periodic_dist(x.a, init.center1, base.period(0));
        } else {
          rho = std::sqrt(sqr(periodic_dist(x.a, init.center1, base.period(0))) +
                          sqr(periodic_dist(x.b, init.center2, base.period(1))));
        }
        val = init.amplitude * rho;
      } else if (init.kind == "tanh-ramp") {
        if (!polar) throw std::runtime_error("tanh-ramp initial data is for polar charts");
        val = init.amplitude * std::tanh(init.steepness * x.a);
      } else {
        throw std::runtime_error("unknown initial data kind: " + init.kind);
      }
      u[geo->index(j, k)] = val;
    }
  return GraphState(geo, std::move(u));
}

}  // namespace warpmcf
