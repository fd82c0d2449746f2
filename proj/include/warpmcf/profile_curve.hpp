#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "warpmcf/small_math.hpp"

namespace warpmcf {

/// Rotationally symmetric hypersurfaces of H^{n+1} reduced to their profile
/// curve in the orbit half-plane P = {r >= 0} with metric
///   q = dr^2 + cosh^2(r) du^2
/// and orbit volume weight sinh^{n-1}(r). The model identification comes
/// from the hyperboloid embedding p = (cosh r cosh u, cosh r sinh u,
/// sinh r * Theta), which pulls the ambient metric back to exactly this q.

struct ProfileNode {
  double r = 0.0;
  double u = 0.0;
};

enum class EndCondition { Axis, Frozen, Free };

struct PinchError : std::runtime_error {
  explicit PinchError(const std::string& w) : std::runtime_error(w) {}
};
struct CurveAbort : std::runtime_error {
  explicit CurveAbort(const std::string& w) : std::runtime_error(w) {}
};

struct ProfileCurve {
  std::vector<ProfileNode> nodes;  // ordered; orientation fixes the normal
  int multiplicity = 2;            // n >= 2 (rotation group dimension + 1)
  double t = 0.0;
  EndCondition inner = EndCondition::Frozen;
  EndCondition outer = EndCondition::Frozen;
  double target_spacing = 0.0;     // q-arclength target between nodes

  double q_length() const;
  double min_spacing() const;
  double max_spacing() const;
};

/// Isothermal abscissa sigma(r) = gd(r) (so q = cosh^2 r (dsigma^2 + du^2)).
double gudermann(double r);

struct NodeGeometry {
  double kappa_q = 0.0;   // geodesic curvature in q, signed by the ccw normal
  double nu_r = 0.0;      // q-orthonormal frame components of that normal
  double nu_u = 0.0;      //   (frame e_r = d/dr, e_u = (1/cosh r) d/du)
  double H = 0.0;         // generated mean curvature of the hypersurface
};

/// Curvature data at the interior nodes (ends get their neighbors' values).
/// H = kappa_q - (n-1) <grad_q log sinh r, nu>_q; the sign convention makes
/// geodesic spheres with inward normal have H = n coth(rho).
std::vector<NodeGeometry> generated_mean_curvature(const ProfileCurve& curve);

/// One front-tracking step of dF/dt = H nu, with axis ends moved by even
/// extrapolation along the axis and frozen ends kept in place. Throws
/// PinchError when an interior node reaches the axis and CurveAbort on
/// self-intersection (checked when re-parametrizing).
///
/// Graph-like curves (r monotone) may instead move nodes vertically with the
/// equivalent speed H/(cosh r <nu, e_u>): the evolving set is the same, the
/// markers just ride the vertical curves. This keeps the singular near-axis
/// orbit term from dragging markers into the axis on conical tips.
enum class StepMode { Normal, Vertical };
ProfileCurve step_profile(const ProfileCurve& curve, double dt,
                          StepMode mode = StepMode::Normal);

/// Re-parametrize by q-arclength to the target spacing (cubic through the
/// current nodes). Applied by step_profile when the spacing invariant
/// [0.5, 2] x target breaks.
ProfileCurve reparametrize(const ProfileCurve& curve);

/// CFL-style step bound from the current spacing and marker speeds.
double profile_dt(const ProfileCurve& curve, const std::vector<NodeGeometry>& geom,
                  double cfl = 0.4, StepMode mode = StepMode::Normal);

struct GraphMeasures {
  std::vector<double> v_eq;   // 1/<N, e_u>: transversality to r = const curves
  std::vector<double> v_geo;  // 1/<N, d_l>: transversality to the geodesic foliation
  double sup_v_eq = 0.0;      // over interior nodes; +inf once the product flips
  double sup_v_geo = 0.0;
  double min_sigma_geo = 1.0;  // most negative transversality product seen
};

GraphMeasures graph_measures(const ProfileCurve& curve);

/// Geodesic-foliation chart: sinh l = cosh r sinh u, sinh rho = sinh r/cosh l.
void to_geodesic_chart(double r, double u, double& rho, double& l);
void from_geodesic_chart(double rho, double l, double& r, double& u);

/// Weighted generated area (per unit sphere volume): integral of
/// sinh^{n-1}(r) over q-arclength. The oracle for H above.
double generated_area(const ProfileCurve& curve);

// Canned initial curves.
ProfileCurve make_slice_segment(double r_max, int count, int n = 2);
ProfileCurve make_geodesic_sphere(double radius, int count, int n = 2);
ProfileCurve make_equidistant_curve(double l, double rho_max, int count, int n = 2);
ProfileCurve make_graph_curve(const std::vector<double>& r, const std::vector<double>& u, int n = 2);

}  // namespace warpmcf
