#include "warpmcf/snapshot.hpp"

#include <cstring>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "json.hpp"

namespace warpmcf {

namespace {

using nlohmann::json;

constexpr int kStateVersion = 1;
constexpr int kCurveVersion = 1;

std::string checksum_hex(const std::vector<double>& values) {
  std::vector<unsigned char> bytes(values.size() * sizeof(double));
  std::memcpy(bytes.data(), values.data(), bytes.size());
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << fnv1a(bytes.data(), bytes.size());
  return os.str();
}

json spline_json(const CubicSpline& s) {
  return json{{"x", s.knots_x()}, {"y", s.knots_y()}};
}

CubicSpline spline_from_json(const json& j) {
  return CubicSpline(j.at("x").get<std::vector<double>>(), j.at("y").get<std::vector<double>>());
}

json base_json(const BaseManifold& b) {
  json j{{"kind", b.kind_name()}};
  switch (b.kind()) {
    case BaseKind::FlatCircle: j["L"] = b.period(0); break;
    case BaseKind::FlatTorus:
      j["L1"] = b.period(0);
      j["L2"] = b.period(1);
      break;
    case BaseKind::EuclideanPolar:
    case BaseKind::HyperbolicPolar: j["truncation_radius"] = b.truncation_radius(); break;
    case BaseKind::RotSym:
      j["truncation_radius"] = b.truncation_radius();
      j["profile"] = spline_json(*b.profile());
      break;
  }
  return j;
}

BaseManifold base_from_json(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "flat-circle") return BaseManifold::flat_circle(j.at("L").get<double>());
  if (kind == "flat-torus")
    return BaseManifold::flat_torus(j.at("L1").get<double>(), j.at("L2").get<double>());
  if (kind == "euclidean-polar")
    return BaseManifold::euclidean_polar(j.at("truncation_radius").get<double>());
  if (kind == "hyperbolic-polar")
    return BaseManifold::hyperbolic_polar(j.at("truncation_radius").get<double>());
  if (kind == "rotsym-radial")
    return BaseManifold::rot_sym(spline_from_json(j.at("profile")),
                                 j.at("truncation_radius").get<double>());
  throw SnapshotError("snapshot has unknown base kind " + kind);
}

json warp_json(const WarpFactor& w) {
  json j{{"kind", w.kind_name()}};
  if (w.kind() == WarpKind::TorusBump) {
    j["a"] = w.bump_a();
    j["b"] = w.bump_b();
    j["axis"] = w.bump_axis();
  } else if (w.kind() == WarpKind::TabulatedRadial) {
    j["table"] = spline_json(*w.table());
  }
  return j;
}

WarpFactor warp_from_json(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "constant-one") return WarpFactor::constant_one();
  if (kind == "cosh-r") return WarpFactor::cosh_r();
  if (kind == "torus-bump")
    return WarpFactor::torus_bump(j.at("a").get<double>(), j.at("b").get<double>(),
                                  j.at("axis").get<int>());
  if (kind == "tabulated-radial") return WarpFactor::tabulated_radial(spline_from_json(j.at("table")));
  throw SnapshotError("snapshot has unknown warp kind " + kind);
}

json parse_file(const std::string& path, const std::string& format, int version) {
  std::ifstream in(path);
  if (!in) throw SnapshotError("cannot open snapshot: " + path);
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw SnapshotError("corrupt snapshot payload in " + path + ": " + e.what());
  }
  if (j.value("format", "") != format)
    throw SnapshotError(path + " is not a " + format + " snapshot");
  if (j.value("version", -1) != version)
    throw SnapshotError("snapshot version mismatch in " + path + " (want " +
                        std::to_string(version) + ")");
  return j;
}

}  // namespace

void save_state(const GraphState& state, const std::string& path) {
  const GridGeometry& g = *state.geo;
  json j{{"format", "warpmcf-state"},
         {"version", kStateVersion},
         {"base", base_json(g.base())},
         {"warp", warp_json(g.warp())},
         {"grid", {{"n1", g.n1()}, {"n2", g.n2()}}},
         {"policy", g.boundary() == BoundaryPolicy::Periodic ? "periodic" : "dirichlet-frozen"},
         {"t", state.t},
         {"step", state.step},
         {"checksum", checksum_hex(state.u)},
         {"u", state.u}};
  std::ofstream out(path);
  if (!out) throw SnapshotError("cannot write snapshot: " + path);
  out << j.dump(1) << "\n";
}

GraphState load_state(const std::string& path) {
  const json j = parse_file(path, "warpmcf-state", kStateVersion);
  BaseManifold base = base_from_json(j.at("base"));
  WarpFactor warp = warp_from_json(j.at("warp"));
  const int n1 = j.at("grid").at("n1").get<int>();
  const int n2 = j.at("grid").at("n2").get<int>();
  auto geo = std::make_shared<GridGeometry>(std::move(base), std::move(warp), n1, n2);
  std::vector<double> u = j.at("u").get<std::vector<double>>();
  if (static_cast<int>(u.size()) != geo->nodes())
    throw SnapshotError("snapshot payload length mismatch in " + path);
  if (checksum_hex(u) != j.at("checksum").get<std::string>())
    throw SnapshotError("snapshot checksum mismatch in " + path);
  return GraphState(std::move(geo), std::move(u), j.at("t").get<double>(),
                    j.at("step").get<long>());
}

void save_curve(const ProfileCurve& curve, const std::string& path) {
  std::vector<double> r, u;
  for (const ProfileNode& n : curve.nodes) {
    r.push_back(n.r);
    u.push_back(n.u);
  }
  std::vector<double> payload = r;
  payload.insert(payload.end(), u.begin(), u.end());
  json j{{"format", "warpmcf-curve"},
         {"version", kCurveVersion},
         {"multiplicity", curve.multiplicity},
         {"t", curve.t},
         {"inner", curve.inner == EndCondition::Axis ? "axis" : "frozen"},
         {"outer", curve.outer == EndCondition::Axis ? "axis" : "frozen"},
         {"target_spacing", curve.target_spacing},
         {"checksum", checksum_hex(payload)},
         {"r", r},
         {"u", u}};
  std::ofstream out(path);
  if (!out) throw SnapshotError("cannot write snapshot: " + path);
  out << j.dump(1) << "\n";
}

ProfileCurve load_curve(const std::string& path) {
  const json j = parse_file(path, "warpmcf-curve", kCurveVersion);
  ProfileCurve c;
  c.multiplicity = j.at("multiplicity").get<int>();
  c.t = j.at("t").get<double>();
  c.inner = j.at("inner").get<std::string>() == "axis" ? EndCondition::Axis : EndCondition::Frozen;
  c.outer = j.at("outer").get<std::string>() == "axis" ? EndCondition::Axis : EndCondition::Frozen;
  c.target_spacing = j.at("target_spacing").get<double>();
  const auto r = j.at("r").get<std::vector<double>>();
  const auto u = j.at("u").get<std::vector<double>>();
  if (r.size() != u.size()) throw SnapshotError("snapshot node arrays mismatch in " + path);
  std::vector<double> payload = r;
  payload.insert(payload.end(), u.begin(), u.end());
  if (checksum_hex(payload) != j.at("checksum").get<std::string>())
    throw SnapshotError("snapshot checksum mismatch in " + path);
  for (std::size_t i = 0; i < r.size(); ++i) c.nodes.push_back({r[i], u[i]});
  return c;
}

}  // namespace warpmcf
