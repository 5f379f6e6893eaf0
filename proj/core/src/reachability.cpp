#include "elab/reachability.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "elab/errors.hpp"
#include "elab/hamiltonian.hpp"
#include "elab/rng.hpp"
#include "elab/scalar_field.hpp"

namespace elab {

ControlPath::ControlPath(Point start, std::vector<ControlPiece> pieces)
    : start_(start), pieces_(std::move(pieces)) {
  if (!start_.finite()) throw std::invalid_argument("start not finite");
  for (const ControlPiece& p : pieces_) {
    if (!(p.duration > 0.0)) {
      throw std::invalid_argument("piece duration must be positive");
    }
    if (!(p.u > 0.0) || p.u < std::fabs(p.v)) {
      char buf[96];
      std::snprintf(buf, sizeof(buf),
                    "control (%.6g, %.6g) is not nspc. future directed", p.u,
                    p.v);
      throw NotNonspacelike(buf);
    }
  }
}

double ControlPath::total_duration() const {
  double d = 0.0;
  for (const ControlPiece& p : pieces_) d += p.duration;
  return d;
}

SampledPath integrate_path(const FrameStructure& frame, const ControlPath& cp,
                           const IntegratorConfig& cfg, const Box4& box) {
  SampledPath path;
  if (cp.pieces().empty()) {
    path.samples.push_back({0.0, cp.start(), 1.0, 0.0});
    return path;
  }

  double t = 0.0;
  auto y = cp.start().as_array();
  path.samples.push_back(
      {0.0, cp.start(), cp.pieces()[0].u, cp.pieces()[0].v});

  auto event = [&box](double, const std::array<double, 4>& s) {
    return box.margin(Point::from_array(s));
  };

  for (const ControlPiece& piece : cp.pieces()) {
    // The boundary sample belongs to the interval that starts here.
    path.samples.back().u = piece.u;
    path.samples.back().v = piece.v;
    VectorField dir = piece.u * frame.X() + piece.v * frame.Y();
    auto rhs = [&dir](double, const std::array<double, 4>& s) {
      return dir.eval(Point::from_array(s));
    };
    auto solver = make_dopri5<4>(rhs, cfg);
    auto res = solver.integrate(
        t, y, t + piece.duration,
        [&](const auto& rec) {
          path.samples.push_back(
              {rec.t1, Point::from_array(rec.y1), piece.u, piece.v});
        },
        event);
    t = res.t;
    y = res.y;
    if (res.event_hit) {
      path.samples.push_back({t, Point::from_array(y), piece.u, piece.v});
      path.truncated = true;
      return path;
    }
  }
  if (!box.contains(Point::from_array(y), 1e-9)) {
    throw Error("box exit was not detected; endpoint " +
                format_point(Point::from_array(y)));
  }
  return path;
}

SampledPath3 integrate_path3(const MartinetFrame& frame, const ControlPath& cp,
                             const IntegratorConfig& cfg, const Box4& box) {
  SampledPath3 path;
  Point3 start = drop_z(cp.start());
  if (cp.pieces().empty()) {
    path.samples.push_back({0.0, start, 1.0, 0.0});
    return path;
  }

  double t = 0.0;
  auto y = start.as_array();
  path.samples.push_back({0.0, start, cp.pieces()[0].u, cp.pieces()[0].v});

  auto event = [&box](double, const std::array<double, 3>& s) {
    Point q{s[0], s[1], 0.0, s[2]};
    Box4 b = box.with_unbounded_z();
    return b.margin(q);
  };

  for (const ControlPiece& piece : cp.pieces()) {
    path.samples.back().u = piece.u;
    path.samples.back().v = piece.v;
    auto rhs = [&frame, &piece](double, const std::array<double, 3>& s) {
      Point3 q = Point3::from_array(s);
      auto xv = frame.eval_x(q);
      auto yv = frame.eval_y(q);
      std::array<double, 3> out;
      for (int i = 0; i < 3; ++i) out[i] = piece.u * xv[i] + piece.v * yv[i];
      return out;
    };
    auto solver = make_dopri5<3>(rhs, cfg);
    auto res = solver.integrate(
        t, y, t + piece.duration,
        [&](const auto& rec) {
          path.samples.push_back(
              {rec.t1, Point3::from_array(rec.y1), piece.u, piece.v});
        },
        event);
    t = res.t;
    y = res.y;
    if (res.event_hit) {
      path.samples.push_back({t, Point3::from_array(y), piece.u, piece.v});
      path.truncated = true;
      return path;
    }
  }
  return path;
}

namespace {

std::vector<ControlPiece> draw_uniform_hyperbolic(RandomStream& rs,
                                                  const SamplerConfig& sc) {
  std::vector<ControlPiece> pieces;
  pieces.reserve(sc.pieces_per_path);
  double max_d = sc.horizon / sc.pieces_per_path;
  for (int i = 0; i < sc.pieces_per_path; ++i) {
    double chi = rs.uniform(-sc.chi_max, sc.chi_max);
    double d = rs.uniform(0.0, max_d);
    if (d <= 0.0) d = 0.5 * max_d;
    pieces.push_back({d, std::cosh(chi), std::sinh(chi)});
  }
  return pieces;
}

// Bang-bang concatenations of X, X+Y, X-Y; the two null-null-null families
// carry the time restriction that the middle arc is at least as long as
// the outer two combined.
std::vector<ControlPiece> draw_bang_bang(RandomStream& rs,
                                         const SamplerConfig& sc) {
  static constexpr double kP = 1.0, kM = -1.0, kZ = 0.0;
  static constexpr double kPatterns[6][3] = {
      {kP, kZ, kP}, {kP, kZ, kM}, {kM, kZ, kM},
      {kM, kZ, kP}, {kP, kM, kP}, {kM, kP, kM},
  };
  int which = static_cast<int>(rs.index(6));
  const double* v = kPatterns[which];

  double a, b, c;
  if (which < 4) {
    a = rs.uniform(0.0, sc.horizon / 3.0);
    b = rs.uniform(0.0, sc.horizon / 3.0);
    c = rs.uniform(0.0, sc.horizon / 3.0);
  } else {
    a = rs.uniform(0.0, sc.horizon / 4.0);
    c = rs.uniform(0.0, sc.horizon / 4.0);
    b = rs.uniform(a + c, sc.horizon - a - c);
  }
  const double kMin = 1e-9;
  std::vector<ControlPiece> pieces;
  pieces.push_back({std::max(a, kMin), 1.0, v[0]});
  pieces.push_back({std::max(b, kMin), 1.0, v[1]});
  pieces.push_back({std::max(c, kMin), 1.0, v[2]});
  return pieces;
}

}  // namespace

std::vector<ControlPath> draw_control_paths(const SamplerConfig& sc,
                                            std::uint64_t seed) {
  if (sc.n_paths < 0 || sc.pieces_per_path <= 0 || !(sc.horizon > 0.0)) {
    throw std::invalid_argument("sampler counts must be positive");
  }
  std::vector<ControlPath> paths;
  paths.reserve(sc.n_paths);
  for (long i = 0; i < sc.n_paths; ++i) {
    RandomStream rs = RandomStream::substream(seed, i);
    bool hyperbolic;
    switch (sc.strategy) {
      case SampleStrategy::UniformHyperbolic:
        hyperbolic = true;
        break;
      case SampleStrategy::BangBang:
        hyperbolic = false;
        break;
      default:
        hyperbolic = rs.uniform() < 0.5;
    }
    paths.emplace_back(sc.start, hyperbolic ? draw_uniform_hyperbolic(rs, sc)
                                            : draw_bang_bang(rs, sc));
  }
  return paths;
}

ReachCloud sample_reachable(const FrameStructure& frame,
                            const SamplerConfig& sc, std::uint64_t seed,
                            const IntegratorConfig& cfg) {
  ReachCloud cloud;
  cloud.seed = seed;
  cloud.frame_id = frame.tag();
  cloud.box = sc.box;

  auto paths = draw_control_paths(sc, seed);
  cloud.endpoints.reserve(paths.size());
  for (std::size_t i = 0; i < paths.size(); ++i) {
    SampledPath p = integrate_path(frame, paths[i], cfg, sc.box);
    cloud.endpoints.push_back({static_cast<long>(i), p.endpoint(),
                               sub_lorentzian_length(p), p.truncated});
  }
  return cloud;
}

ReachCloud3 sample_reachable_martinet(const FrameStructure& frame,
                                      const SamplerConfig& sc,
                                      std::uint64_t seed,
                                      const IntegratorConfig& cfg) {
  MartinetFrame mf = martinet_projection(frame);
  ReachCloud3 cloud;
  cloud.seed = seed;

  auto paths = draw_control_paths(sc, seed);
  cloud.endpoints.reserve(paths.size());
  for (std::size_t i = 0; i < paths.size(); ++i) {
    SampledPath3 p = integrate_path3(mf, paths[i], cfg, sc.box);
    double len = 0.0;
    for (std::size_t k = 0; k + 1 < p.samples.size(); ++k) {
      double dt = p.samples[k + 1].t - p.samples[k].t;
      double u = p.samples[k].u, v = p.samples[k].v;
      len += dt * std::sqrt(std::max(u * u - v * v, 0.0));
    }
    cloud.endpoints.push_back(
        {static_cast<long>(i), p.endpoint(), len, p.truncated});
  }
  return cloud;
}

std::string ReachCloud::to_csv() const {
  std::string out = "path_id,x,y,z,w,length,truncated\n";
  char buf[256];
  for (const CloudPoint& e : endpoints) {
    std::snprintf(buf, sizeof(buf), "%ld,%.17g,%.17g,%.17g,%.17g,%.17g,%d\n",
                  e.path_id, e.q.x, e.q.y, e.q.z, e.q.w, e.length,
                  e.truncated ? 1 : 0);
    out += buf;
  }
  return out;
}

ReachCloud ReachCloud::from_csv(const std::string& text, std::uint64_t seed,
                                const std::string& frame_id, const Box4& box) {
  ReachCloud cloud;
  cloud.seed = seed;
  cloud.frame_id = frame_id;
  cloud.box = box;

  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line.rfind("path_id,", 0) != 0) {
    throw IoError("cloud CSV: missing header row");
  }
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    CloudPoint e;
    int trunc = 0;
    if (std::sscanf(line.c_str(), "%ld,%lg,%lg,%lg,%lg,%lg,%d", &e.path_id,
                    &e.q.x, &e.q.y, &e.q.z, &e.q.w, &e.length, &trunc) != 7) {
      throw IoError("cloud CSV: bad row '" + line + "'");
    }
    if (!e.q.finite()) throw IoError("cloud CSV: non-finite point");
    e.truncated = trunc != 0;
    cloud.endpoints.push_back(e);
  }
  return cloud;
}

namespace {

CheckResult inclusion_result(const std::string& name, const std::string& anchor,
                             std::size_t n_points, long bad,
                             const Point& first_bad, const std::string& detail) {
  char msg[160];
  std::snprintf(msg, sizeof(msg), "%zu endpoints, %ld violations", n_points,
                bad);
  if (bad > 0) {
    return CheckResult::fail(name, anchor, static_cast<double>(bad),
                             format_point(first_bad),
                             std::string(msg) + "; first: " + detail);
  }
  CheckResult r = CheckResult::pass(name, anchor);
  r.detail = msg;
  return r;
}

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (const auto& p : parts) {
    if (!out.empty()) out += ", ";
    out += p;
  }
  return out;
}

}  // namespace

CheckResult inclusion_check_flat(const ReachCloud& cloud, double slack,
                                 std::vector<InclusionViolation>* out) {
  long bad = 0;
  Point first_bad{};
  std::string first_detail;
  for (const CloudPoint& e : cloud.endpoints) {
    if (flat_union_membership(e.q, slack)) continue;
    // Report the per-cell failures of the nearest sign cell.
    std::vector<std::string> parts;
    for (int c = 0; c < 8; ++c) {
      auto v = cell_violations(static_cast<FlatCell>(c), e.q, slack);
      if (v.size() <= 2) {
        parts.push_back(cell_name(static_cast<FlatCell>(c)) + ": " + join(v));
      }
    }
    if (parts.empty()) parts.push_back("all eight cells fail");
    if (bad == 0) {
      first_bad = e.q;
      first_detail = join(parts);
    }
    if (out) out->push_back({e.path_id, e.q, join(parts)});
    ++bad;
  }
  return inclusion_result("flat_inclusion",
                          "reachable endpoints inside union of A11..A24",
                          cloud.endpoints.size(), bad, first_bad, first_detail);
}

CheckResult inclusion_check_weak(const ReachCloud& cloud,
                                 const FrameStructure& frame, double slack,
                                 const IntegratorConfig& cfg,
                                 std::vector<InclusionViolation>* out) {
  WeakGeneralRegion region(frame, cfg);
  long bad = 0;
  Point first_bad{};
  std::string first_detail;
  for (const CloudPoint& e : cloud.endpoints) {
    if (region.member(e.q, slack)) continue;
    std::string detail = join(region.violations(e.q, slack));
    if (bad == 0) {
      first_bad = e.q;
      first_detail = detail;
    }
    if (out) out->push_back({e.path_id, e.q, detail});
    ++bad;
  }
  return inclusion_result(
      "weak_inclusion",
      "endpoints inside {f1<=0,x>=0,z>=0} u {f2<=0,x>=0,z<=0}",
      cloud.endpoints.size(), bad, first_bad, first_detail);
}

AbnormalProbe abnormal_boundary_probe(const ReachCloud& cloud, double delta,
                                      double x_max, double slack) {
  if (!(delta > 0.0)) throw std::invalid_argument("delta must be positive");
  AbnormalProbe probe;
  probe.bound = -0.25 * (x_max * delta * delta + delta * delta * delta) - slack;
  probe.min_w = std::numeric_limits<double>::infinity();
  for (const CloudPoint& e : cloud.endpoints) {
    if (std::fabs(e.q.y) > delta || e.q.x < 0.0 || e.q.x > x_max) continue;
    ++probe.n_in_slab;
    probe.min_w = std::min(probe.min_w, e.q.w);
  }
  probe.empty = probe.n_in_slab == 0;
  probe.ok = probe.empty || probe.min_w >= probe.bound;
  return probe;
}

CheckResult abnormal_probe_check(const AbnormalProbe& probe) {
  const std::string anchor =
      "w bounded below near the abnormal ray (slab |y|<=delta)";
  char detail[160];
  std::snprintf(detail, sizeof(detail),
                "%ld endpoints in slab, min w = %.6g, bound = %.6g",
                probe.n_in_slab, probe.empty ? 0.0 : probe.min_w, probe.bound);
  if (probe.empty) {
    return CheckResult::warn("abnormal_boundary_probe", anchor,
                             "slab contains no endpoints");
  }
  if (!probe.ok) {
    return CheckResult::fail("abnormal_boundary_probe", anchor,
                             probe.bound - probe.min_w, "", detail);
  }
  CheckResult r = CheckResult::pass("abnormal_boundary_probe", anchor,
                                    std::max(0.0, probe.bound - probe.min_w));
  r.detail = detail;
  return r;
}

CheckResult null_ray_audit(const ReachCloud& cloud) {
  double t_max = std::min(cloud.box.x[1], cloud.box.y[1]);
  if (!std::isfinite(t_max) || t_max <= 0.0) t_max = 1.0;
  const int n = 201;
  double worst = 0.0;
  Point worst_q{};
  for (int i = 0; i < n; ++i) {
    double t = t_max * i / double(n - 1);
    Point plus{t, t, 0.0, 0.0};
    Point minus{t, -t, 0.0, 0.0};
    double r = std::max({std::fabs(flat_barrier(FlatBarrier::F1, plus)),
                         std::fabs(flat_barrier(FlatBarrier::G1, plus)),
                         std::fabs(flat_barrier(FlatBarrier::F2, minus)),
                         std::fabs(flat_barrier(FlatBarrier::G2, minus))});
    if (r > worst) {
      worst = r;
      worst_q = plus;
    }
  }
  const std::string anchor =
      "null rays {y=+-x, z=w=0} lie in the zero sets of their barriers";
  if (worst > 1e-12) {
    return CheckResult::fail("null_ray_audit", anchor, worst,
                             format_point(worst_q));
  }
  return CheckResult::pass("null_ray_audit", anchor, worst);
}

CheckResult projection_consistency(const ReachCloud& cloud4,
                                   const ReachCloud3& cloud3, double tol) {
  if (cloud4.seed != cloud3.seed) {
    throw SeedMismatch("clouds were generated from different seeds");
  }
  if (cloud4.endpoints.size() != cloud3.endpoints.size()) {
    throw SeedMismatch("clouds have different path counts");
  }
  double worst = 0.0;
  Point worst_q{};
  for (std::size_t i = 0; i < cloud4.endpoints.size(); ++i) {
    const Point& q4 = cloud4.endpoints[i].q;
    const Point3& q3 = cloud3.endpoints[i].q;
    double d = std::max({std::fabs(q4.x - q3.x), std::fabs(q4.y - q3.y),
                         std::fabs(q4.w - q3.w)});
    if (d > worst) {
      worst = d;
      worst_q = q4;
    }
  }
  const std::string anchor = "projected cloud equals cloud of the projection";
  char detail[96];
  std::snprintf(detail, sizeof(detail), "%zu matched endpoints",
                cloud4.endpoints.size());
  if (worst > tol) {
    return CheckResult::fail("projection_consistency", anchor, worst,
                             format_point(worst_q), detail);
  }
  CheckResult r = CheckResult::pass("projection_consistency", anchor, worst);
  r.detail = detail;
  return r;
}

SampledPath lift_curve(const FrameStructure& frame, const SampledPath3& path3,
                       double z0, const IntegratorConfig& cfg) {
  const auto& s = path3.samples;
  if (s.empty()) throw std::invalid_argument("empty path");

  SampledPath out;
  out.truncated = path3.truncated;
  Point q0{s[0].q.x, s[0].q.y, z0, s[0].q.w};
  out.samples.push_back({s[0].t, q0, s[0].u, s[0].v});

  double t = s[0].t;
  auto y = q0.as_array();
  for (std::size_t i = 0; i + 1 < s.size(); ++i) {
    VectorField dir = s[i].u * frame.X() + s[i].v * frame.Y();
    auto rhs = [&dir](double, const std::array<double, 4>& st) {
      return dir.eval(Point::from_array(st));
    };
    auto solver = make_dopri5<4>(rhs, cfg);
    auto res = solver.integrate(t, y, s[i + 1].t);
    t = res.t;
    y = res.y;
    out.samples.push_back({t, Point::from_array(y), s[i + 1].u, s[i + 1].v});
  }
  return out;
}

}  // namespace elab
