#include "commands.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>

#include "elab/barriers.hpp"
#include "elab/errors.hpp"
#include "elab/hamiltonian.hpp"
#include "elab/reachability.hpp"
#include "elab/rng.hpp"
#include "elab/scalar_field.hpp"
#include "elab/version.hpp"
#include "svg.hpp"

namespace elab::tools {

namespace {

VerificationReport new_report(const RunConfig& cfg) {
  VerificationReport rep;
  rep.tool_version = ELAB_VERSION;
  rep.config_hash = cfg.config_hash();
  return rep;
}

int finish(const RunConfig& cfg, VerificationReport& rep,
           const std::string& out_path) {
  std::fputs(rep.to_text().c_str(), stdout);
  std::printf("%d PASS, %d WARN, %d FAIL (config %s)\n",
              rep.count(CheckStatus::Pass), rep.count(CheckStatus::Warn),
              rep.count(CheckStatus::Fail), rep.config_hash.c_str());
  std::string path = out_path.empty() ? cfg.out_report : out_path;
  if (!path.empty()) write_file(path, rep.to_json());
  return rep.any_fail() ? 2 : 0;
}

Poly4 mono(double c, std::array<int, 4> e) { return Poly4::monomial(c, e); }

// Worst five-point-stencil pairing defect |g(dq,X)-hX| + |g(dq,Y)-hY| over
// the uniform interior samples of an arc.
double pairing_defect(const FrameStructure& f, const HamiltonianSystem& sys,
                      const GeodesicArc& arc) {
  const auto& s = arc.samples;
  double worst = 0.0;
  for (std::size_t i = 2; i + 2 < s.size(); ++i) {
    double h = s[i + 1].first - s[i].first;
    if (std::fabs((s[i].first - s[i - 1].first) - h) > 1e-9 ||
        std::fabs((s[i - 1].first - s[i - 2].first) - h) > 1e-9 ||
        std::fabs((s[i + 2].first - s[i + 1].first) - h) > 1e-9) {
      continue;
    }
    std::array<double, 4> dq;
    for (int c = 0; c < 4; ++c) {
      auto q = [&](std::size_t k) { return s[k].second.q.as_array()[c]; };
      dq[c] = (q(i - 2) - 8 * q(i - 1) + 8 * q(i + 1) - q(i + 2)) / (12 * h);
    }
    const PhasePoint& pp = s[i].second;
    auto xv = f.X().eval(pp.q);
    auto yv = f.Y().eval(pp.q);
    double xx = 0, xy = 0, yy = 0, bx = 0, by = 0;
    for (int c = 0; c < 4; ++c) {
      xx += xv[c] * xv[c];
      xy += xv[c] * yv[c];
      yy += yv[c] * yv[c];
      bx += xv[c] * dq[c];
      by += yv[c] * dq[c];
    }
    double det = xx * yy - xy * xy;
    double u = (yy * bx - xy * by) / det;
    double v = (xx * by - xy * bx) / det;
    auto [hx, hy] = sys.pairings(pp);
    worst = std::max(worst,
                     std::fabs(-u - hx) + std::fabs(v - hy));
  }
  return worst;
}

CheckResult bound_check(const std::string& name, const std::string& anchor,
                        double worst, double bound,
                        const std::string& location = "") {
  if (worst <= bound) return CheckResult::pass(name, anchor, worst, location);
  char detail[96];
  std::snprintf(detail, sizeof(detail), "worst %.3e exceeds bound %.3e", worst,
                bound);
  return CheckResult::fail(name, anchor, worst, location, detail);
}

}  // namespace

// ---------------------------------------------------------------------------

int cmd_check_structure(const RunConfig& cfg, const std::string& out_path) {
  const FrameStructure& f = cfg.frame;
  VerificationReport rep = new_report(cfg);

  // Growth vector over a grid around the origin.
  {
    long checked = 0, bad = 0;
    Point first_bad{};
    std::array<int, 3> bad_growth{};
    bool degenerate = false;
    GridSpec grid;
    grid.x = {-0.6, 0.6};
    grid.y = {-0.6, 0.6};
    grid.z = {-0.6, 0.6};
    grid.w = {-0.6, 0.6};
    grid.n = {5, 5, 3, 3};
    grid.for_each([&](const Point& q) {
      ++checked;
      try {
        auto g = growth_vector(f, q);
        if (g != std::array<int, 3>{2, 3, 4}) {
          if (bad == 0) {
            first_bad = q;
            bad_growth = g;
          }
          ++bad;
        }
      } catch (const DegenerateFrame&) {
        if (bad == 0) first_bad = q;
        ++bad;
        degenerate = true;
      }
    });
    char detail[128];
    std::snprintf(detail, sizeof(detail),
                  "%ld grid points, %ld without growth (2,3,4)%s", checked,
                  bad, degenerate ? ", frame degenerate" : "");
    if (bad > 0) {
      char got[64];
      std::snprintf(got, sizeof(got), "found (%d,%d,%d)", bad_growth[0],
                    bad_growth[1], bad_growth[2]);
      rep.add(CheckResult::fail("engel_growth", "growth vector (2,3,4)",
                                static_cast<double>(bad),
                                format_point(first_bad),
                                std::string(detail) + "; " + got));
    } else {
      CheckResult r = CheckResult::pass("engel_growth", "growth vector (2,3,4)");
      r.detail = detail;
      rep.add(r);
    }
  }

  // Declared structure constraints.
  {
    std::string detail = "provenance " + f.tag();
    detail += f.z_free() ? ", projection available"
                         : ", phi/psi2 depend on z";
    CheckResult r = CheckResult::pass(
        "frame_constraints", "coefficient vanishing constraints hold");
    r.detail = detail;
    rep.add(r);
  }

  // Decomposition probe along the abnormal ray (trajectory of X from 0).
  {
    const std::string anchor =
        "[X,[X,Y]] = fX + gW + h[X,Y] with f = 0 iff Hamiltonian type";
    try {
      SampledPath ray = abnormal_trajectory(f, Point{}, 1.0, 11);
      double min_abs_f = std::numeric_limits<double>::infinity();
      double max_res = 0.0;
      bool all_decomposable = true;
      for (const auto& s : ray.samples) {
        auto probe = hamiltonian_type_probe(f.X(), f.Y(), s.q);
        min_abs_f = std::min(min_abs_f, std::fabs(probe.f));
        max_res = std::max(max_res, probe.residual);
        all_decomposable = all_decomposable && probe.decomposable;
      }
      char detail[160];
      if (!all_decomposable) {
        std::snprintf(detail, sizeof(detail),
                      "no decomposition over {X, Y, [X,Y]}; residual %.3e",
                      max_res);
        rep.add(CheckResult::warn("hamiltonian_type_probe", anchor, detail));
      } else if (min_abs_f > 1e-9) {
        std::snprintf(detail, sizeof(detail),
                      "not of Hamiltonian type, min |f| = %.6g along the ray",
                      min_abs_f);
        rep.add(CheckResult::warn("hamiltonian_type_probe", anchor, detail));
      } else {
        std::snprintf(detail, sizeof(detail),
                      "f vanishes along the ray (min |f| = %.2e)", min_abs_f);
        CheckResult r = CheckResult::pass("hamiltonian_type_probe", anchor,
                                          min_abs_f);
        r.detail = detail;
        rep.add(r);
      }
    } catch (const BasisFailure& e) {
      rep.add(CheckResult::warn("hamiltonian_type_probe", anchor,
                                std::string("probe inapplicable: ") + e.what()));
    }
  }

  return finish(cfg, rep, out_path);
}

// ---------------------------------------------------------------------------

int cmd_verify_flat(const RunConfig& cfg, const std::string& out_path) {
  if (cfg.frame.provenance() != Provenance::Flat) {
    throw ConfigError("verify-flat requires a flat frame configuration");
  }
  const FrameStructure f = FrameStructure::flat();
  const VerifySizes& vs = cfg.verify;
  VerificationReport rep = new_report(cfg);
  RandomStream rs(cfg.seed ^ 0x5eedULL);

  // Exact bracket identities.
  {
    VectorField xy = lie_bracket(f.X(), f.Y());
    VectorField e_xy, e_yxy;
    e_xy.comp[2] = Poly4(-1.0);
    e_xy.comp[3] = mono(-1.5, {0, 1, 0, 0});
    e_yxy.comp[3] = Poly4(-1.5);
    bool ok = xy == e_xy && lie_bracket(f.X(), xy).is_zero() &&
              lie_bracket(f.Y(), xy) == e_yxy;
    rep.add(ok ? CheckResult::pass("bracket_identities",
                                   "closed forms of [X,Y], [X,[X,Y]], [Y,[X,Y]]")
               : CheckResult::fail("bracket_identities",
                                   "closed forms of [X,Y], [X,[X,Y]], [Y,[X,Y]]",
                                   1.0));
  }

  // Growth vector across the box.
  {
    GridSpec grid;
    grid.x = {-0.9, 0.9};
    grid.y = {-0.9, 0.9};
    grid.n = {vs.grid_n, vs.grid_n, 3, 3};
    long bad = 0;
    grid.for_each([&](const Point& q) {
      if (growth_vector(f, q) != std::array<int, 3>{2, 3, 4}) ++bad;
    });
    rep.add(bound_check("engel_growth", "growth vector (2,3,4)",
                        static_cast<double>(bad), 0.0));
  }

  // Orthonormality and scale covariance of the causal classification.
  {
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
      Point q{rs.uniform(-1, 1), rs.uniform(-1, 1), rs.uniform(-1, 1),
              rs.uniform(-1, 1)};
      worst = std::max(worst, std::fabs(metric({q, 1, 0}, {q, 1, 0}) + 1.0));
      worst = std::max(worst, std::fabs(metric({q, 0, 1}, {q, 0, 1}) - 1.0));
      worst = std::max(worst, std::fabs(metric({q, 1, 0}, {q, 0, 1})));
      HorizontalVector v{q, rs.uniform(-2, 2), rs.uniform(-2, 2)};
      double s = rs.uniform(0.1, 4.0);
      if (!(classify(v) == classify({q, s * v.u, s * v.v}))) worst = 1.0;
    }
    rep.add(bound_check("orthonormal_metric",
                        "g(X,X) = -1, g(Y,Y) = 1, g(X,Y) = 0; scaling", worst,
                        0.0));
  }

  // Constant-momentum abnormal lifts.
  {
    double worst = 0.0;
    for (int trial = 0; trial < vs.geodesics; ++trial) {
      double y0 = rs.uniform(-1, 1), z0 = rs.uniform(-1, 1),
             w0 = rs.uniform(-1, 1);
      GeodesicArc arc;
      arc.energy0 = -0.5;
      for (int i = 0; i <= 100; ++i) {
        double t = i / 100.0;
        arc.samples.push_back(
            {t,
             {{t, y0, z0 + 0.5 * y0 * t, w0 + 0.5 * y0 * y0 * t},
              {-1, 0, 0, 0}}});
      }
      worst = std::max(worst, lift_residual(f, arc));
      for (const auto& [t, pp] : arc.samples) {
        worst = std::max(worst, std::fabs(hamiltonian(f, pp) + 0.5));
      }
    }
    rep.add(bound_check("abnormal_lift_residual",
                        "constant-momentum lift solves the flow with H = -1/2",
                        worst, 1e-9));
  }

  // Integrated geodesics: drift, pairing, vertical momenta, causal type.
  {
    HamiltonianSystem sys(f);
    IntegratorConfig icfg = cfg.integrator;
    icfg.max_step = 0.001;
    double drift = 0.0, defect = 0.0, vertical = 0.0;
    bool causal_ok = true;
    for (int trial = 0; trial < vs.geodesics; ++trial) {
      PhasePoint pp0{{0, 0, 0, 0},
                     {rs.uniform(-1, 1), rs.uniform(-1, 1), rs.uniform(-1, 1),
                      rs.uniform(-1, 1)}};
      GeodesicArc arc = hamiltonian_flow(f, pp0, 1.0, icfg);
      drift = std::max(drift, arc.max_drift);
      defect = std::max(defect, pairing_defect(f, sys, arc));
      auto [hx0, hy0] = sys.pairings(pp0);
      for (const auto& [t, pp] : arc.samples) {
        vertical = std::max({vertical, std::fabs(pp.p.pz - pp0.p.pz),
                             std::fabs(pp.p.pw - pp0.p.pw)});
        auto [hx, hy] = sys.pairings(pp);
        double g0 = -hx0 * hx0 + hy0 * hy0, g = -hx * hx + hy * hy;
        if (std::fabs(g - g0) > 1e-8) causal_ok = false;
        // Orientation is conserved only while the curve is nonspacelike.
        if (g0 < -1e-8 && std::fabs(hx0) > 1e-8 && hx * hx0 <= 0.0) {
          causal_ok = false;
        }
      }
    }
    rep.add(bound_check("energy_conservation", "max |H(t) - H(0)| on arcs",
                        drift, 1e-8));
    rep.add(bound_check("lift_pairing", "g(dq,X) = hX and g(dq,Y) = hY",
                        defect, 1e-8));
    rep.add(bound_check("vertical_momenta", "p_z, p_w constant along flows",
                        vertical, cfg.integrator.abs_tol));
    rep.add(causal_ok
                ? CheckResult::pass("causal_character",
                                    "sign pattern of (g(dq,dq), g(dq,X)) fixed")
                : CheckResult::fail("causal_character",
                                    "sign pattern of (g(dq,dq), g(dq,X)) fixed",
                                    1.0));
  }

  // Exact barrier algebra.
  const FlatBarrier all[6] = {FlatBarrier::F1, FlatBarrier::F2, FlatBarrier::G1,
                              FlatBarrier::G2, FlatBarrier::G3, FlatBarrier::G4};
  {
    bool ok = true;
    for (FlatBarrier which : all) {
      ok = ok && pde_residual_poly(f, spec_for(which).generator,
                                   flat_barrier_poly(which))
                     .is_zero();
    }
    rep.add(ok ? CheckResult::pass("cauchy_residuals",
                                   "all six solutions kill their generator")
               : CheckResult::fail("cauchy_residuals",
                                   "all six solutions kill their generator",
                                   1.0));
  }
  {
    const Poly4 x = Poly4::variable(0), z = Poly4::variable(2),
                w = Poly4::variable(3);
    bool ok =
        flat_barrier_poly(FlatBarrier::F1).substitute(1, x) == z &&
        flat_barrier_poly(FlatBarrier::F2).substitute(1, -1.0 * x) == -1.0 * z &&
        flat_barrier_poly(FlatBarrier::G1).substitute(1, x) == w &&
        flat_barrier_poly(FlatBarrier::G2).substitute(1, -1.0 * x) == w &&
        flat_barrier_poly(FlatBarrier::G3).substitute(1, Poly4{}) == -1.0 * w &&
        flat_barrier_poly(FlatBarrier::G4).substitute(1, Poly4{}) == -1.0 * w;
    rep.add(ok ? CheckResult::pass("cauchy_boundary_data",
                                   "datum restrictions on the initial surfaces")
               : CheckResult::fail("cauchy_boundary_data",
                                   "datum restrictions on the initial surfaces",
                                   1.0));
  }
  {
    const Poly4 x = Poly4::variable(0), y = Poly4::variable(1);
    struct Row {
      FlatBarrier which;
      Poly4 coef;
      double sign;
    };
    const Row rows[6] = {
        {FlatBarrier::F1, 0.5 * (x - y), -1.0},
        {FlatBarrier::F2, 0.5 * (x + y), +1.0},
        {FlatBarrier::G1, (3.0 / 16.0) * (x - y) * (x + 3.0 * y), -1.0},
        {FlatBarrier::G2, (3.0 / 16.0) * (x + y) * (x - 3.0 * y), +1.0},
        {FlatBarrier::G3, mono(0.75, {0, 2, 0, 0}), +1.0},
        {FlatBarrier::G4, mono(0.75, {0, 2, 0, 0}), -1.0},
    };
    bool grad_ok = true, null_ok = true;
    for (const Row& r : rows) {
      auto [u, v] = horizontal_gradient_poly(f, flat_barrier_poly(r.which));
      grad_ok = grad_ok && u == r.coef && v == r.sign * r.coef;
      null_ok = null_ok && u * u == v * v;
    }
    rep.add(grad_ok
                ? CheckResult::pass("gradient_identities",
                                    "closed-form horizontal gradients")
                : CheckResult::fail("gradient_identities",
                                    "closed-form horizontal gradients", 1.0));
    rep.add(null_ok ? CheckResult::pass("gradient_nullness",
                                        "g(grad, grad) = 0 identically")
                    : CheckResult::fail("gradient_nullness",
                                        "g(grad, grad) = 0 identically", 1.0));
  }

  // Causal sign regions of the gradients.
  {
    GridSpec grid;
    grid.n = {vs.grid_n, vs.grid_n, 3, 3};
    auto audit = [&](FlatBarrier which,
                     std::function<bool(const Point&)> region) {
      rep.add(gradient_region_audit(f, ScalarField::closed_form(which), grid,
                                    region,
                                    "region_" + flat_barrier_name(which)));
    };
    audit(FlatBarrier::F1, [](const Point& q) { return std::fabs(q.y) < q.x; });
    audit(FlatBarrier::F2, [](const Point& q) { return std::fabs(q.y) < q.x; });
    audit(FlatBarrier::G1, [](const Point& q) {
      return q.x > 0 && -q.x / 3.0 < q.y && q.y < q.x;
    });
    audit(FlatBarrier::G2, [](const Point& q) {
      return q.x > 0 && -q.x < q.y && q.y < q.x / 3.0;
    });
    audit(FlatBarrier::G3, [](const Point& q) { return q.x > 0 && q.y != 0.0; });
    audit(FlatBarrier::G4, [](const Point& q) { return q.x > 0 && q.y != 0.0; });
  }

  // Characteristic solver against the closed forms.
  {
    double sup = 0.0;
    Point worst_q{};
    for (int idx = 1; idx <= 6; ++idx) {
      ScalarField field =
          ScalarField::characteristic(BarrierSpec::cauchy(idx), f);
      FlatBarrier which = flat_barrier_for(BarrierSpec::cauchy(idx));
      for (int i = 0; i < vs.oracle_points; ++i) {
        Point q{rs.uniform(-1, 1), rs.uniform(-1, 1), rs.uniform(-1, 1),
                rs.uniform(-1, 1)};
        double err = std::fabs(characteristic_solve(field, q, cfg.integrator) -
                               flat_barrier(which, q));
        if (err > sup) {
          sup = err;
          worst_q = q;
        }
      }
    }
    rep.add(bound_check("characteristic_oracle",
                        "characteristic values match the closed forms", sup,
                        vs.oracle_tol, format_point(worst_q)));

    ScalarField ca1 = ScalarField::characteristic(BarrierSpec::cauchy(1), f);
    double on_surface =
        std::fabs(characteristic_solve(ca1, {0.3, 0.3, -0.7, 0.9}) + 0.7);
    rep.add(bound_check("characteristic_on_surface",
                        "zero-length characteristics return the datum",
                        on_surface, 0.0));
  }

  // Radial bound and the monotonicity transfer.
  {
    SamplerConfig sc;
    sc.n_paths = vs.mc_paths;
    sc.strategy = SampleStrategy::UniformHyperbolic;
    sc.chi_max = 2.0;
    sc.horizon = 0.6;
    sc.start = Point{0.4, 0.0, 0.0, 0.0};
    sc.box = Box4{};
    auto paths = draw_control_paths(sc, cfg.seed + 17);
    double excess = 0.0, increase = 0.0;
    for (const auto& cp : paths) {
      SampledPath p = integrate_path(f, cp, cfg.integrator, sc.box);
      RadialBound rb = radial_bound_check(f, p, 1e-6);
      excess = std::max(excess, rb.length - rb.delta_r1);
      double prev = flat_barrier(FlatBarrier::F1, p.samples.front().q);
      for (const auto& s : p.samples) {
        double now = flat_barrier(FlatBarrier::F1, s.q);
        increase = std::max(increase, now - prev);
        prev = now;
      }
    }
    rep.add(bound_check("radial_bound", "L <= increase of R1 on S1+ paths",
                        excess, 1e-6));
    rep.add(bound_check("barrier_monotonicity",
                        "f1 nonincreasing along nspc. f.d. paths in the cone",
                        increase, 1e-8));

    double eq_worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
      double phi = rs.uniform(-2, 2), s_end = rs.uniform(0.2, 1.0);
      SampledPath radial;
      for (int i = 0; i <= 50; ++i) {
        double s = s_end * i / 50.0;
        radial.samples.push_back(
            {s, {s * std::cosh(phi), s * std::sinh(phi), 0.0, 0.0},
             std::cosh(phi), std::sinh(phi)});
      }
      RadialBound rb = radial_bound_check(f, radial, 1e-6);
      eq_worst = std::max(eq_worst, std::fabs(rb.length - rb.delta_r1));
    }
    rep.add(bound_check("radial_equality",
                        "timelike radial lines saturate the bound", eq_worst,
                        1e-8));
  }

  // Lift / projection round trip.
  {
    MartinetFrame mf = martinet_projection(f);
    SamplerConfig sc;
    sc.n_paths = 5;
    sc.box = sc.box.with_unbounded_z();
    auto paths = draw_control_paths(sc, cfg.seed + 23);
    double worst = 0.0;
    bool controls_ok = true;
    for (const auto& cp : paths) {
      SampledPath3 p3 = integrate_path3(mf, cp, cfg.integrator, sc.box);
      SampledPath lifted = lift_curve(f, p3, 0.0, cfg.integrator);
      for (std::size_t k = 0; k < p3.samples.size(); ++k) {
        worst = std::max(
            {worst, std::fabs(lifted.samples[k].q.x - p3.samples[k].q.x),
             std::fabs(lifted.samples[k].q.y - p3.samples[k].q.y),
             std::fabs(lifted.samples[k].q.w - p3.samples[k].q.w)});
        controls_ok = controls_ok &&
                      lifted.samples[k].u == p3.samples[k].u &&
                      lifted.samples[k].v == p3.samples[k].v;
      }
    }
    rep.add(bound_check("lift_projection_roundtrip",
                        "lifts project back to their base curves", worst,
                        1e-9));
    rep.add(controls_ok
                ? CheckResult::pass("lift_isometry",
                                    "frame coefficients preserved exactly")
                : CheckResult::fail("lift_isometry",
                                    "frame coefficients preserved exactly",
                                    1.0));
  }

  return finish(cfg, rep, out_path);
}

// ---------------------------------------------------------------------------

int cmd_sample(const RunConfig& cfg, const std::string& out_cloud,
               const std::string& out_report, const std::string& in_cloud) {
  VerificationReport rep = new_report(cfg);

  ReachCloud cloud;
  bool simulated = in_cloud.empty();
  if (simulated) {
    cloud = sample_reachable(cfg.frame, cfg.sampler, cfg.seed, cfg.integrator);
  } else {
    cloud = ReachCloud::from_csv(read_file(in_cloud), cfg.seed,
                                 cfg.frame.tag(), cfg.sampler.box);
  }
  std::string cloud_path = out_cloud.empty() ? cfg.out_cloud : out_cloud;
  if (!cloud_path.empty() && simulated) {
    write_file(cloud_path, cloud.to_csv());
  }

  if (cfg.regions == RegionChoice::Flat) {
    rep.add(inclusion_check_flat(cloud, cfg.slack));
    rep.add(abnormal_probe_check(abnormal_boundary_probe(
        cloud, cfg.probe.delta, cfg.probe.x_max, cfg.slack)));
    rep.add(null_ray_audit(cloud));
  } else {
    rep.add(inclusion_check_weak(cloud, cfg.frame, cfg.slack, cfg.integrator));
  }

  if (simulated) {
    if (cfg.frame.z_free()) {
      SamplerConfig psc = cfg.sampler;
      psc.n_paths = std::min<long>(cfg.sampler.n_paths, 1000);
      psc.box = psc.box.with_unbounded_z();
      ReachCloud c4 = sample_reachable(cfg.frame, psc, cfg.seed, cfg.integrator);
      ReachCloud3 c3 =
          sample_reachable_martinet(cfg.frame, psc, cfg.seed, cfg.integrator);
      rep.add(projection_consistency(c4, c3));
    } else {
      rep.add(CheckResult::warn("projection_consistency",
                                "projected cloud equals cloud of the projection",
                                "frame has z-dependent phi or psi2"));
    }
  }

  return finish(cfg, rep, out_report);
}

// ---------------------------------------------------------------------------

int cmd_solve_cauchy(const RunConfig& cfg, const std::string& problem,
                     int grid_n, const std::string& out_path) {
  int idx = 0;
  if (problem.size() == 3 && problem.rfind("ca", 0) == 0 &&
      problem[2] >= '1' && problem[2] <= '6') {
    idx = problem[2] - '0';
  } else {
    throw ConfigError("problem must be one of ca1..ca6");
  }
  if (grid_n < 2) throw ConfigError("--grid must be at least 2");

  BarrierSpec spec = BarrierSpec::cauchy(idx);
  ScalarField field = ScalarField::characteristic(spec, cfg.frame);
  bool flat = cfg.frame.provenance() == Provenance::Flat;
  FlatBarrier closed = flat_barrier_for(spec);

  auto clamp = [](std::array<double, 2> r) {
    if (!std::isfinite(r[0])) r[0] = -0.5;
    if (!std::isfinite(r[1])) r[1] = 0.5;
    r[0] = std::max(r[0], -1.0);
    r[1] = std::min(r[1], 1.0);
    return r;
  };
  GridSpec grid;
  grid.x = clamp(cfg.sampler.box.x);
  grid.y = clamp(cfg.sampler.box.y);
  grid.z = clamp(cfg.sampler.box.z);
  grid.w = clamp(cfg.sampler.box.w);
  grid.n = {grid_n, grid_n, grid_n, grid_n};

  std::string csv = flat ? "x,y,z,w,eta,closed_form,abs_err\n" : "x,y,z,w,eta\n";
  double sup = 0.0;
  long misses = 0, total = 0;
  char buf[256];
  grid.for_each([&](const Point& q) {
    ++total;
    double val = std::numeric_limits<double>::quiet_NaN();
    try {
      val = characteristic_solve(field, q, cfg.integrator);
    } catch (const NoBoundaryHit&) {
      ++misses;
    }
    if (flat) {
      double ref = flat_barrier(closed, q);
      double err = std::isnan(val) ? val : std::fabs(val - ref);
      if (!std::isnan(err)) sup = std::max(sup, err);
      std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.3e\n",
                    q.x, q.y, q.z, q.w, val, ref, err);
    } else {
      std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g,%.17g\n", q.x,
                    q.y, q.z, q.w, val);
    }
    csv += buf;
  });

  if (!out_path.empty()) {
    write_file(out_path, csv);
  } else {
    std::fputs(csv.c_str(), stdout);
  }
  std::fprintf(stderr, "%s on %d^4 grid: %ld points, %ld outside the patch",
               problem.c_str(), grid_n, total, misses);
  if (flat) std::fprintf(stderr, ", sup |eta - closed form| = %.3e", sup);
  std::fputc('\n', stderr);
  return 0;
}

// ---------------------------------------------------------------------------

namespace {

struct PlaneDef {
  int ax = 0, ay = 1;
  const char* x_label;
  const char* y_label;
};

PlaneDef plane_def(const std::string& plane) {
  if (plane == "xy") return {0, 1, "x", "y"};
  if (plane == "xz") return {0, 2, "x", "z"};
  if (plane == "xw") return {0, 3, "x", "w"};
  if (plane == "yz") return {1, 2, "y", "z"};
  throw ConfigError("plane must be one of xy, xz, xw, yz");
}

// Zero level sets of the barriers restricted to the coordinate plane (the
// two remaining coordinates at zero).
std::vector<PlotCurve> slice_curves(const std::string& plane, double lo,
                                    double hi) {
  std::vector<PlotCurve> curves;
  auto sample = [&](auto fn, const char* color, const char* label) {
    PlotCurve c;
    c.color = color;
    c.label = label;
    for (int i = 0; i <= 200; ++i) {
      double t = lo + (hi - lo) * i / 200.0;
      c.polyline.push_back(fn(t));
    }
    curves.push_back(std::move(c));
  };
  if (plane == "xy") {
    sample([](double t) { return std::make_pair(t, t); }, "#d62728", "y = x");
    sample([](double t) { return std::make_pair(t, -t); }, "#2ca02c",
           "y = -x");
  } else if (plane == "xz") {
    sample([](double t) { return std::make_pair(t, 0.25 * t * t); }, "#d62728",
           "f1 = 0");
    sample([](double t) { return std::make_pair(t, -0.25 * t * t); },
           "#2ca02c", "f2 = 0");
  } else if (plane == "xw") {
    sample([](double t) { return std::make_pair(t, t * t * t / 16.0); },
           "#d62728", "g1 = g2 = 0");
    sample([](double t) { return std::make_pair(t, 0.0); }, "#2ca02c",
           "g3 = g4 = 0");
  } else if (plane == "yz") {
    sample([](double t) { return std::make_pair(t, -0.25 * t * t); },
           "#d62728", "f1 = 0");
    sample([](double t) { return std::make_pair(t, 0.25 * t * t); }, "#2ca02c",
           "f2 = 0");
  }
  return curves;
}

}  // namespace

int cmd_plot(const std::string& cloud_path, const std::string& plane,
             const std::string& out_path) {
  PlaneDef def = plane_def(plane);
  ReachCloud cloud =
      ReachCloud::from_csv(read_file(cloud_path), 0, "imported", Box4{});

  std::vector<std::pair<double, double>> pts;
  const std::size_t kMaxPoints = 20000;
  std::size_t stride =
      std::max<std::size_t>(1, cloud.endpoints.size() / kMaxPoints);
  double lo = 0.0, hi = 1.0;
  for (std::size_t i = 0; i < cloud.endpoints.size(); i += stride) {
    auto a = cloud.endpoints[i].q.as_array();
    pts.emplace_back(a[def.ax], a[def.ay]);
    lo = std::min(lo, a[def.ax]);
    hi = std::max(hi, a[def.ax]);
  }

  std::string title = "reachable endpoints, " + plane + " plane (" +
                      std::to_string(cloud.endpoints.size()) + " points)";
  std::vector<PlotCurve> curves;
  if (!cloud.endpoints.empty()) curves = slice_curves(plane, lo, hi);
  std::string svg = render_scatter_svg(title, def.x_label, def.y_label, pts,
                                       curves);
  write_file(out_path, svg);
  return 0;
}

}  // namespace elab::tools
