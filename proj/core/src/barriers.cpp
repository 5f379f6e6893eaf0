#include "elab/barriers.hpp"

#include <cmath>
#include <cstdio>

#include "elab/errors.hpp"
#include "elab/rng.hpp"

namespace elab {

namespace {

struct CellDef {
  FlatBarrier f;
  FlatBarrier g;
  int sy;  // required sign of y (+1 / -1)
  int sz;
  int sw;
};

constexpr CellDef kCells[8] = {
    {FlatBarrier::F1, FlatBarrier::G1, +1, +1, +1},  // A11
    {FlatBarrier::F1, FlatBarrier::G2, -1, +1, +1},  // A12
    {FlatBarrier::F1, FlatBarrier::G3, +1, +1, -1},  // A13
    {FlatBarrier::F1, FlatBarrier::G4, -1, +1, -1},  // A14
    {FlatBarrier::F2, FlatBarrier::G1, +1, -1, +1},  // A21
    {FlatBarrier::F2, FlatBarrier::G2, -1, -1, +1},  // A22
    {FlatBarrier::F2, FlatBarrier::G3, +1, -1, -1},  // A23
    {FlatBarrier::F2, FlatBarrier::G4, -1, -1, -1},  // A24
};

const char* kCellNames[8] = {"A11", "A12", "A13", "A14",
                             "A21", "A22", "A23", "A24"};

bool le(double v, double slack) { return v <= slack; }
bool sign_ok(double v, int sign, double slack) {
  return sign > 0 ? v >= -slack : v <= slack;
}

}  // namespace

std::string cell_name(FlatCell c) { return kCellNames[static_cast<int>(c)]; }

bool cell_membership(FlatCell c, const Point& q, double slack) {
  const CellDef& d = kCells[static_cast<int>(c)];
  return le(flat_barrier(d.f, q), slack) && le(flat_barrier(d.g, q), slack) &&
         sign_ok(q.x, +1, slack) && sign_ok(q.y, d.sy, slack) &&
         sign_ok(q.z, d.sz, slack) && sign_ok(q.w, d.sw, slack);
}

bool flat_union_membership(const Point& q, double slack) {
  for (int c = 0; c < 8; ++c) {
    if (cell_membership(static_cast<FlatCell>(c), q, slack)) return true;
  }
  return false;
}

std::vector<std::string> cell_violations(FlatCell c, const Point& q,
                                         double slack) {
  const CellDef& d = kCells[static_cast<int>(c)];
  std::vector<std::string> out;
  if (!le(flat_barrier(d.f, q), slack))
    out.push_back(flat_barrier_name(d.f) + "<=0");
  if (!le(flat_barrier(d.g, q), slack))
    out.push_back(flat_barrier_name(d.g) + "<=0");
  if (!sign_ok(q.x, +1, slack)) out.push_back("x>=0");
  if (!sign_ok(q.y, d.sy, slack)) out.push_back(d.sy > 0 ? "y>=0" : "y<=0");
  if (!sign_ok(q.z, d.sz, slack)) out.push_back(d.sz > 0 ? "z>=0" : "z<=0");
  if (!sign_ok(q.w, d.sw, slack)) out.push_back(d.sw > 0 ? "w>=0" : "w<=0");
  return out;
}

bool region_membership(const std::string& name, const Point& q, double slack) {
  if (slack < 0.0) throw std::invalid_argument("slack must be >= 0");
  for (int c = 0; c < 8; ++c) {
    if (name == kCellNames[c]) {
      return cell_membership(static_cast<FlatCell>(c), q, slack);
    }
  }
  if (name == "flat_union") return flat_union_membership(q, slack);
  if (name == "weak_general") {
    return WeakGeneralRegion(FrameStructure::flat()).member(q, slack);
  }
  throw UnknownRegion("unknown region '" + name + "'");
}

WeakGeneralRegion::WeakGeneralRegion(const FrameStructure& frame,
                                     IntegratorConfig cfg)
    : f1_(frame.provenance() == Provenance::Flat
              ? ScalarField::closed_form(FlatBarrier::F1)
              : ScalarField::characteristic(BarrierSpec::cauchy(1), frame)),
      f2_(frame.provenance() == Provenance::Flat
              ? ScalarField::closed_form(FlatBarrier::F2)
              : ScalarField::characteristic(BarrierSpec::cauchy(2), frame)),
      cfg_(cfg) {}

bool WeakGeneralRegion::member(const Point& q, double slack) const {
  if (q.x < -slack) return false;
  if (q.z >= -slack && f1_.eval(q, cfg_) <= slack) return true;
  if (q.z <= slack && f2_.eval(q, cfg_) <= slack) return true;
  return false;
}

std::vector<std::string> WeakGeneralRegion::violations(const Point& q,
                                                       double slack) const {
  std::vector<std::string> out;
  if (q.x < -slack) out.push_back("x>=0");
  bool branch1 = q.z >= -slack, branch2 = q.z <= slack;
  if (branch1 && f1_.eval(q, cfg_) > slack) out.push_back("f1<=0 (z>=0 branch)");
  if (branch2 && f2_.eval(q, cfg_) > slack) out.push_back("f2<=0 (z<=0 branch)");
  if (!branch1 && !branch2) out.push_back("z sign");
  return out;
}

CheckResult gradient_region_audit(
    const FrameStructure& frame, const ScalarField& field, const GridSpec& grid,
    const std::function<bool(const Point&)>& region,
    const std::string& check_name, const GradientOptions& opts) {
  long checked = 0, bad = 0;
  Point worst{};
  CausalClass expected{CausalKind::Null, Orientation::Future};

  grid.for_each([&](const Point& q) {
    if (!region(q)) return;
    ++checked;
    HorizontalVector g = horizontal_gradient(frame, field, q, opts);
    if (!(classify(g) == expected)) {
      if (bad == 0) worst = q;
      ++bad;
    }
  });

  char detail[128];
  std::snprintf(detail, sizeof(detail), "%ld points in region, %ld violations",
                checked, bad);
  std::string anchor =
      "grad " + field.name() + " null future directed on its sign region";
  if (bad > 0) {
    return CheckResult::fail(check_name, anchor, static_cast<double>(bad),
                             format_point(worst), detail);
  }
  CheckResult r = CheckResult::pass(check_name, anchor);
  r.detail = detail;
  return r;
}

OrderFit perturbation_order(const FrameStructure& frame,
                            const BarrierSpec& spec,
                            const std::vector<double>& radii,
                            const OrderFitOptions& opts) {
  if (radii.empty()) throw std::invalid_argument("need at least one radius");
  for (std::size_t i = 0; i + 1 < radii.size(); ++i) {
    if (!(radii[i] > radii[i + 1]) || !(radii[i] > 0.0)) {
      throw std::invalid_argument("radii must be positive and decreasing");
    }
  }

  // Fixed direction sample on the unit sphere in R^4.
  RandomStream rs(opts.direction_seed);
  std::vector<std::array<double, 4>> dirs;
  dirs.reserve(opts.directions);
  while (static_cast<int>(dirs.size()) < opts.directions) {
    std::array<double, 4> d{rs.normal(), rs.normal(), rs.normal(), rs.normal()};
    double n = std::sqrt(d[0] * d[0] + d[1] * d[1] + d[2] * d[2] + d[3] * d[3]);
    if (n < 1e-6) continue;
    for (double& c : d) c /= n;
    dirs.push_back(d);
  }

  ScalarField field = ScalarField::characteristic(spec, frame);
  FlatBarrier flat = flat_barrier_for(spec);

  OrderFit fit;
  fit.radii = radii;
  for (double r : radii) {
    double sup = 0.0;
    for (const auto& d : dirs) {
      Point q{r * d[0], r * d[1], r * d[2], r * d[3]};
      double approx = characteristic_solve(field, q, opts.cfg);
      sup = std::max(sup, std::fabs(approx - flat_barrier(flat, q)));
    }
    fit.sup_errors.push_back(sup);
  }

  double max_err = 0.0;
  for (double e : fit.sup_errors) max_err = std::max(max_err, e);
  if (max_err <= opts.noise_floor) {
    fit.degenerate = true;
    return fit;
  }

  // Least squares on log(err) vs log(r).
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = static_cast<int>(radii.size());
  for (int i = 0; i < n; ++i) {
    double lx = std::log(radii[i]);
    double ly = std::log(std::max(fit.sup_errors[i], 1e-300));
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  fit.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return fit;
}

}  // namespace elab
