#pragma once

#include <functional>
#include <string>
#include <vector>

#include "elab/report.hpp"
#include "elab/scalar_field.hpp"

namespace elab {

// The eight cells whose union bounds the flat reachable set from the
// origin. Cell (i, j) combines f_i <= 0 and g_j <= 0 with the coordinate
// sign conditions x >= 0, (-1)^(j+1) y >= 0, (-1)^(i+1) z >= 0 and
// w >= 0 for j in {1,2}, w <= 0 for j in {3,4}.
enum class FlatCell { A11, A12, A13, A14, A21, A22, A23, A24 };

std::string cell_name(FlatCell c);

// Membership with every inequality relaxed by slack.
bool cell_membership(FlatCell c, const Point& q, double slack);
bool flat_union_membership(const Point& q, double slack);

// Predicates that fail for q in the given cell, e.g. {"g3<=0", "w<=0"}.
std::vector<std::string> cell_violations(FlatCell c, const Point& q,
                                         double slack);

// Name-based lookup: "A11".."A24", "flat_union", "weak_general".
// weak_general uses the flat closed forms; for perturbed frames use
// WeakGeneralRegion. Throws UnknownRegion.
bool region_membership(const std::string& name, const Point& q, double slack);

// {f1 <= 0, x >= 0, z >= 0} union {f2 <= 0, x >= 0, z <= 0} with f1, f2
// solved per frame (closed forms when flat).
class WeakGeneralRegion {
 public:
  WeakGeneralRegion(const FrameStructure& frame, IntegratorConfig cfg = {});

  bool member(const Point& q, double slack) const;
  std::vector<std::string> violations(const Point& q, double slack) const;

 private:
  ScalarField f1_;
  ScalarField f2_;
  IntegratorConfig cfg_;
};

// Uniform grid over a box; counts are per axis.
struct GridSpec {
  std::array<double, 2> x{-1.0, 1.0}, y{-1.0, 1.0}, z{-1.0, 1.0}, w{-1.0, 1.0};
  std::array<int, 4> n{25, 25, 1, 1};

  template <typename Fn>
  void for_each(Fn&& fn) const {
    auto coord = [](const std::array<double, 2>& r, int k, int n) {
      return n == 1 ? 0.5 * (r[0] + r[1])
                    : r[0] + (r[1] - r[0]) * k / double(n - 1);
    };
    for (int i = 0; i < n[0]; ++i)
      for (int j = 0; j < n[1]; ++j)
        for (int k = 0; k < n[2]; ++k)
          for (int l = 0; l < n[3]; ++l)
            fn(Point{coord(x, i, n[0]), coord(y, j, n[1]), coord(z, k, n[2]),
                     coord(w, l, n[3])});
  }
};

// Checks that the horizontal gradient of the field classifies as null
// future directed at every grid point satisfying the region predicate.
CheckResult gradient_region_audit(const FrameStructure& frame,
                                  const ScalarField& field,
                                  const GridSpec& grid,
                                  const std::function<bool(const Point&)>& region,
                                  const std::string& check_name,
                                  const GradientOptions& opts = {});

// Log-log least-squares fit of the deviation between the characteristic
// solution and its flat closed form, sampled on spheres of the given radii.
struct OrderFit {
  std::vector<double> radii;
  std::vector<double> sup_errors;
  double slope = 0.0;
  bool degenerate = false;  // all errors at solver noise level
};

struct OrderFitOptions {
  int directions = 64;
  std::uint64_t direction_seed = 2718281828;
  double noise_floor = 1e-8;
  IntegratorConfig cfg{};
};

// Radii must be positive and strictly decreasing.
OrderFit perturbation_order(const FrameStructure& frame,
                            const BarrierSpec& spec,
                            const std::vector<double>& radii,
                            const OrderFitOptions& opts = {});

}  // namespace elab
