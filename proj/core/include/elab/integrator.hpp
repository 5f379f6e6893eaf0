#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <type_traits>
#include <utility>

#include "elab/errors.hpp"

namespace elab {

struct IntegratorConfig {
  double rel_tol = 1e-10;
  double abs_tol = 1e-10;
  double max_step = 0.25;
  double event_tol = 1e-12;
};

// Embedded Dormand-Prince 5(4) one-step integrator with the standard
// fourth-order continuous extension. Stages follow the original RK5(4)7M
// tableau; the interpolant coefficients are the usual dense-output set for
// this method. Event crossings are located by bisection on the interpolant
// down to cfg.event_tol in time.
//
// State is a fixed-size array; the right-hand side is any callable
// f(t, y) -> state. One instance holds the scratch stages for one
// integration at a time; distinct instances may run concurrently.
template <std::size_t N, typename Rhs>
class Dopri5 {
 public:
  using State = std::array<double, N>;

  Dopri5(Rhs rhs, IntegratorConfig cfg) : rhs_(std::move(rhs)), cfg_(cfg) {}

  struct StepRecord {
    double t0 = 0.0, t1 = 0.0;
    State y0{}, y1{};
    // Dense coefficients: y(t0 + s*(t1-t0)) =
    //   r[0] + s*(r[1] + (1-s)*(r[2] + s*(r[3] + (1-s)*r[4]))).
    std::array<State, 5> rcont{};

    State interpolate(double t) const {
      double h = t1 - t0;
      double s = (h == 0.0) ? 0.0 : (t - t0) / h;
      State y;
      for (std::size_t i = 0; i < N; ++i) {
        y[i] = rcont[0][i] +
               s * (rcont[1][i] +
                    (1.0 - s) * (rcont[2][i] +
                                 s * (rcont[3][i] + (1.0 - s) * rcont[4][i])));
      }
      return y;
    }
  };

  struct Result {
    double t = 0.0;
    State y{};
    bool event_hit = false;
    long n_steps = 0;
  };

  // Integrates from (t0, y0) to t_end (either direction). After every
  // accepted step calls on_step(const StepRecord&). If event(t, y) changes
  // sign inside a step, stops at the refined crossing. event may be
  // nullptr-like (see NoEvent below).
  template <typename OnStep, typename Event>
  Result integrate(double t0, const State& y0, double t_end, OnStep&& on_step,
                   Event&& event) {
    Result res;
    res.t = t0;
    res.y = y0;
    if (t_end == t0) return res;

    const double dir = (t_end > t0) ? 1.0 : -1.0;
    const double span = std::fabs(t_end - t0);
    double h = std::min(cfg_.max_step, span);
    const double h_min =
        std::max(span, 1.0) * 16.0 * std::numeric_limits<double>::epsilon();

    State k1 = rhs_(res.t, res.y);
    double ev_prev = 0.0;
    bool have_event = false;
    if constexpr (!std::is_same_v<std::decay_t<Event>, NoEvent>) {
      ev_prev = event(res.t, res.y);
      have_event = true;
    }

    int rejects_in_a_row = 0;
    while (dir * (t_end - res.t) > 0.0) {
      double remaining = std::fabs(t_end - res.t);
      if (remaining < h_min) {
        res.t = t_end;  // snap a sub-roundoff remainder
        break;
      }
      bool final_step = h >= remaining;
      if (final_step) h = remaining;
      if (h < h_min) {
        throw StepFailure("step size underflow at t = " + std::to_string(res.t));
      }

      StepRecord rec;
      State y1, k7;
      double err = attempt(res.t, res.y, k1, dir * h, y1, k7, rec);
      if (!(err <= 1.0)) {  // rejects NaN error estimates too
        h *= std::max(0.2, 0.9 * std::pow(err, -0.2));
        if (!(h > 0.0) || std::isnan(h)) h = 0.2 * remaining;
        if (++rejects_in_a_row > 200) {
          throw StepFailure("step controller stalled at t = " +
                            std::to_string(res.t));
        }
        continue;
      }
      rejects_in_a_row = 0;

      double t1 = final_step ? t_end : res.t + dir * h;
      rec.t1 = t1;
      ++res.n_steps;

      if constexpr (!std::is_same_v<std::decay_t<Event>, NoEvent>) {
        double ev_now = event(t1, y1);
        if (have_event && crossed(ev_prev, ev_now)) {
          // The terminating partial step is not reported to on_step; the
          // caller records the crossing state from the result.
          auto [tc, yc] = refine_event(rec, event, res.t, t1);
          res.t = tc;
          res.y = yc;
          res.event_hit = true;
          return res;
        }
        ev_prev = ev_now;
      }

      res.t = t1;
      res.y = y1;
      k1 = k7;  // FSAL
      on_step(rec);

      double grow = 0.9 * std::pow(std::max(err, 1e-10), -0.2);
      h = std::min(cfg_.max_step, h * std::min(5.0, std::max(0.2, grow)));
    }
    return res;
  }

  struct NoEvent {};

  template <typename OnStep>
  Result integrate(double t0, const State& y0, double t_end, OnStep&& on_step) {
    return integrate(t0, y0, t_end, std::forward<OnStep>(on_step), NoEvent{});
  }

  Result integrate(double t0, const State& y0, double t_end) {
    return integrate(t0, y0, t_end, [](const StepRecord&) {}, NoEvent{});
  }

 private:
  // Sign classes are {>= 0} and {< 0}, so a value sitting exactly on the
  // event surface counts with the nonnegative side.
  static bool crossed(double a, double b) { return (a >= 0.0) != (b >= 0.0); }

  // One trial step of signed size h. Returns the scaled error estimate and
  // fills the proposed state, the FSAL stage, and the dense record.
  double attempt(double t, const State& y, const State& k1, double h,
                 State& y1, State& k7, StepRecord& rec) {
    constexpr double a21 = 1.0 / 5;
    constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                     a53 = 64448.0 / 6561, a54 = -212.0 / 729;
    constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33,
                     a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                     a65 = -5103.0 / 18656;
    constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                     b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                     e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
    constexpr double d1 = -12715105075.0 / 11282082432.0,
                     d3 = 87487479700.0 / 32700410799.0,
                     d4 = -10690763975.0 / 1880347072.0,
                     d5 = 701980252875.0 / 199316789632.0,
                     d6 = -1453857185.0 / 822651844.0,
                     d7 = 69997945.0 / 29380423.0;

    State ytmp;
    for (std::size_t i = 0; i < N; ++i) ytmp[i] = y[i] + h * a21 * k1[i];
    State k2 = rhs_(t + c2 * h, ytmp);
    for (std::size_t i = 0; i < N; ++i) {
      ytmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
    }
    State k3 = rhs_(t + c3 * h, ytmp);
    for (std::size_t i = 0; i < N; ++i) {
      ytmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
    }
    State k4 = rhs_(t + c4 * h, ytmp);
    for (std::size_t i = 0; i < N; ++i) {
      ytmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] +
                            a54 * k4[i]);
    }
    State k5 = rhs_(t + c5 * h, ytmp);
    for (std::size_t i = 0; i < N; ++i) {
      ytmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] +
                            a64 * k4[i] + a65 * k5[i]);
    }
    State k6 = rhs_(t + h, ytmp);

    for (std::size_t i = 0; i < N; ++i) {
      y1[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] +
                          b6 * k6[i]);
    }
    k7 = rhs_(t + h, y1);

    double err_sq = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      double e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                      e6 * k6[i] + e7 * k7[i]);
      double sc = cfg_.abs_tol +
                  cfg_.rel_tol * std::max(std::fabs(y[i]), std::fabs(y1[i]));
      err_sq += (e / sc) * (e / sc);
    }
    double err = std::sqrt(err_sq / static_cast<double>(N));

    rec.t0 = t;
    rec.t1 = t + h;
    rec.y0 = y;
    rec.y1 = y1;
    for (std::size_t i = 0; i < N; ++i) {
      double dy = y1[i] - y[i];
      double bspl = h * k1[i] - dy;
      rec.rcont[0][i] = y[i];
      rec.rcont[1][i] = dy;
      rec.rcont[2][i] = bspl;
      rec.rcont[3][i] = dy - h * k7[i] - bspl;
      rec.rcont[4][i] = h * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] +
                             d5 * k5[i] + d6 * k6[i] + d7 * k7[i]);
    }
    return err;
  }

  template <typename Event>
  std::pair<double, State> refine_event(const StepRecord& rec, Event&& event,
                                        double ta, double tb) {
    double ga = event(ta, rec.interpolate(ta));
    // Bisection on the dense interpolant; monotone shrink keeps us robust
    // against interpolation wiggle near the root.
    while (std::fabs(tb - ta) > cfg_.event_tol) {
      double tm = 0.5 * (ta + tb);
      State ym = rec.interpolate(tm);
      double gm = event(tm, ym);
      if (crossed(ga, gm)) {
        tb = tm;
      } else {
        ta = tm;
        ga = gm;
      }
    }
    return {tb, rec.interpolate(tb)};
  }

  Rhs rhs_;
  IntegratorConfig cfg_;
};

template <std::size_t N, typename Rhs>
Dopri5<N, Rhs> make_dopri5(Rhs rhs, const IntegratorConfig& cfg) {
  return Dopri5<N, Rhs>(std::move(rhs), cfg);
}

}  // namespace elab
