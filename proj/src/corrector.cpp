#include "patrol/corrector.hpp"

#include <cmath>
#include <utility>

namespace patrol::corrector {

namespace {

double gx_on_axis(double x, const MassRatio& mu) {
  return dynamics::potential_gradient(Vec3(x, 0.0, 0.0), mu).x();
}

double bisect(double lo, double hi, const MassRatio& mu) {
  double flo = gx_on_axis(lo, mu);
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fmid = gx_on_axis(mid, mu);
    if (fmid == 0.0) return mid;
    if ((flo < 0.0) == (fmid < 0.0)) {
      lo = mid;
      flo = fmid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

struct Crossing {
  State state;
  double time;
};

// First x-axis crossing (y = 0 with sign change) after leaving the initial
// perpendicular crossing at t = 0.
Crossing next_crossing(const State& start, const MassRatio& mu,
                       const dynamics::PropagationSettings& settings) {
  const double h = 0.01;
  State prev = start;
  double t_prev = 0.0;
  bool left_axis = false;
  for (int step = 1; step <= 200000; ++step) {
    const double t = step * h;
    const State cur = dynamics::propagate(prev, t_prev, t, mu, settings);
    // the start sits on the axis; only sign changes after leaving it count
    if (left_axis && ((prev[1] < 0.0) != (cur[1] < 0.0))) {
      // Newton refinement on the crossing time from the bracket start
      double tau = t_prev + (t - t_prev) * prev[1] / (prev[1] - cur[1]);
      State s = prev;
      double ts = t_prev;
      for (int it = 0; it < 50; ++it) {
        s = dynamics::propagate(s, ts, tau, mu, settings);
        ts = tau;
        if (std::abs(s[1]) < 1e-14) break;
        if (std::abs(s[4]) < 1e-12) break;
        tau -= s[1] / s[4];
      }
      return {s, ts};
    }
    if (!left_axis && std::abs(cur[1]) > 1e-9) left_axis = true;
    prev = cur;
    t_prev = t;
  }
  throw Error("corrector: no x-axis crossing found");
}

}  // namespace

double collinear_point_x(const MassRatio& mu, int which) {
  const double m = mu.value();
  switch (which) {
    case 1:
      return bisect(-m + 1e-6, 1.0 - m - 1e-6, mu);
    case 2:
      return bisect(1.0 - m + 1e-6, 2.5, mu);
    case 3:
      return bisect(-2.5, -m - 1e-6, mu);
    default:
      throw Error("collinear_point_x: which must be 1, 2, or 3");
  }
}

CorrectionResult correct_planar_symmetric(const State& guess, const MassRatio& mu,
                                          const dynamics::PropagationSettings& settings,
                                          int max_iterations, double tolerance) {
  State s0 = guess;
  s0[1] = 0.0;
  s0[2] = 0.0;
  s0[3] = 0.0;
  s0[5] = 0.0;

  double residual = 0.0;
  double period = 0.0;
  for (int it = 1; it <= max_iterations; ++it) {
    const Crossing cross = next_crossing(s0, mu, settings);
    residual = std::abs(cross.state[3]);
    period = 2.0 * cross.time;
    if (residual < tolerance) {
      return {s0, period, it, residual};
    }
    const auto [sc, phi] =
        dynamics::propagate_with_stm(s0, 0.0, cross.time, mu, settings);
    const Vec6 d = dynamics::eom(sc, mu);
    // vx at the crossing as a function of vy0, with the crossing-time shift
    const double dvx_dvy0 = phi(3, 4) - d[3] * phi(1, 4) / sc[4];
    if (std::abs(dvx_dvy0) < 1e-14) {
      throw Error("corrector: singular update (dvx/dvy0 ~ 0)");
    }
    double delta = -cross.state[3] / dvx_dvy0;
    if (std::abs(delta) > 0.2) delta = std::copysign(0.2, delta);
    s0[4] += delta;
  }
  throw Error("corrector: no convergence after " + std::to_string(max_iterations) +
              " iterations (residual " + std::to_string(residual) + ")");
}

State lyapunov_guess(const MassRatio& mu, int which, double amplitude) {
  const double xl = collinear_point_x(mu, which);
  const double m = mu.value();
  const double r1 = std::abs(xl + m);
  const double r2 = std::abs(xl - (1.0 - m));
  const double c2 = (1.0 - m) / (r1 * r1 * r1) + m / (r2 * r2 * r2);
  // in-plane center frequency of the linearized collinear-point dynamics
  const double nu2 = 0.5 * (2.0 - c2 + std::sqrt(9.0 * c2 * c2 - 8.0 * c2));
  const double nu = std::sqrt(nu2);
  const double k = (nu2 + 1.0 + 2.0 * c2) / (2.0 * nu);
  State s = State::Zero();
  s[0] = xl - amplitude;
  s[4] = k * amplitude * nu;
  return s;
}

State dro_guess(const MassRatio& mu, double radius) {
  const double m = mu.value();
  State s = State::Zero();
  s[0] = 1.0 - m - radius;
  s[4] = std::sqrt(m / radius) + radius;
  return s;
}

}  // namespace patrol::corrector
