#include "patrol/dynamics.hpp"

#include "patrol/dop853.hpp"

#include <cmath>

namespace patrol::dynamics {

namespace {

using Vec42 = Eigen::Matrix<double, 42, 1>;

void check_distances(double r1, double r2, double floor) {
  if (r1 < floor || r2 < floor) {
    throw SingularPositionError("position within " + std::to_string(floor) +
                                " of a primary (r1=" + std::to_string(r1) +
                                ", r2=" + std::to_string(r2) + ")");
  }
}

dop853::Controls controls_from(const PropagationSettings& s) {
  s.validate();
  dop853::Controls c;
  c.rel_tol = s.rel_tol;
  c.abs_tol = s.abs_tol;
  c.max_step = s.max_step;
  return c;
}

}  // namespace

std::pair<double, double> primary_distances(const Vec3& pos, const MassRatio& mu) {
  const double m = mu.value();
  const double r1 = std::sqrt((pos.x() + m) * (pos.x() + m) + pos.y() * pos.y() +
                              pos.z() * pos.z());
  const double r2 = std::sqrt((pos.x() - (1.0 - m)) * (pos.x() - (1.0 - m)) +
                              pos.y() * pos.y() + pos.z() * pos.z());
  return {r1, r2};
}

double effective_potential(const Vec3& pos, const MassRatio& mu,
                           double singularity_floor) {
  const auto [r1, r2] = primary_distances(pos, mu);
  check_distances(r1, r2, singularity_floor);
  const double m = mu.value();
  return 0.5 * (pos.x() * pos.x() + pos.y() * pos.y()) + (1.0 - m) / r1 + m / r2;
}

Vec3 potential_gradient(const Vec3& pos, const MassRatio& mu,
                        double singularity_floor) {
  const auto [r1, r2] = primary_distances(pos, mu);
  check_distances(r1, r2, singularity_floor);
  const double m = mu.value();
  const double r13 = r1 * r1 * r1;
  const double r23 = r2 * r2 * r2;
  Vec3 g;
  g.x() = pos.x() - (1.0 - m) * (pos.x() + m) / r13 -
          m * (pos.x() - (1.0 - m)) / r23;
  g.y() = pos.y() - (1.0 - m) * pos.y() / r13 - m * pos.y() / r23;
  g.z() = -(1.0 - m) * pos.z() / r13 - m * pos.z() / r23;
  return g;
}

Vec6 eom(const State& state, const MassRatio& mu, double singularity_floor) {
  const Vec3 g = potential_gradient(state.head<3>(), mu, singularity_floor);
  Vec6 d;
  d[0] = state[3];
  d[1] = state[4];
  d[2] = state[5];
  d[3] = 2.0 * state[4] + g.x();
  d[4] = -2.0 * state[3] + g.y();
  d[5] = g.z();
  return d;
}

double jacobi_constant(const State& state, const MassRatio& mu) {
  const double v2 = state.tail<3>().squaredNorm();
  return 2.0 * effective_potential(state.head<3>(), mu) - v2;
}

Mat6 eom_jacobian(const State& state, const MassRatio& mu,
                  double singularity_floor) {
  const auto [r1, r2] = primary_distances(state.head<3>(), mu);
  check_distances(r1, r2, singularity_floor);
  const double m = mu.value();
  const double x = state[0], y = state[1], z = state[2];
  const double d1x = x + m;           // offset from first primary
  const double d2x = x - (1.0 - m);   // offset from second primary
  const double r13 = r1 * r1 * r1, r15 = r13 * r1 * r1;
  const double r23 = r2 * r2 * r2, r25 = r23 * r2 * r2;
  const double c1 = (1.0 - m), c2 = m;

  const double uxx = 1.0 - c1 / r13 - c2 / r23 + 3.0 * c1 * d1x * d1x / r15 +
                     3.0 * c2 * d2x * d2x / r25;
  const double uyy = 1.0 - c1 / r13 - c2 / r23 + 3.0 * c1 * y * y / r15 +
                     3.0 * c2 * y * y / r25;
  const double uzz = -c1 / r13 - c2 / r23 + 3.0 * c1 * z * z / r15 +
                     3.0 * c2 * z * z / r25;
  const double uxy = 3.0 * c1 * d1x * y / r15 + 3.0 * c2 * d2x * y / r25;
  const double uxz = 3.0 * c1 * d1x * z / r15 + 3.0 * c2 * d2x * z / r25;
  const double uyz = 3.0 * c1 * y * z / r15 + 3.0 * c2 * y * z / r25;

  Mat6 a = Mat6::Zero();
  a.block<3, 3>(0, 3).setIdentity();
  a(3, 0) = uxx; a(3, 1) = uxy; a(3, 2) = uxz;
  a(4, 0) = uxy; a(4, 1) = uyy; a(4, 2) = uyz;
  a(5, 0) = uxz; a(5, 1) = uyz; a(5, 2) = uzz;
  a(3, 4) = 2.0;
  a(4, 3) = -2.0;
  return a;
}

State propagate(const State& state, double t0, double t1, const MassRatio& mu,
                const PropagationSettings& settings) {
  if (!state.allFinite()) throw Error("propagate: non-finite initial state");
  if (t1 == t0) return state;
  const auto ctl = controls_from(settings);
  const auto rhs = [&mu](double, const Vec6& y, Vec6& dy) { dy = eom(y, mu); };
  return dop853::integrate<6>(rhs, state, t0, t1, ctl);
}

std::pair<State, Stm> propagate_with_stm(const State& state, double t0, double t1,
                                         const MassRatio& mu,
                                         const PropagationSettings& settings) {
  if (!state.allFinite()) throw Error("propagate_with_stm: non-finite initial state");
  if (t1 == t0) return {state, Stm::Identity()};
  const auto ctl = controls_from(settings);

  Vec42 y0;
  y0.head<6>() = state;
  Eigen::Map<Mat6>(y0.data() + 6) = Mat6::Identity();

  const auto rhs = [&mu](double, const Vec42& y, Vec42& dy) {
    const State s = y.head<6>();
    dy.head<6>() = eom(s, mu);
    const Mat6 a = eom_jacobian(s, mu);
    const Eigen::Map<const Mat6> phi(y.data() + 6);
    Eigen::Map<Mat6>(dy.data() + 6) = a * phi;
  };

  const Vec42 yf = dop853::integrate<42>(rhs, y0, t0, t1, ctl);
  State sf = yf.head<6>();
  Stm phi = Eigen::Map<const Mat6>(yf.data() + 6);
  return {sf, phi};
}

}  // namespace patrol::dynamics
