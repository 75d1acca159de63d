#pragma once

// Circular restricted three-body problem in the rotating frame,
// nondimensional canonical units. State ordering: x, y, z, vx, vy, vz.

#include "patrol/types.hpp"

#include <utility>

namespace patrol::dynamics {

struct PropagationSettings {
  double rel_tol = 1e-12;
  double abs_tol = 1e-12;
  double max_step = 0.5;

  void validate() const {
    if (!(rel_tol > 0.0) || !(abs_tol > 0.0) || !(max_step > 0.0)) {
      throw Error("propagation tolerances and max_step must be strictly positive");
    }
  }
};

/// Distances to the primaries at (-mu, 0, 0) and (1-mu, 0, 0).
std::pair<double, double> primary_distances(const Vec3& pos, const MassRatio& mu);

/// Rotating-frame effective potential U = (x^2+y^2)/2 + (1-mu)/r1 + mu/r2.
double effective_potential(const Vec3& pos, const MassRatio& mu,
                           double singularity_floor = 1e-12);

/// Gradient of the effective potential.
Vec3 potential_gradient(const Vec3& pos, const MassRatio& mu,
                        double singularity_floor = 1e-12);

/// Equations of motion: returns (vx, vy, vz, ax, ay, az).
Vec6 eom(const State& state, const MassRatio& mu, double singularity_floor = 1e-12);

/// Jacobi constant C = 2 U(pos) - |v|^2, conserved along trajectories.
double jacobi_constant(const State& state, const MassRatio& mu);

/// Jacobian of eom with respect to the state, used by the variational
/// equations d(Phi)/dt = A(t) Phi.
Mat6 eom_jacobian(const State& state, const MassRatio& mu,
                  double singularity_floor = 1e-12);

/// Flow of the equations of motion from t0 to t1 (either order).
State propagate(const State& state, double t0, double t1, const MassRatio& mu,
                const PropagationSettings& settings = {});

/// Flow plus the state transition matrix d x(t1) / d x(t0), integrated
/// jointly as a 42-dimensional system.
std::pair<State, Stm> propagate_with_stm(const State& state, double t0, double t1,
                                         const MassRatio& mu,
                                         const PropagationSettings& settings = {});

}  // namespace patrol::dynamics
