#pragma once

// Single-shooting differential correction for planar periodic orbits that
// are symmetric about the x-axis (Lyapunov orbits, DROs). Fixture tooling
// for building catalog entries; not part of the optimization pipeline.

#include "patrol/dynamics.hpp"
#include "patrol/types.hpp"

namespace patrol::corrector {

/// x-coordinate of a collinear equilibrium: root of dU/dx on the x-axis.
/// `which` is 1 (between the primaries), 2 (beyond the smaller primary),
/// or 3 (beyond the larger primary).
double collinear_point_x(const MassRatio& mu, int which);

struct CorrectionResult {
  State initial_state;   // corrected (x0, 0, 0, 0, vy0, 0)
  double period;
  int iterations;
  double residual;       // |vx| at the half-period crossing
};

/// Corrects the y-velocity of a perpendicular x-axis crossing state
/// (x0, 0, 0, 0, vy0, 0) until the next crossing is again perpendicular,
/// which closes the orbit by mirror symmetry.
CorrectionResult correct_planar_symmetric(
    const State& guess, const MassRatio& mu,
    const dynamics::PropagationSettings& settings = {}, int max_iterations = 60,
    double tolerance = 1e-12);

/// Linearized Lyapunov-orbit guess of x-amplitude `amplitude` about the
/// collinear point `which`, ready for correct_planar_symmetric.
State lyapunov_guess(const MassRatio& mu, int which, double amplitude);

/// Planar distant-retrograde-orbit guess of radius `radius` about the
/// smaller primary.
State dro_guess(const MassRatio& mu, double radius);

}  // namespace patrol::corrector
