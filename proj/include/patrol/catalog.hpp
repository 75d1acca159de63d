#pragma once

// Periodic-orbit catalog: CSV ingestion with closure validation, and
// phase-fraction parameterization of states along an orbit.

#include "patrol/dynamics.hpp"
#include "patrol/types.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace patrol::catalog {

/// One catalog entry. `initial_state` propagated for one `period` must
/// return to itself within the loader's closure tolerance.
struct OrbitSpec {
  std::string id;
  std::string family;
  MassRatio mu;
  State initial_state;
  double period;
};

/// Uniform grid of L epochs t_0 .. t_{L-1} plus the terminal epoch t_L.
struct TimeGrid {
  double t_start = 0.0;
  double t_end = 1.0;
  int steps = 1;

  void validate() const {
    if (steps < 1) throw Error("time grid needs at least one step");
    if (!(t_end > t_start)) throw Error("time grid requires t_end > t_start");
  }
  double dt() const { return (t_end - t_start) / steps; }
  double epoch(int k) const { return t_start + k * dt(); }
};

/// Wraps a phase fraction into the canonical interval [0, 1).
double wrap_phase(double p);

struct LoadOptions {
  bool validate_closure = true;
  double closure_tol = 1e-6;
  dynamics::PropagationSettings propagation{};
};

/// Parses the catalog CSV (header `id,family,mu,x,y,z,vx,vy,vz,period`,
/// `#` comment lines permitted) and validates each orbit's closure.
std::vector<OrbitSpec> load_catalog(std::istream& source,
                                    const LoadOptions& options = {});

/// Convenience file overload.
std::vector<OrbitSpec> load_catalog_file(const std::string& path,
                                         const LoadOptions& options = {});

/// State on the orbit at the given fraction-of-period phase, advanced by
/// `epoch_offset` time units: propagate(initial_state, 0, phase*T + offset).
State phase_to_state(const OrbitSpec& orbit, double phase, double epoch_offset = 0.0,
                     const dynamics::PropagationSettings& settings = {});

/// States at every grid epoch (L+1 entries including the terminal one),
/// sampled by sequential propagation between adjacent epochs.
std::vector<State> sample_trajectory(const OrbitSpec& orbit, double phase,
                                     const TimeGrid& grid,
                                     const dynamics::PropagationSettings& settings = {});

}  // namespace patrol::catalog
