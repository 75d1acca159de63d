// Regenerates data/catalog.csv: corrects planar Lyapunov and DRO members by
// natural-parameter continuation and reports pairwise curve separations so
// scenario geometry (intersecting vs clear) can be chosen deliberately.

#include "patrol/catalog.hpp"
#include "patrol/corrector.hpp"
#include "patrol/dynamics.hpp"

#include <cstdio>
#include <string>
#include <vector>

using namespace patrol;

namespace {

struct Member {
  std::string id;
  std::string family;
  State state;
  double period;
};

State continued_lyapunov(const MassRatio& mu, int which, double amplitude, int steps) {
  const double xl = corrector::collinear_point_x(mu, which);
  const double da = amplitude / steps;
  // slope of the linearized family, used until a secant is available
  double slope = corrector::lyapunov_guess(mu, which, 1.0)[4];
  double prev_amp = 0.0, prev_vy = 0.0;
  State member = State::Zero();
  for (int s = 1; s <= steps; ++s) {
    const double amp = da * s;
    State guess = State::Zero();
    guess[0] = xl - amp;
    guess[4] = prev_vy + slope * (amp - prev_amp);
    const auto r = corrector::correct_planar_symmetric(guess, mu);
    member = r.initial_state;
    if (s >= 1 && amp > prev_amp) slope = (member[4] - prev_vy) / (amp - prev_amp);
    prev_amp = amp;
    prev_vy = member[4];
  }
  return member;
}

std::vector<Vec3> curve_points(const Member& m, const MassRatio& mu, int n) {
  std::vector<Vec3> pts;
  pts.reserve(n);
  State s = m.state;
  for (int i = 0; i < n; ++i) {
    if (i > 0) s = dynamics::propagate(s, (i - 1) * m.period / n, i * m.period / n, mu);
    pts.push_back(s.head<3>());
  }
  return pts;
}

}  // namespace

int main() {
  const MassRatio mu(0.0121505856);
  std::vector<Member> members;

  const auto add = [&](const std::string& id, const std::string& family, State guess) {
    const auto r = corrector::correct_planar_symmetric(guess, mu);
    members.push_back({id, family, r.initial_state, r.period});
    // span + closure report
    State s = r.initial_state;
    double xmin = 1e9, xmax = -1e9, ymax = 0;
    for (int i = 1; i <= 400; ++i) {
      s = dynamics::propagate(s, (i - 1) * r.period / 400, i * r.period / 400, mu);
      xmin = std::min(xmin, s[0]);
      xmax = std::max(xmax, s[0]);
      ymax = std::max(ymax, std::abs(s[1]));
    }
    const State end = dynamics::propagate(r.initial_state, 0.0, r.period, mu);
    std::printf("%-10s T=%8.4f  x:[%.4f, %.4f]  |y|<=%.4f  closure=%.2e iters=%d\n",
                id.c_str(), r.period, xmin, xmax, ymax,
                (end - r.initial_state).cwiseAbs().maxCoeff(), r.iterations);
  };

  add("lyap_l1_a", "lyapunov", continued_lyapunov(mu, 1, 0.05, 5));
  add("lyap_l1_b", "lyapunov", continued_lyapunov(mu, 1, 0.08, 8));
  add("lyap_l2_a", "lyapunov", continued_lyapunov(mu, 2, 0.04, 8));
  add("lyap_l2_b", "lyapunov", continued_lyapunov(mu, 2, 0.06, 8));
  add("lyap_l2_c", "lyapunov", continued_lyapunov(mu, 2, 0.08, 8));
  add("dro_a", "dro", corrector::dro_guess(mu, 0.08));
  add("dro_b", "dro", corrector::dro_guess(mu, 0.16));

  // pairwise minimum curve separation (geometry sanity for scenarios)
  std::vector<std::vector<Vec3>> curves;
  for (const auto& m : members) curves.push_back(curve_points(m, mu, 600));
  std::printf("\nminimum curve separation:\n          ");
  for (const auto& m : members) std::printf("%10s", m.id.substr(0, 9).c_str());
  std::printf("\n");
  for (std::size_t a = 0; a < members.size(); ++a) {
    std::printf("%-10s", members[a].id.c_str());
    for (std::size_t b = 0; b < members.size(); ++b) {
      double dmin = 1e9;
      for (const auto& pa : curves[a])
        for (const auto& pb : curves[b]) dmin = std::min(dmin, (pa - pb).norm());
      std::printf("%10.4f", dmin);
    }
    std::printf("\n");
  }

  FILE* f = std::fopen("data/catalog.csv", "w");
  if (!f) {
    std::fprintf(stderr, "cannot open data/catalog.csv for writing\n");
    return 1;
  }
  std::fprintf(f, "# planar periodic orbits, Earth-Moon class mass ratio\n");
  std::fprintf(f, "id,family,mu,x,y,z,vx,vy,vz,period\n");
  for (const auto& m : members) {
    std::fprintf(f, "%s,%s,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                 m.id.c_str(), m.family.c_str(), mu.value(), m.state[0], m.state[1],
                 m.state[2], m.state[3], m.state[4], m.state[5], m.period);
  }
  std::fclose(f);
  std::printf("\nwrote data/catalog.csv (%zu orbits)\n", members.size());
  return 0;
}
