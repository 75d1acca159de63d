#include "patrol/catalog.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>

namespace patrol::catalog {

namespace {

constexpr const char* kHeader = "id,family,mu,x,y,z,vx,vy,vz,period";

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double parse_double(const std::string& s, int row, const std::string& what) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos != s.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw ParseError("catalog row " + std::to_string(row) + ": bad " + what +
                     " value '" + s + "'");
  }
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

double wrap_phase(double p) {
  double w = p - std::floor(p);
  if (w >= 1.0) w = 0.0;  // guards p = -eps rounding up
  return w;
}

std::vector<OrbitSpec> load_catalog(std::istream& source, const LoadOptions& options) {
  std::string line;
  int row = 0;
  bool header_seen = false;
  std::vector<OrbitSpec> orbits;

  while (std::getline(source, line)) {
    ++row;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    if (!header_seen) {
      if (t != kHeader) {
        throw ParseError("catalog row " + std::to_string(row) +
                         ": expected header '" + std::string(kHeader) + "'");
      }
      header_seen = true;
      continue;
    }
    const auto fields = split_fields(t);
    if (fields.size() != 10) {
      throw ParseError("catalog row " + std::to_string(row) + ": expected 10 fields, got " +
                       std::to_string(fields.size()));
    }
    const std::string id = trim(fields[0]);
    const std::string family = trim(fields[1]);
    if (id.empty()) throw ParseError("catalog row " + std::to_string(row) + ": empty id");
    double mu_value = parse_double(fields[2], row, "mu");
    State s;
    for (int i = 0; i < 6; ++i) s[i] = parse_double(fields[3 + i], row, "state");
    const double period = parse_double(fields[9], row, "period");
    if (!(period > 0.0)) {
      throw ParseError("catalog row " + std::to_string(row) + ": period must be positive");
    }
    MassRatio mu(mu_value);
    if (options.validate_closure) {
      const State end = dynamics::propagate(s, 0.0, period, mu, options.propagation);
      const double miss = (end - s).cwiseAbs().maxCoeff();
      if (miss > options.closure_tol) {
        throw Error("orbit '" + id + "' fails closure: max component error " +
                    std::to_string(miss) + " after one period");
      }
    }
    orbits.push_back(OrbitSpec{id, family, mu, s, period});
  }
  if (!header_seen) throw ParseError("catalog: missing header line");
  return orbits;
}

std::vector<OrbitSpec> load_catalog_file(const std::string& path,
                                         const LoadOptions& options) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open catalog file '" + path + "'");
  return load_catalog(in, options);
}

State phase_to_state(const OrbitSpec& orbit, double phase, double epoch_offset,
                     const dynamics::PropagationSettings& settings) {
  const double p = wrap_phase(phase);
  return dynamics::propagate(orbit.initial_state, 0.0, p * orbit.period + epoch_offset,
                             orbit.mu, settings);
}

std::vector<State> sample_trajectory(const OrbitSpec& orbit, double phase,
                                     const TimeGrid& grid,
                                     const dynamics::PropagationSettings& settings) {
  grid.validate();
  std::vector<State> out;
  out.reserve(grid.steps + 1);
  State s = phase_to_state(orbit, phase, grid.t_start, settings);
  out.push_back(s);
  for (int k = 1; k <= grid.steps; ++k) {
    s = dynamics::propagate(s, grid.epoch(k - 1), grid.epoch(k), orbit.mu, settings);
    out.push_back(s);
  }
  return out;
}

}  // namespace patrol::catalog
