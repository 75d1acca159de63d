#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>

namespace patrol {

using Vec3 = Eigen::Vector3d;
using Vec6 = Eigen::Matrix<double, 6, 1>;
using Mat3 = Eigen::Matrix3d;
using Mat6 = Eigen::Matrix<double, 6, 6>;
using Mat36 = Eigen::Matrix<double, 3, 6>;

/// Rotating-frame state: position (x,y,z) then velocity (vx,vy,vz),
/// nondimensional canonical units throughout.
using State = Vec6;

/// State transition matrix between two epochs along a trajectory.
using Stm = Mat6;

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class SingularPositionError : public Error {
 public:
  explicit SingularPositionError(const std::string& msg) : Error(msg) {}
};

class PropagationError : public Error {
 public:
  explicit PropagationError(const std::string& msg) : Error(msg) {}
};

class CloseApproachError : public Error {
 public:
  CloseApproachError(const std::string& msg, int observer, int target, int step)
      : Error(msg), observer(observer), target(target), step(step) {}
  int observer;
  int target;
  int step;
};

class ParseError : public Error {
 public:
  explicit ParseError(const std::string& msg) : Error(msg) {}
};

/// Mass ratio m2/(m1+m2) of the two primaries. Valid range (0, 0.5].
class MassRatio {
 public:
  explicit MassRatio(double mu) : mu_(mu) {
    if (!(mu > 0.0) || !(mu <= 0.5)) {
      throw Error("mass ratio must lie in (0, 0.5], got " + std::to_string(mu));
    }
  }
  double value() const { return mu_; }

 private:
  double mu_;
};

}  // namespace patrol
