// SPDX-License-Identifier: Apache-2.0
//
// emct: electromagnetic coherence-time analysis for mobile channels

#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

#include "emct/errors.hpp"

namespace emct {

/// UE kinematic state. The position lives in the z = 0 plane with x_u > 0
/// (in front of the array broadside). The heading is measured from the
/// y-axis, so the direction of motion is [sin(heading), cos(heading), 0].
/// A turn rate of exactly 0 encodes linear motion; otherwise the trajectory
/// is a circular arc with radius speed / turn_rate (sign = turn direction).
template <typename Scalar = double>
struct TrajectoryState {
  Eigen::Vector3<Scalar> position;
  Scalar speed;
  Scalar heading;
  Scalar turn_rate;

  TrajectoryState(const Eigen::Vector3<Scalar>& position_, Scalar speed_, Scalar heading_,
                  Scalar turn_rate_ = Scalar(0))
      : position(position_), speed(speed_), heading(heading_), turn_rate(turn_rate_) {
    if (position.z() != Scalar(0))
      throw std::invalid_argument("TrajectoryState: position must lie in the z = 0 plane");
    if (!(position.x() > Scalar(0)))
      throw invalid_scenario("TrajectoryState: x_u must be > 0 (UE in front of the array)");
    if (!(speed >= Scalar(0))) throw std::invalid_argument("TrajectoryState: speed must be >= 0");
    if (!std::isfinite(heading) || !std::isfinite(turn_rate))
      throw std::invalid_argument("TrajectoryState: heading/turn_rate must be finite");
  }

  [[nodiscard]] bool is_linear() const { return turn_rate == Scalar(0); }

  [[nodiscard]] Eigen::Vector3<Scalar> heading_vector() const {
    return {std::sin(heading), std::cos(heading), Scalar(0)};
  }

  /// rho = v / omega; only defined for turning motion.
  [[nodiscard]] Scalar turning_radius() const {
    if (is_linear()) throw std::invalid_argument("turning_radius: state has zero turn rate");
    return speed / turn_rate;
  }
};

using TrajectoryStated = TrajectoryState<double>;

/// Propagates the state by tau seconds along its arc (or line). The chord of a
/// circular arc of angle d = omega*tau has length 2*rho*sin(d/2) and points
/// along the mid-arc heading, which makes the step exact for any tau and
/// composable: advance(advance(s, a), b) == advance(s, a + b) up to rounding.
template <typename Scalar>
TrajectoryState<Scalar> advance(const TrajectoryState<Scalar>& s, Scalar tau) {
  if (!(tau >= Scalar(0))) throw std::invalid_argument("advance: tau must be >= 0");
  Scalar d_heading, chord;
  if (s.is_linear()) {
    d_heading = Scalar(0);
    chord = s.speed * tau;
  } else {
    d_heading = s.turn_rate * tau;
    chord = Scalar(2) * (s.speed / s.turn_rate) * std::sin(d_heading / Scalar(2));
  }
  const Scalar mid = s.heading + d_heading / Scalar(2);
  TrajectoryState<Scalar> out = s;
  out.position = s.position +
                 chord * Eigen::Vector3<Scalar>(std::sin(mid), std::cos(mid), Scalar(0));
  out.heading = s.heading + d_heading;
  if (!(out.position.x() > Scalar(0)))
    throw invalid_scenario("advance: UE crossed the array plane (x_u <= 0)");
  return out;
}

}  // namespace emct
