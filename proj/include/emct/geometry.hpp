// SPDX-License-Identifier: Apache-2.0
//
// emct: electromagnetic coherence-time analysis for mobile channels

#pragma once

#include <Eigen/Dense>
#include <cmath>

#include "emct/array_config.hpp"
#include "emct/trajectory.hpp"

namespace emct {

/// Instantaneous geometry between the array center and the UE.
/// Conventions: azimuth phi = atan2(y_u, x_u) (zero at broadside), elevation
/// theta measured from the z-axis so sin(theta) = r_h / r. With these choices
/// Psi = sin(phi) sin(theta) = y_u / r and the per-element distance expansion
/// below holds verbatim.
template <typename Scalar = double>
struct GeometrySnapshot {
  Scalar range;             ///< r, array center to UE
  Scalar horizontal_range;  ///< r_h
  Scalar azimuth;           ///< phi
  Scalar elevation;         ///< theta
  Scalar psi_product;       ///< Psi = sin(phi) sin(theta)
};

template <typename Scalar>
GeometrySnapshot<Scalar> snapshot(const TrajectoryState<Scalar>& state,
                                  const ArrayConfig<Scalar>& array) {
  const Scalar x = state.position.x();
  const Scalar y = state.position.y();
  if (!(x > Scalar(0))) throw invalid_scenario("snapshot: x_u must be > 0");
  GeometrySnapshot<Scalar> g;
  g.horizontal_range = std::hypot(x, y);
  g.range = std::hypot(g.horizontal_range, array.height);
  g.azimuth = std::atan2(y, x);
  g.elevation = std::atan2(g.horizontal_range, array.height);
  g.psi_product = y / g.range;  // == sin(azimuth) * sin(elevation)
  return g;
}

/// Distance from the UE to element m:
/// r_m = sqrt(r^2 + delta_m^2 d^2 - 2 r delta_m d Psi).
/// Equals the Euclidean distance ||element_position(m) - position|| exactly
/// (up to rounding); the geometry tests pin that equivalence.
template <typename Scalar>
Scalar element_distance(const GeometrySnapshot<Scalar>& g, const ArrayConfig<Scalar>& array,
                        int m) {
  const Scalar od = array.element_offset(m) * array.spacing;  // throws on a bad index
  return std::sqrt(g.range * g.range + od * od -
                   Scalar(2) * g.range * od * g.psi_product);
}

/// Motion-induced angle changes over a delay tau.
///
/// psi_angle is the signed angle at the displaced point P_B between the ray
/// toward the origin and the ray back toward the start P_A, positive when the
/// motion increases the azimuth. For tau = 0 the chord direction degenerates
/// and the mid-arc heading is used, which is the continuous limit.
/// d_azimuth / d_elevation are the first-order estimates
///    d_azimuth   ~ D sin(psi) / r_h(0)
///    d_elevation ~ D cos(psi) h_r / (r(0) r(tau))
/// with chord length D; the exact snapshot differences are carried alongside
/// so callers can bound the approximation error.
template <typename Scalar = double>
struct AngleDeltas {
  Scalar d_heading;          ///< omega * tau
  Scalar displacement;       ///< chord D: 2 rho sin(d_heading/2), or v*tau when linear
  Scalar d_azimuth;          ///< first-order azimuth drift (signed)
  Scalar d_elevation;        ///< first-order elevation drift (signed)
  Scalar psi_angle;          ///< signed angle O-P_B-P_A, in (-pi, pi]
  Scalar exact_d_azimuth;    ///< phi(tau) - phi(0)
  Scalar exact_d_elevation;  ///< theta(tau) - theta(0)
};

template <typename Scalar>
AngleDeltas<Scalar> angle_deltas(const TrajectoryState<Scalar>& initial,
                                 const ArrayConfig<Scalar>& array, Scalar tau) {
  const TrajectoryState<Scalar> moved = advance(initial, tau);
  const GeometrySnapshot<Scalar> g0 = snapshot(initial, array);
  const GeometrySnapshot<Scalar> g1 = snapshot(moved, array);

  AngleDeltas<Scalar> d;
  d.d_heading = moved.heading - initial.heading;
  d.displacement = initial.is_linear()
                       ? initial.speed * tau
                       : Scalar(2) * initial.turning_radius() *
                             std::sin(d.d_heading / Scalar(2));

  // Angle at P_B from the ray to O to the ray to P_A. The chord P_A -> P_B
  // points along the mid-arc heading, so the reverse ray is its negation;
  // this form stays defined as tau -> 0.
  const Scalar mid = initial.heading + d.d_heading / Scalar(2);
  const Eigen::Vector2<Scalar> to_origin(-moved.position.x(), -moved.position.y());
  const Eigen::Vector2<Scalar> to_start(-std::sin(mid), -std::cos(mid));
  d.psi_angle = std::atan2(to_origin.x() * to_start.y() - to_origin.y() * to_start.x(),
                           to_origin.dot(to_start));

  d.d_azimuth = d.displacement * std::sin(d.psi_angle) / g0.horizontal_range;
  d.d_elevation = d.displacement * std::cos(d.psi_angle) * array.height /
                  (g0.range * g1.range);
  d.exact_d_azimuth = g1.azimuth - g0.azimuth;
  d.exact_d_elevation = g1.elevation - g0.elevation;
  return d;
}

}  // namespace emct
