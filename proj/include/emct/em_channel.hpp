// SPDX-License-Identifier: Apache-2.0
//
// emct: electromagnetic coherence-time analysis for mobile channels

#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <numbers>

#include "emct/array_config.hpp"
#include "emct/geometry.hpp"
#include "emct/trajectory.hpp"

namespace emct {

/// The three loss factors of the normalized channel amplitude, evaluated at
/// the array center (element-to-element amplitude variation is neglected).
/// beta^2 = fspl * polarization * aperture. The wavelength cancels against
/// the isotropic effective area, so none of the factors depends on it.
template <typename Scalar = double>
struct AmplitudeFactors {
  Scalar fspl;          ///< 1 / (4 pi r^2)
  Scalar polarization;  ///< (h_r^2 + r_h^2 cos^2(heading + azimuth)) / r^2
  Scalar aperture;      ///< x_u / r

  [[nodiscard]] Scalar beta_squared() const { return fspl * polarization * aperture; }
  [[nodiscard]] Scalar beta() const { return std::sqrt(beta_squared()); }
};

template <typename Scalar>
AmplitudeFactors<Scalar> amplitude_factors(const TrajectoryState<Scalar>& state,
                                           const GeometrySnapshot<Scalar>& g,
                                           const ArrayConfig<Scalar>& array) {
  const Scalar r2 = g.range * g.range;
  const Scalar c = std::cos(state.heading + g.azimuth);
  AmplitudeFactors<Scalar> f;
  f.fspl = Scalar(1) / (Scalar(4) * std::numbers::pi_v<Scalar> * r2);
  f.polarization =
      (array.height * array.height + g.horizontal_range * g.horizontal_range * c * c) / r2;
  f.aperture = state.position.x() / g.range;
  return f;
}

template <typename Scalar>
AmplitudeFactors<Scalar> amplitude_factors(const TrajectoryState<Scalar>& state,
                                           const ArrayConfig<Scalar>& array) {
  return amplitude_factors(state, snapshot(state, array), array);
}

/// Normalized channel amplitude beta (common across elements).
template <typename Scalar>
Scalar amplitude(const TrajectoryState<Scalar>& state, const ArrayConfig<Scalar>& array) {
  return amplitude_factors(state, array).beta();
}

/// Steering-vector phase model. `fresnel` keeps the quadratic range term of
/// the second-order distance expansion; `far_field` drops it.
enum class SteeringModel { fresnel, far_field };

/// Phase of steering entry n:
///   -k * (delta_n d Psi - delta_n^2 d^2 (1 - Psi^2) / (2 r)).
/// This is exactly the second-order expansion of k*(r_n - r), so the entry
/// times e^{jkr} reproduces e^{jk r_n} to that order.
template <typename Scalar>
Scalar steering_phase(const GeometrySnapshot<Scalar>& g, const ArrayConfig<Scalar>& array, int n,
                      SteeringModel model = SteeringModel::fresnel) {
  const Scalar od = array.element_offset(n) * array.spacing;
  Scalar arg = od * g.psi_product;
  if (model == SteeringModel::fresnel)
    arg -= od * od * (Scalar(1) - g.psi_product * g.psi_product) / (Scalar(2) * g.range);
  return -array.wavenumber() * arg;
}

template <typename Scalar>
Eigen::VectorX<std::complex<Scalar>> steering_vector(const GeometrySnapshot<Scalar>& g,
                                                     const ArrayConfig<Scalar>& array,
                                                     SteeringModel model = SteeringModel::fresnel) {
  Eigen::VectorX<std::complex<Scalar>> a(array.n_elements);
  for (int n = 0; n < array.n_elements; ++n) {
    const Scalar p = steering_phase(g, array, n, model);
    a[n] = {std::cos(p), std::sin(p)};
  }
  return a;
}

/// Channel vector h = beta * a_r * e^{jkr}: a common amplitude times
/// unit-modulus phasors, so ||h|| = beta * sqrt(N).
template <typename Scalar = double>
struct ChannelVector {
  Scalar amplitude;                              ///< beta
  Eigen::VectorX<std::complex<Scalar>> phasors;  ///< steering entries times e^{jkr}

  [[nodiscard]] Eigen::VectorX<std::complex<Scalar>> elements() const {
    return amplitude * phasors;
  }
  [[nodiscard]] Scalar norm() const {
    return amplitude * std::sqrt(Scalar(phasors.size()));
  }
};

template <typename Scalar>
ChannelVector<Scalar> channel(const TrajectoryState<Scalar>& state,
                              const ArrayConfig<Scalar>& array,
                              SteeringModel model = SteeringModel::fresnel) {
  const GeometrySnapshot<Scalar> g = snapshot(state, array);
  ChannelVector<Scalar> h;
  h.amplitude = amplitude_factors(state, g, array).beta();
  const Scalar kr = array.wavenumber() * g.range;
  h.phasors = steering_vector(g, array, model) * std::complex<Scalar>(std::cos(kr), std::sin(kr));
  return h;
}

}  // namespace emct
