// SPDX-License-Identifier: Apache-2.0
//
// emct: electromagnetic coherence-time analysis for mobile channels

#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace emct {

/// Uniform linear array along the y-axis at height `height`: element m sits at
/// [0, delta_m * spacing, height] with delta_m = (2m - N + 1) / 2, so the array
/// is centered on the z-axis. Broadside is the +x direction. The wavenumber is
/// always derived from the wavelength, never stored.
template <typename Scalar = double>
struct ArrayConfig {
  int n_elements;
  Scalar spacing;     ///< inter-element spacing d [m]
  Scalar height;      ///< array height h_r [m]
  Scalar wavelength;  ///< carrier wavelength lambda [m]

  ArrayConfig(int n_elements_, Scalar spacing_, Scalar height_, Scalar wavelength_)
      : n_elements(n_elements_), spacing(spacing_), height(height_), wavelength(wavelength_) {
    if (n_elements < 1) throw std::invalid_argument("ArrayConfig: n_elements must be >= 1");
    if (!(spacing > Scalar(0))) throw std::invalid_argument("ArrayConfig: spacing must be > 0");
    if (!(height > Scalar(0))) throw std::invalid_argument("ArrayConfig: height must be > 0");
    if (!(wavelength > Scalar(0)))
      throw std::invalid_argument("ArrayConfig: wavelength must be > 0");
  }

  [[nodiscard]] Scalar wavenumber() const {
    return Scalar(2) * std::numbers::pi_v<Scalar> / wavelength;
  }

  /// delta_m, the signed element index offset from the array center.
  [[nodiscard]] Scalar element_offset(int m) const {
    check_index(m);
    return Scalar(2 * m - n_elements + 1) / Scalar(2);
  }

  [[nodiscard]] Eigen::Vector3<Scalar> element_position(int m) const {
    return {Scalar(0), element_offset(m) * spacing, height};
  }

 private:
  void check_index(int m) const {
    if (m < 0 || m >= n_elements)
      throw std::out_of_range("ArrayConfig: element index out of range");
  }
};

using ArrayConfigd = ArrayConfig<double>;

}  // namespace emct
