// SPDX-License-Identifier: Apache-2.0
//
// emct: electromagnetic coherence-time analysis for mobile channels

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "emct/errors.hpp"
#include "emct/lambert_w.hpp"

namespace emct {

/// Inputs of the turning-scenario analysis. Valid in the small-radius regime
/// rho << r_h(0), where the UE position is effectively frozen over the
/// correlation horizon and only the heading rotates.
template <typename Scalar = double>
struct TurningScenario {
  Scalar turning_radius;    ///< rho > 0
  Scalar speed;             ///< v
  Scalar threshold;         ///< zeta in (0, 1)
  Scalar initial_azimuth;   ///< phi(0)
  Scalar horizontal_range;  ///< r_h(0)
  Scalar array_height;      ///< h_r

  TurningScenario(Scalar turning_radius_, Scalar speed_, Scalar threshold_,
                  Scalar initial_azimuth_, Scalar horizontal_range_, Scalar array_height_)
      : turning_radius(turning_radius_),
        speed(speed_),
        threshold(threshold_),
        initial_azimuth(initial_azimuth_),
        horizontal_range(horizontal_range_),
        array_height(array_height_) {
    if (!(turning_radius > Scalar(0)))
      throw std::invalid_argument("TurningScenario: turning_radius must be > 0");
    if (!(speed >= Scalar(0))) throw std::invalid_argument("TurningScenario: speed must be >= 0");
    if (!(threshold > Scalar(0) && threshold < Scalar(1)))
      throw std::invalid_argument("TurningScenario: threshold must be in (0, 1)");
    if (!(horizontal_range > Scalar(0)))
      throw std::invalid_argument("TurningScenario: horizontal_range must be > 0");
    if (!(array_height > Scalar(0)))
      throw std::invalid_argument("TurningScenario: array_height must be > 0");
  }

  /// True when rho is small against r_h(0); callers warn otherwise.
  [[nodiscard]] bool small_radius_regime() const {
    return turning_radius * Scalar(10) <= horizontal_range;
  }
};

/// Inputs of the linear-motion analysis.
template <typename Scalar = double>
struct LinearScenario {
  Scalar horizontal_range;   ///< r_h(0)
  Scalar speed;              ///< v
  Scalar threshold;          ///< zeta in (0, 1)
  int n_elements;            ///< N_r
  Scalar initial_azimuth;    ///< phi(0)
  Scalar initial_elevation;  ///< theta(0), from the z-axis
  Scalar psi_angle;          ///< psi: angle between the reversed heading and the UE->origin ray

  LinearScenario(Scalar horizontal_range_, Scalar speed_, Scalar threshold_, int n_elements_,
                 Scalar initial_azimuth_, Scalar initial_elevation_, Scalar psi_angle_)
      : horizontal_range(horizontal_range_),
        speed(speed_),
        threshold(threshold_),
        n_elements(n_elements_),
        initial_azimuth(initial_azimuth_),
        initial_elevation(initial_elevation_),
        psi_angle(psi_angle_) {
    if (!(horizontal_range > Scalar(0)))
      throw std::invalid_argument("LinearScenario: horizontal_range must be > 0");
    if (!(speed >= Scalar(0))) throw std::invalid_argument("LinearScenario: speed must be >= 0");
    if (!(threshold > Scalar(0) && threshold < Scalar(1)))
      throw std::invalid_argument("LinearScenario: threshold must be in (0, 1)");
    if (n_elements < 1) throw std::invalid_argument("LinearScenario: n_elements must be >= 1");
    if (!(std::sin(initial_elevation) > Scalar(0)))
      throw std::invalid_argument("LinearScenario: sin(initial_elevation) must be > 0");
  }
};

namespace detail {

template <typename Scalar, typename F>
Scalar adaptive_simpson_rec(const F& f, Scalar a, Scalar b, Scalar fa, Scalar fm, Scalar fb,
                            Scalar whole, Scalar tol, int depth) {
  const Scalar m = (a + b) / Scalar(2);
  const Scalar lm = (a + m) / Scalar(2), rm = (m + b) / Scalar(2);
  const Scalar flm = f(lm), frm = f(rm);
  const Scalar h = b - a;
  const Scalar left = h / Scalar(12) * (fa + Scalar(4) * flm + fm);
  const Scalar right = h / Scalar(12) * (fm + Scalar(4) * frm + fb);
  const Scalar delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= Scalar(15) * tol)
    return left + right + delta / Scalar(15);
  return adaptive_simpson_rec(f, a, m, fa, flm, fm, left, tol / Scalar(2), depth - 1) +
         adaptive_simpson_rec(f, m, b, fm, frm, fb, right, tol / Scalar(2), depth - 1);
}

template <typename Scalar, typename F>
Scalar adaptive_simpson(const F& f, Scalar a, Scalar b, Scalar tol, int max_depth = 40) {
  const Scalar m = (a + b) / Scalar(2);
  const Scalar fa = f(a), fm = f(m), fb = f(b);
  const Scalar whole = (b - a) / Scalar(6) * (fa + Scalar(4) * fm + fb);
  return adaptive_simpson_rec(f, a, b, fa, fm, fb, whole, tol, max_depth);
}

}  // namespace detail

/// Closed-form coherence time for the turning scenario:
///   T = -pi (1 - zeta) rho / (2 v W_{-1}(-(1 - zeta) pi / 4)).
/// Proportional to rho / v and independent of the distance. Defined only
/// while -(1-zeta) pi / 4 stays inside the W_{-1} domain, i.e. for
/// zeta >= 1 - 4/(pi e) ~ 0.5316; smaller thresholds need the numeric solver.
template <typename Scalar>
Scalar coherence_time_turning(const TurningScenario<Scalar>& s) {
  if (s.speed == Scalar(0))
    throw unbounded_coherence("coherence_time_turning: zero speed, channel never decorrelates");
  const Scalar pi = std::numbers::pi_v<Scalar>;
  const Scalar x = -(Scalar(1) - s.threshold) * pi / Scalar(4);
  const Scalar branch_point = -std::exp(Scalar(-1));
  if (x < branch_point)
    throw invalid_scenario(
        "coherence_time_turning: threshold below 1 - 4/(pi e) ~ 0.5316 is outside the "
        "closed form's domain; use the numeric solver");
  return -pi * (Scalar(1) - s.threshold) * s.turning_radius /
         (Scalar(2) * s.speed * lambert_w_minus1(x));
}

enum class TurningForm {
  full_log,   ///< keeps the 2 h_r^2 / r_h^2(0) term in the log
  simplified  ///< large-range limit 1 - (dv/pi) ln(4 / dv^2)
};

/// Analytic turning-scenario correlation at heading change dv = omega * tau.
/// Clamped to [0, 1]; dv = 0 returns the limit 1. Symmetric in the turn
/// direction, so the magnitude of dv is used.
template <typename Scalar>
Scalar correlation_turning_closed(Scalar d_heading, const TurningScenario<Scalar>& s,
                                  TurningForm form = TurningForm::full_log) {
  const Scalar dv = std::abs(d_heading);
  if (dv == Scalar(0)) return Scalar(1);
  const Scalar pi = std::numbers::pi_v<Scalar>;
  Scalar r;
  if (form == TurningForm::full_log) {
    const Scalar c = Scalar(1) + Scalar(2) * s.array_height * s.array_height /
                                     (s.horizontal_range * s.horizontal_range);
    r = Scalar(1) - dv / pi * std::log((c + std::cos(dv)) / (c - std::cos(dv)));
  } else {
    r = Scalar(1) - dv / pi * std::log(Scalar(4) / (dv * dv));
  }
  return std::clamp(r, Scalar(0), Scalar(1));
}

/// Boundaries alpha_k = k pi/2 - phi(0) - dv/2, k = 0..4, splitting one period
/// of the initial heading into the regions where the frozen-position amplitude
/// ratio is below / above one: A = [a0,a1] u [a2,a3], B = [a1,a2] u [a3,a4].
template <typename Scalar>
std::array<Scalar, 5> turning_regions(Scalar d_heading, Scalar initial_azimuth) {
  const Scalar pi = std::numbers::pi_v<Scalar>;
  std::array<Scalar, 5> alpha;
  for (int k = 0; k <= 4; ++k)
    alpha[static_cast<std::size_t>(k)] =
        Scalar(k) * pi / Scalar(2) - initial_azimuth - d_heading / Scalar(2);
  return alpha;
}

/// Frozen-position turning correlation by direct quadrature: the exact
/// (non-linearized) amplitude ratio min{beta(0),beta(tau)}/max{...} averaged
/// over a uniform initial heading. Integrated piecewise over the four smooth
/// sub-intervals between the region boundaries. This is the
/// "ignoring beam misalignment" reference curve.
template <typename Scalar>
Scalar correlation_turning_region_integral(Scalar d_heading, const TurningScenario<Scalar>& s,
                                           Scalar tol = Scalar(1e-10)) {
  const Scalar dv = std::abs(d_heading);
  if (dv == Scalar(0)) return Scalar(1);
  const Scalar pi = std::numbers::pi_v<Scalar>;
  const Scalar h2 = s.array_height * s.array_height;
  const Scalar rh2 = s.horizontal_range * s.horizontal_range;
  const Scalar phi0 = s.initial_azimuth;

  const auto ratio = [&](Scalar heading0) {
    const Scalar c0 = std::cos(heading0 + phi0);
    const Scalar c1 = std::cos(heading0 + dv + phi0);
    const Scalar den = h2 + rh2 * c0 * c0;
    const Scalar num = h2 + rh2 * c1 * c1;
    return std::sqrt(std::min(num, den) / std::max(num, den));
  };

  const auto alpha = turning_regions(dv, phi0);
  Scalar sum = Scalar(0);
  for (int i = 0; i < 4; ++i)
    sum += detail::adaptive_simpson(ratio, alpha[static_cast<std::size_t>(i)],
                                    alpha[static_cast<std::size_t>(i + 1)], tol);
  return std::clamp(sum / (Scalar(2) * pi), Scalar(0), Scalar(1));
}

/// Closed-form coherence time for linear motion:
///   T = r_h(0) / (v |sin(psi) cos(phi(0))|) * sqrt(2 ln(1/zeta) / (N^2 sin(theta(0)))).
/// Signals an unbounded coherence time when the motion produces no
/// first-order azimuth drift (sin(psi) cos(phi(0)) = 0).
template <typename Scalar>
Scalar coherence_time_linear(const LinearScenario<Scalar>& s) {
  if (s.speed == Scalar(0))
    throw unbounded_coherence("coherence_time_linear: zero speed, channel never decorrelates");
  const Scalar drift = std::abs(std::sin(s.psi_angle) * std::cos(s.initial_azimuth));
  if (drift < Scalar(1e-12))
    throw unbounded_coherence(
        "coherence_time_linear: sin(psi) cos(phi(0)) = 0, no first-order azimuth drift");
  const Scalar n = Scalar(s.n_elements);
  return s.horizontal_range / (s.speed * drift) *
         std::sqrt(Scalar(2) * std::log(Scalar(1) / s.threshold) /
                   (n * n * std::sin(s.initial_elevation)));
}

/// Worst-case-geometry lower bound: the linear closed form with the drift
/// factor at its maximum 1. Always <= coherence_time_linear where the latter
/// is defined.
template <typename Scalar>
Scalar coherence_time_linear_lower_bound(const LinearScenario<Scalar>& s) {
  if (s.speed == Scalar(0))
    throw unbounded_coherence(
        "coherence_time_linear_lower_bound: zero speed, channel never decorrelates");
  const Scalar n = Scalar(s.n_elements);
  return s.horizontal_range / s.speed *
         std::sqrt(Scalar(2) * std::log(Scalar(1) / s.threshold) /
                   (n * n * std::sin(s.initial_elevation)));
}

/// Gaussian large-range approximation of the linear-motion correlation:
///   R(tau) ~ exp(-(N^2/2) sin(theta(0)) (sin(psi) cos(phi(0)) v tau / r_h(0))^2).
/// Solving R = zeta reproduces coherence_time_linear algebraically.
template <typename Scalar>
Scalar correlation_linear_gaussian(Scalar tau, const LinearScenario<Scalar>& s) {
  const Scalar n = Scalar(s.n_elements);
  const Scalar a = std::sin(s.psi_angle) * std::cos(s.initial_azimuth) * s.speed * tau /
                   s.horizontal_range;
  return std::exp(-n * n / Scalar(2) * std::sin(s.initial_elevation) * a * a);
}

using TurningScenariod = TurningScenario<double>;
using LinearScenariod = LinearScenario<double>;

}  // namespace emct
