// SPDX-License-Identifier: Apache-2.0
//
// Test-only reference implementations. Everything here recomputes results
// through a DIFFERENT route than the library (direct vector norms, explicit
// per-element exponents, rotation about the arc center, plain bisection), so
// agreement is meaningful.

#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace oracles {

inline constexpr double kPi = std::numbers::pi_v<double>;

struct Vec2 {
  double x, y;
};

// Position after time tau on the circular arc, via rotation about the arc
// center (independent of the chord/mid-heading formula in the library).
inline Vec2 circle_position(Vec2 p0, double heading0, double speed, double omega, double tau) {
  if (omega == 0.0)
    return {p0.x + speed * tau * std::sin(heading0), p0.y + speed * tau * std::cos(heading0)};
  const double rho = speed / omega;
  const double cx = p0.x + rho * std::cos(heading0);
  const double cy = p0.y - rho * std::sin(heading0);
  const double h = heading0 + omega * tau;
  return {cx - rho * std::cos(h), cy + rho * std::sin(h)};
}

// Fixed-step RK4 integration of dr/dt = v [sin(heading0 + omega t), cos(...)].
inline Vec2 rk4_position(Vec2 p0, double heading0, double speed, double omega, double tau,
                         int steps) {
  const auto vel = [&](double t) {
    return Vec2{speed * std::sin(heading0 + omega * t), speed * std::cos(heading0 + omega * t)};
  };
  Vec2 p = p0;
  const double h = tau / steps;
  for (int i = 0; i < steps; ++i) {
    const double t = i * h;
    const Vec2 k1 = vel(t);
    const Vec2 k2 = vel(t + h / 2);
    const Vec2 k4 = vel(t + h);
    // k3 == k2 because the velocity depends on time only
    p.x += h / 6.0 * (k1.x + 4.0 * k2.x + k4.x);
    p.y += h / 6.0 * (k1.y + 4.0 * k2.y + k4.y);
  }
  return p;
}

// Channel amplitude squared per the printed loss-factor product, from raw
// coordinates.
inline double beta_squared(Vec2 pos, double heading, double array_height) {
  const double rh2 = pos.x * pos.x + pos.y * pos.y;
  const double r2 = rh2 + array_height * array_height;
  const double r = std::sqrt(r2);
  const double phi = std::atan2(pos.y, pos.x);
  const double c = std::cos(heading + phi);
  return (1.0 / (4.0 * kPi * r2)) * ((array_height * array_height + rh2 * c * c) / r2) *
         (pos.x / r);
}

// Steering entry from the printed exponent, one element at a time.
inline std::complex<double> steering_entry(double psi, double range, double wavelength,
                                           double spacing, int n, int n_elements,
                                           bool fresnel) {
  const double k = 2.0 * kPi / wavelength;
  const double delta = (2.0 * n - n_elements + 1) / 2.0;
  double arg = delta * spacing * psi;
  if (fresnel)
    arg -= delta * delta * spacing * spacing * (1.0 - psi * psi) / (2.0 * range);
  const double p = -k * arg;
  return {std::cos(p), std::sin(p)};
}

// Full independent single-realization correlation: builds both channel
// vectors entry by entry and normalizes per the definition.
inline double correlation_direct(Vec2 p0, double heading0, double speed, double omega, double tau,
                                 int n_elements, double spacing, double array_height,
                                 double wavelength, bool fresnel = true) {
  const Vec2 p1 = circle_position(p0, heading0, speed, omega, tau);
  const double h1 = heading0 + omega * tau;

  const auto geo = [&](Vec2 p) {
    const double rh = std::hypot(p.x, p.y);
    const double r = std::hypot(rh, array_height);
    return std::array<double, 2>{p.y / r, r};  // Psi, r
  };
  const auto [psi0, r0] = geo(p0);
  const auto [psi1, r1] = geo(p1);

  std::complex<double> inner{0.0, 0.0};
  for (int n = 0; n < n_elements; ++n) {
    const auto a0 = steering_entry(psi0, r0, wavelength, spacing, n, n_elements, fresnel);
    const auto a1 = steering_entry(psi1, r1, wavelength, spacing, n, n_elements, fresnel);
    inner += std::conj(a0) * a1;
  }
  const double beam = std::abs(inner) / n_elements;

  const double b0 = beta_squared(p0, heading0, array_height);
  const double b1 = beta_squared(p1, h1, array_height);
  return std::sqrt(std::min(b0, b1) / std::max(b0, b1)) * beam;
}

// Lambert W_{-1} by plain bisection of w e^w = x on [-50, -1].
inline double bisect_lambert_w_minus1(double x) {
  if (!(x >= -std::exp(-1.0) && x < 0)) throw std::invalid_argument("bisect_lambert: domain");
  const auto f = [&](double w) { return w * std::exp(w) - x; };
  double lo = -50.0, hi = -1.0;  // f(lo) > 0 >= f(hi)
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (f(mid) > 0)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

// First root of g(t) = 0 by bisection on a sign-changing bracket.
inline double bisect_root(const std::function<double(double)>& g, double lo, double hi,
                          double tol = 1e-14) {
  double glo = g(lo);
  if (glo == 0) return lo;
  for (int i = 0; i < 400 && hi - lo > tol; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double gm = g(mid);
    if ((glo > 0) == (gm > 0)) {
      lo = mid;
      glo = gm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace oracles
