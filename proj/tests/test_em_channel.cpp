// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <complex>
#include <random>

#include "doctest.h"
#include "emct/em_channel.hpp"
#include "oracles.hpp"

using emct::ArrayConfig;
using emct::SteeringModel;
using emct::TrajectoryState;

namespace {
const ArrayConfig<double> kArray(64, 0.0625, 3.0, 0.125);

TrajectoryState<double> state(double x, double y, double v, double heading, double omega = 0.0) {
  return TrajectoryState<double>({x, y, 0.0}, v, heading, omega);
}
}  // namespace

TEST_CASE("amplitude factors match a direct evaluation") {
  const auto s = state(100, 0, 1, 0);
  const auto f = emct::amplitude_factors(s, kArray);
  CHECK(f.fspl == doctest::Approx(1.0 / (4 * oracles::kPi * 10009.0)).epsilon(1e-12));
  CHECK(f.polarization == doctest::Approx((9.0 + 10000.0) / 10009.0).epsilon(1e-12));
  CHECK(f.aperture == doctest::Approx(100.0 / std::sqrt(10009.0)).epsilon(1e-12));
  CHECK(f.beta_squared() ==
        doctest::Approx(oracles::beta_squared({100, 0}, 0, 3.0)).epsilon(1e-12));

  // cross-polarized null: heading + azimuth = pi/2 leaves only the height term
  const auto null = emct::amplitude_factors(state(100, 0, 1, oracles::kPi / 2), kArray);
  CHECK(null.polarization == doctest::Approx(9.0 / 10009.0).epsilon(1e-12));

  // inverse-square law of the free-space factor
  const auto near = emct::amplitude_factors(state(50, 0, 1, 0.3), kArray);
  const auto far = emct::amplitude_factors(state(100, 0, 1, 0.3), kArray);
  CHECK(near.fspl / far.fspl == doctest::Approx(10009.0 / 2509.0).epsilon(1e-12));
}

TEST_CASE("amplitude is wavelength-free, positive, and pi-periodic in heading") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 40; ++i) {
    const double x = 5 + u(rng) * 300, y = (u(rng) - 0.5) * 300, th = u(rng) * 2 * oracles::kPi;
    const auto s = state(x, y, 1, th);
    const auto f = emct::amplitude_factors(s, kArray);
    CHECK(f.beta() > 0.0);

    const ArrayConfig<double> other(64, 0.0625, 3.0, 0.007);  // different carrier
    const auto g = emct::amplitude_factors(s, other);
    CHECK(f.fspl == g.fspl);
    CHECK(f.polarization == g.polarization);
    CHECK(f.aperture == g.aperture);

    const auto flipped = emct::amplitude_factors(state(x, y, 1, th + oracles::kPi), kArray);
    CHECK(f.polarization == doctest::Approx(flipped.polarization).epsilon(1e-12));

    // reflection across the broadside plane with the matching heading flip
    const auto mirrored = emct::amplitude_factors(state(x, -y, 1, -th), kArray);
    CHECK(mirrored.beta_squared() == doctest::Approx(f.beta_squared()).epsilon(1e-12));

    // continuity: a 1e-6 nudge in any coordinate moves beta by < 1e-3 relative
    const double b = emct::amplitude(s, kArray);
    CHECK(emct::amplitude(state(x + 1e-6, y, 1, th), kArray) ==
          doctest::Approx(b).epsilon(1e-3));
    CHECK(emct::amplitude(state(x, y + 1e-6, 1, th), kArray) ==
          doctest::Approx(b).epsilon(1e-3));
    CHECK(emct::amplitude(state(x, y, 1, th + 1e-6), kArray) ==
          doctest::Approx(b).epsilon(1e-3));
  }
}

TEST_CASE("steering vector: trivial geometries") {
  // broadside, far field: all phases vanish
  const auto g = emct::snapshot(state(100, 0, 1, 0), kArray);
  const auto a = emct::steering_vector(g, kArray, SteeringModel::far_field);
  for (int n = 0; n < kArray.n_elements; ++n) {
    CHECK(a[n].real() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(a[n].imag() == doctest::Approx(0.0).epsilon(1e-15));
  }

  const ArrayConfig<double> one(1, 0.0625, 3.0, 0.125);
  const auto a1 = emct::steering_vector(emct::snapshot(state(70, 30, 1, 0), one), one);
  CHECK(a1.size() == 1);
  CHECK(std::abs(a1[0] - std::complex<double>(1, 0)) < 1e-15);
}

TEST_CASE("steering entries match the direct exponent") {
  const ArrayConfig<double> four(4, 0.0625, 3.0, 0.125);
  // geometry with Psi = 0.5 at range 100
  emct::GeometrySnapshot<double> g;
  g.range = 100.0;
  g.horizontal_range = std::sqrt(100.0 * 100.0 - 9.0);
  g.psi_product = 0.5;
  g.azimuth = std::asin(0.5 * g.range / g.horizontal_range);
  g.elevation = std::atan2(g.horizontal_range, 3.0);
  for (bool fresnel : {true, false}) {
    const auto a = emct::steering_vector(g, four,
                                         fresnel ? SteeringModel::fresnel
                                                 : SteeringModel::far_field);
    for (int n = 0; n < 4; ++n) {
      const auto want = oracles::steering_entry(0.5, 100.0, 0.125, 0.0625, n, 4, fresnel);
      CHECK(std::abs(a[n] - want) < 1e-12);
      CHECK(std::abs(std::abs(a[n]) - 1.0) < 1e-15);
    }
  }

  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 40; ++i) {
    const int n_el = 1 + int(u(rng) * 7);
    const ArrayConfig<double> array(n_el, 0.02 + u(rng) * 0.1, 3.0, 0.05 + u(rng) * 0.2);
    const auto s = state(10 + u(rng) * 200, (u(rng) - 0.5) * 150, 1, 0);
    const auto gs = emct::snapshot(s, array);
    const auto a = emct::steering_vector(gs, array);
    for (int n = 0; n < n_el; ++n) {
      const auto want = oracles::steering_entry(gs.psi_product, gs.range, array.wavelength,
                                                array.spacing, n, n_el, true);
      CHECK(std::abs(a[n] - want) < 1e-12);
    }
  }
}

TEST_CASE("Fresnel steering reproduces exact element phases to second order") {
  // entry * e^{jkr} vs e^{jk r_n} with r_n the exact element distance; the
  // discrepancy is the third-order remainder of the expansion, so it must be
  // small at 100 m and shrink ~100x when the range grows 10x
  const auto mismatch = [&](double range) {
    const auto s = state(range, range / 5.0, 1, 0);
    const auto g = emct::snapshot(s, kArray);
    const double k = kArray.wavenumber();
    const auto a = emct::steering_vector(g, kArray);
    double worst = 0;
    for (int n = 0; n < kArray.n_elements; ++n) {
      const double rn = emct::element_distance(g, kArray, n);
      const std::complex<double> exact{std::cos(k * rn), std::sin(k * rn)};
      const std::complex<double> kr{std::cos(k * g.range), std::sin(k * g.range)};
      worst = std::max(worst, std::abs(a[n] * kr - exact));
    }
    return worst;
  };
  const double at100 = mismatch(100.0);
  const double at1000 = mismatch(1000.0);
  CHECK(at100 < 5e-3);
  CHECK(at1000 < at100 / 50.0);

  // the far-field variant must be visibly worse than Fresnel in the near field
  const auto s = state(30, 6, 1, 0);
  const auto g = emct::snapshot(s, kArray);
  const double k = kArray.wavenumber();
  const auto fresnel = emct::steering_vector(g, kArray);
  const auto far = emct::steering_vector(g, kArray, SteeringModel::far_field);
  double worst_far = 0, worst_fresnel = 0;
  for (int n = 0; n < kArray.n_elements; ++n) {
    const double rn = emct::element_distance(g, kArray, n);
    const std::complex<double> exact{std::cos(k * rn), std::sin(k * rn)};
    const std::complex<double> kr{std::cos(k * g.range), std::sin(k * g.range)};
    worst_far = std::max(worst_far, std::abs(far[n] * kr - exact));
    worst_fresnel = std::max(worst_fresnel, std::abs(fresnel[n] * kr - exact));
  }
  CHECK(worst_fresnel < worst_far / 10.0);
}

TEST_CASE("channel vector assembles amplitude, steering and global phase") {
  const ArrayConfig<double> one(1, 0.0625, 3.0, 0.125);
  const auto s = state(80, -15, 1, 0.4);
  const auto h1 = emct::channel(s, one, SteeringModel::far_field);
  const auto g = emct::snapshot(s, one);
  const double kr = one.wavenumber() * g.range;
  CHECK(std::abs(h1.elements()[0] -
                 h1.amplitude * std::complex<double>(std::cos(kr), std::sin(kr))) < 1e-15);

  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 20; ++i) {
    const auto sr = state(10 + u(rng) * 200, (u(rng) - 0.5) * 100, 1, u(rng) * 6.28);
    const auto h = emct::channel(sr, kArray);
    CHECK(h.norm() == doctest::Approx(h.amplitude * 8.0).epsilon(1e-12));
    for (int n = 0; n < kArray.n_elements; ++n)
      CHECK(std::abs(h.elements()[n]) == doctest::Approx(h.amplitude).epsilon(1e-12));
    // self inner product: |h^H h| / ||h||^2 == 1
    const auto e = h.elements();
    std::complex<double> self{0, 0};
    for (int n = 0; n < e.size(); ++n) self += std::conj(e[n]) * e[n];
    CHECK(std::abs(self) / (h.norm() * h.norm()) == doctest::Approx(1.0).epsilon(1e-12));
  }
}
