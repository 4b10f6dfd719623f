// SPDX-License-Identifier: Apache-2.0
//
// emct: electromagnetic coherence-time analysis for mobile channels

#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "emct/em_channel.hpp"
#include "emct/errors.hpp"
#include "emct/geometry.hpp"
#include "emct/trajectory.hpp"

namespace emct {

enum class CorrelationVariant {
  exact,                    ///< amplitude ratio times steering inner product
  no_polarization,          ///< steering inner product only
  polar_only_closed_region  ///< frozen-position amplitude-only reference (quadrature, not MC)
};

constexpr const char* to_string(CorrelationVariant v) {
  switch (v) {
    case CorrelationVariant::exact: return "exact";
    case CorrelationVariant::no_polarization: return "no_polarization";
    case CorrelationVariant::polar_only_closed_region: return "polar_only_closed_region";
  }
  return "?";
}

/// Monte-Carlo plan: the initial heading of trial i is drawn uniformly on
/// [0, 2pi) from a counter-based stream, so a draw depends only on
/// (seed, trial index) and never on execution order. Identical
/// (seed, n_trials, grid) therefore produce bit-identical curves for any
/// number of workers.
struct TrialPlan {
  int n_trials;
  std::uint64_t seed;

  TrialPlan(int n_trials_, std::uint64_t seed_) : n_trials(n_trials_), seed(seed_) {
    if (n_trials < 1) throw std::invalid_argument("TrialPlan: n_trials must be >= 1");
  }
};

namespace detail {

// splitmix64 output function (Steele, Lea, Flood 2014); a bijective mix of a
// 64-bit counter. Stream i of a seed is mix(seed + (i+1)*golden_gamma).
inline std::uint64_t splitmix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

inline double uniform01(std::uint64_t seed, std::uint64_t index) {
  const std::uint64_t z = splitmix64(seed + (index + 1) * 0x9E3779B97F4A7C15ull);
  return static_cast<double>(z >> 11) * 0x1.0p-53;  // 53-bit mantissa in [0, 1)
}

}  // namespace detail

/// Initial heading drawn for a given trial; exposed so single-trial results
/// can be reproduced outside the Monte-Carlo loop.
inline double trial_heading(const TrialPlan& plan, int trial) {
  return 2.0 * std::numbers::pi_v<double> * detail::uniform01(plan.seed, std::uint64_t(trial));
}

struct CurveMeta {
  CorrelationVariant variant = CorrelationVariant::exact;
  int n_trials = 0;
  std::uint64_t seed = 0;
};

/// A sampled correlation curve on a strictly increasing delay grid.
struct CorrelationCurve {
  std::vector<double> taus;
  std::vector<double> values;
  CurveMeta meta;

  CorrelationCurve(std::vector<double> taus_, std::vector<double> values_, CurveMeta meta_)
      : taus(std::move(taus_)), values(std::move(values_)), meta(meta_) {
    if (taus.size() != values.size() || taus.empty())
      throw std::invalid_argument("CorrelationCurve: grid/value size mismatch");
    if (!(taus.front() >= 0))
      throw std::invalid_argument("CorrelationCurve: delays must be non-negative");
    for (std::size_t i = 1; i < taus.size(); ++i)
      if (!(taus[i] > taus[i - 1]))
        throw std::invalid_argument("CorrelationCurve: delay grid must be strictly increasing");
    for (double v : values)
      if (!(v >= 0.0 && v <= 1.0))
        throw std::invalid_argument("CorrelationCurve: values must lie in [0, 1]");
  }
};

namespace detail {

// Per-trial reusable pieces of the correlation integrand at tau = 0.
struct TrialStart {
  TrajectoryState<double> state;
  GeometrySnapshot<double> geo;
  double beta_sq;
};

inline TrialStart trial_start(const TrajectoryState<double>& s, const ArrayConfig<double>& array) {
  TrialStart t{s, snapshot(s, array), 0.0};
  t.beta_sq = amplitude_factors(s, t.geo, array).beta_squared();
  return t;
}

// Steering inner-product magnitude |a(0)^H a(tau)| / N evaluated through
// per-element phase DIFFERENCES, which keeps tau = 0 exactly 1 and spends one
// sincos per element.
inline double steering_inner(const GeometrySnapshot<double>& g0, const GeometrySnapshot<double>& g1,
                             const ArrayConfig<double>& array, SteeringModel model) {
  const double k = array.wavenumber();
  const double d = array.spacing;
  const double dlin = g1.psi_product - g0.psi_product;
  const double dquad =
      model == SteeringModel::fresnel
          ? (1.0 - g1.psi_product * g1.psi_product) / (2.0 * g1.range) -
                (1.0 - g0.psi_product * g0.psi_product) / (2.0 * g0.range)
          : 0.0;
  double re = 0.0, im = 0.0;
  const int n = array.n_elements;
  for (int m = 0; m < n; ++m) {
    const double od = (double(2 * m - n + 1) / 2.0) * d;
    const double ang = -k * (od * dlin - od * od * dquad);
    re += std::cos(ang);
    im += std::sin(ang);
  }
  return std::sqrt(re * re + im * im) / double(n);
}

inline double integrand(const TrialStart& t0, const ArrayConfig<double>& array, double tau,
                        CorrelationVariant variant, SteeringModel model) {
  const TrajectoryState<double> s1 = advance(t0.state, tau);
  const GeometrySnapshot<double> g1 = snapshot(s1, array);
  double v = steering_inner(t0.geo, g1, array, model);
  if (variant == CorrelationVariant::exact) {
    const double b1 = amplitude_factors(s1, g1, array).beta_squared();
    v *= std::sqrt(std::min(t0.beta_sq, b1) / std::max(t0.beta_sq, b1));
  }
  return std::clamp(v, 0.0, 1.0);
}

}  // namespace detail

/// Single-realization correlation integrand at delay tau: the exact-position
/// amplitude ratio min{beta(0),beta(tau)}/max{...} times the normalized
/// steering inner-product magnitude. No small-angle approximations.
inline double correlation_single(const TrajectoryState<double>& initial,
                                 const ArrayConfig<double>& array, double tau,
                                 SteeringModel model = SteeringModel::fresnel) {
  if (!(tau >= 0)) throw std::invalid_argument("correlation_single: tau must be >= 0");
  return detail::integrand(detail::trial_start(initial, array), array, tau,
                           CorrelationVariant::exact, model);
}

/// The amplitude-only factor of the integrand (always <= 1 by the min/max form).
inline double polarization_ratio(const TrajectoryState<double>& initial,
                                 const ArrayConfig<double>& array, double tau) {
  if (!(tau >= 0)) throw std::invalid_argument("polarization_ratio: tau must be >= 0");
  const auto t0 = detail::trial_start(initial, array);
  const TrajectoryState<double> s1 = advance(initial, tau);
  const double b1 = amplitude_factors(s1, snapshot(s1, array), array).beta_squared();
  return std::sqrt(std::min(t0.beta_sq, b1) / std::max(t0.beta_sq, b1));
}

/// The beam-alignment factor of the integrand alone.
inline double steering_correlation(const TrajectoryState<double>& initial,
                                   const ArrayConfig<double>& array, double tau,
                                   SteeringModel model = SteeringModel::fresnel) {
  if (!(tau >= 0)) throw std::invalid_argument("steering_correlation: tau must be >= 0");
  return detail::integrand(detail::trial_start(initial, array), array, tau,
                           CorrelationVariant::no_polarization, model);
}

namespace detail {

// Trials are processed in fixed chunks whose partial sums are combined in
// chunk order, so the reduction is identical for any worker count.
inline constexpr int kTrialChunk = 512;

inline std::vector<double> mc_expectation(const Eigen::Vector3d& initial_position, double speed,
                                          double turn_rate, const ArrayConfig<double>& array,
                                          const std::vector<double>& taus, const TrialPlan& plan,
                                          CorrelationVariant variant, SteeringModel model,
                                          int n_threads) {
  const int n_taus = int(taus.size());
  const int n_chunks = (plan.n_trials + kTrialChunk - 1) / kTrialChunk;
  std::vector<std::vector<double>> partial(std::size_t(n_chunks),
                                           std::vector<double>(std::size_t(n_taus), 0.0));

  const auto run_chunk = [&](int c) {
    const int begin = c * kTrialChunk;
    const int end = std::min(plan.n_trials, begin + kTrialChunk);
    std::vector<double>& acc = partial[std::size_t(c)];
    for (int trial = begin; trial < end; ++trial) {
      const TrajectoryState<double> s0(initial_position, speed, trial_heading(plan, trial),
                                       turn_rate);
      const TrialStart t0 = trial_start(s0, array);
      for (int j = 0; j < n_taus; ++j)
        acc[std::size_t(j)] += integrand(t0, array, taus[std::size_t(j)], variant, model);
    }
  };

  int workers = n_threads > 0 ? n_threads : int(std::thread::hardware_concurrency());
  workers = std::clamp(workers, 1, n_chunks);
  if (workers == 1) {
    for (int c = 0; c < n_chunks; ++c) run_chunk(c);
  } else {
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(std::size_t(workers));
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (int c = next.fetch_add(1); c < n_chunks; c = next.fetch_add(1)) run_chunk(c);
      });
    for (auto& th : pool) th.join();
  }

  std::vector<double> values(std::size_t(n_taus), 0.0);
  for (int c = 0; c < n_chunks; ++c)
    for (int j = 0; j < n_taus; ++j) values[std::size_t(j)] += partial[std::size_t(c)][std::size_t(j)];
  for (double& v : values) v = std::clamp(v / double(plan.n_trials), 0.0, 1.0);
  return values;
}

inline void check_mc_variant(CorrelationVariant variant) {
  if (variant == CorrelationVariant::polar_only_closed_region)
    throw std::invalid_argument(
        "correlation_expected: polar_only_closed_region is a quadrature reference, not a "
        "Monte-Carlo variant; sample correlation_turning_region_integral instead");
}

}  // namespace detail

/// Monte-Carlo expectation of the correlation over a uniform random initial
/// heading, on a delay grid. Position, speed and turn rate are fixed per
/// scenario; only the heading is random. Deterministic for a fixed
/// (seed, n_trials, grid) regardless of n_threads (0 = all hardware threads).
inline CorrelationCurve correlation_expected(const Eigen::Vector3d& initial_position, double speed,
                                             double turn_rate, const ArrayConfig<double>& array,
                                             std::vector<double> taus, const TrialPlan& plan,
                                             CorrelationVariant variant,
                                             SteeringModel model = SteeringModel::fresnel,
                                             int n_threads = 0) {
  detail::check_mc_variant(variant);
  std::vector<double> values = detail::mc_expectation(initial_position, speed, turn_rate, array,
                                                      taus, plan, variant, model, n_threads);
  return CorrelationCurve(std::move(taus), std::move(values),
                          CurveMeta{variant, plan.n_trials, plan.seed});
}

/// Pointwise tau -> E[R(tau)] source for the coherence solver; each call runs
/// the full trial set at that delay, so the solver always operates on the
/// trial-averaged curve, never on single trials.
inline std::function<double(double)> mc_correlation_source(
    const Eigen::Vector3d& initial_position, double speed, double turn_rate,
    const ArrayConfig<double>& array, const TrialPlan& plan, CorrelationVariant variant,
    SteeringModel model = SteeringModel::fresnel, int n_threads = 0) {
  detail::check_mc_variant(variant);
  return [=](double tau) {
    return detail::mc_expectation(initial_position, speed, turn_rate, array, {tau}, plan, variant,
                                  model, n_threads)[0];
  };
}

}  // namespace emct
