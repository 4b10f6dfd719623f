// SPDX-License-Identifier: Apache-2.0
//
// emct: electromagnetic coherence-time analysis for mobile channels

#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

#include "emct/errors.hpp"

namespace emct {

enum class CoherenceMethod {
  numeric_exact,
  numeric_no_polarization,
  numeric_polar_only,
  closed_turning,
  closed_linear,
  lower_bound_linear,
  quarter_wavelength,
};

constexpr const char* to_string(CoherenceMethod m) {
  switch (m) {
    case CoherenceMethod::numeric_exact: return "numeric_exact";
    case CoherenceMethod::numeric_no_polarization: return "numeric_no_polarization";
    case CoherenceMethod::numeric_polar_only: return "numeric_polar_only";
    case CoherenceMethod::closed_turning: return "closed_turning";
    case CoherenceMethod::closed_linear: return "closed_linear";
    case CoherenceMethod::lower_bound_linear: return "lower_bound_linear";
    case CoherenceMethod::quarter_wavelength: return "quarter_wavelength";
  }
  return "?";
}

/// A coherence time together with how it was obtained. For numeric methods the
/// final bracket (lo, hi] satisfies R(lo) >= level > R(hi) at the solver's
/// resolution, with t_em its midpoint.
struct CoherenceResult {
  double t_em = 0;
  CoherenceMethod method = CoherenceMethod::numeric_exact;
  double threshold = 0;
  double bracket_lo = 0;
  double bracket_hi = 0;
};

/// Knobs of the forward-scan + bisection solver. The deadband shifts the
/// crossing level to zeta - deadband so that Monte-Carlo noise around the
/// threshold does not trigger spurious early crossings; the reported bracket
/// makes the residual uncertainty visible to the caller.
struct SolverOptions {
  double initial_step = 0;  ///< 0 -> tau_max / 1024
  double growth = 2.0;
  double max_step = 0;  ///< 0 -> tau_max / 16
  double deadband = 0;
};

/// Numerically locates T = inf{tau : R(tau) < zeta} for an arbitrary
/// correlation source. A forward scan with geometrically expanding step finds
/// the FIRST interval where R drops below the level (honoring the infimum for
/// non-monotone curves at the scan's resolution), then bisection shrinks the
/// bracket to tol. Throws no_crossing when R stays at or above the level up to
/// tau_max; that is distinct from precondition violations, which throw
/// std::invalid_argument.
inline CoherenceResult solve_numeric(const std::function<double(double)>& correlation,
                                     double zeta, double tau_max, double tol,
                                     CoherenceMethod method = CoherenceMethod::numeric_exact,
                                     const SolverOptions& opt = {}) {
  if (!(zeta > 0 && zeta < 1)) throw std::invalid_argument("solve_numeric: zeta must be in (0,1)");
  if (!(tau_max > 0)) throw std::invalid_argument("solve_numeric: tau_max must be > 0");
  if (!(tol > 0)) throw std::invalid_argument("solve_numeric: tol must be > 0");
  if (!(opt.growth >= 1)) throw std::invalid_argument("solve_numeric: growth must be >= 1");

  const double level = zeta - opt.deadband;
  if (!(correlation(0.0) >= level))
    throw std::invalid_argument("solve_numeric: correlation at tau = 0 is already below zeta");

  const double step0 = opt.initial_step > 0 ? opt.initial_step : tau_max / 1024.0;
  const double step_cap = opt.max_step > 0 ? opt.max_step : tau_max / 16.0;

  double lo = 0.0;
  double hi = 0.0;
  double step = step0;
  bool bracketed = false;
  while (lo < tau_max) {
    hi = std::min(lo + step, tau_max);
    if (correlation(hi) < level) {
      bracketed = true;
      break;
    }
    lo = hi;
    step = std::min(step * opt.growth, step_cap);
  }
  if (!bracketed)
    throw no_crossing("solve_numeric: no crossing below zeta within tau_max = " +
                      std::to_string(tau_max));

  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;  // bracket at rounding resolution
    if (correlation(mid) < level)
      hi = mid;
    else
      lo = mid;
  }

  CoherenceResult res;
  res.t_em = 0.5 * (lo + hi);
  res.method = method;
  res.threshold = zeta;
  res.bracket_lo = lo;
  res.bracket_hi = hi;
  return res;
}

/// Rule-of-thumb baseline: the time to travel a quarter wavelength.
inline double quarter_wavelength_baseline(double speed, double wavelength) {
  if (!(wavelength > 0))
    throw std::invalid_argument("quarter_wavelength_baseline: wavelength must be > 0");
  if (!(speed >= 0))
    throw std::invalid_argument("quarter_wavelength_baseline: speed must be >= 0");
  if (speed == 0)
    throw unbounded_coherence("quarter_wavelength_baseline: zero speed, baseline unbounded");
  return wavelength / (4.0 * speed);
}

}  // namespace emct
