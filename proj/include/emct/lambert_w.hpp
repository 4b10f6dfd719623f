// SPDX-License-Identifier: Apache-2.0
//
// emct: electromagnetic coherence-time analysis for mobile channels

#pragma once

#include <cmath>
#include <limits>

#include "emct/errors.hpp"

namespace emct {

/// Lower real branch W_{-1} of the Lambert W function: the solution w <= -1
/// of w e^w = x for x in [-1/e, 0).
///
/// Initial guess: the branch-point series in p = -sqrt(2(1 + e x)) near
/// x = -1/e, the log-log asymptote w ~ ln(-x) - ln(-ln(-x)) elsewhere. The
/// guess is polished with Halley steps on f(w) = w e^w - x until the update
/// stalls at rounding level; residuals |w e^w - x| come out at a few ulp of
/// |x|. Very close to the branch point the series alone is already past
/// double precision and Halley is skipped (f' vanishes at w = -1).
template <typename Scalar = double>
Scalar lambert_w_minus1(Scalar x) {
  const Scalar e = std::exp(Scalar(1));
  const Scalar branch_point = -Scalar(1) / e;
  if (!(x >= branch_point) || !(x < Scalar(0)))
    throw invalid_scenario("lambert_w_minus1: argument outside [-1/e, 0)");
  if (x == branch_point) return Scalar(-1);

  Scalar p2 = Scalar(2) * (e * x + Scalar(1));
  if (p2 < Scalar(0)) p2 = Scalar(0);  // rounding guard just above the branch point

  Scalar w;
  if (p2 < Scalar(0.5)) {
    const Scalar p = -std::sqrt(p2);
    w = Scalar(-1) + p * (Scalar(1) - p * (Scalar(1) / 3 - p * Scalar(11) / 72));
    if (p2 < Scalar(1e-12)) return w;
  } else {
    const Scalar l1 = std::log(-x);  // <= -1 on the domain, so ln(-l1) is defined
    const Scalar l2 = std::log(-l1);
    w = l1 - l2 + l2 / l1 + l2 * (l2 - Scalar(2)) / (Scalar(2) * l1 * l1);
  }

  const Scalar eps = std::numeric_limits<Scalar>::epsilon();
  for (int it = 0; it < 40; ++it) {
    const Scalar ew = std::exp(w);
    const Scalar f = w * ew - x;
    if (f == Scalar(0)) break;
    const Scalar fp = ew * (w + Scalar(1));
    const Scalar fpp = ew * (w + Scalar(2));
    const Scalar denom = fp - f * fpp / (Scalar(2) * fp);
    const Scalar next = w - f / denom;
    // stay on the w < -1 branch even if a step overshoots
    const Scalar step = std::abs(next - w);
    w = (next < Scalar(-1)) ? next : (w - Scalar(1)) / Scalar(2);
    if (step <= Scalar(2) * eps * std::abs(w)) break;
  }
  return w;
}

}  // namespace emct
