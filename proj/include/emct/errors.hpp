// SPDX-License-Identifier: Apache-2.0
//
// emct: electromagnetic coherence-time analysis for mobile channels

#pragma once

#include <stdexcept>

namespace emct {

/// The scenario left the model's domain: the UE crossed the array plane
/// (x_u <= 0), or a closed form was evaluated outside its validity region.
class invalid_scenario : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The correlation never drops below the threshold within the search horizon.
class no_crossing : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The coherence time is unbounded for structural reasons (zero speed, or a
/// geometry with no first-order angle drift).
class unbounded_coherence : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Configuration parsing or validation failure; the message names the
/// offending field path.
class config_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace emct
