#pragma once

#include <string>

#include "bayesfuse/errors.hpp"

namespace bayesfuse {

/// A probability scalar constrained to [0, 1]. Construction validates the
/// range (a NaN fails the check as well), so a UnitProb in hand is always a
/// usable probability.
class UnitProb {
 public:
  UnitProb() = default;

  explicit UnitProb(double v) : value_(v) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw InvalidArgument("UnitProb out of [0,1]: " + std::to_string(v));
    }
  }

  double value() const { return value_; }

 private:
  double value_ = 0.0;
};

}  // namespace bayesfuse
