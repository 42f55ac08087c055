#pragma once

#include <cmath>
#include <numbers>
#include <string>

#include "bgkale/core/error.hpp"

namespace bgkale {

/// Prescribed scalar motion law, keyed by a config string.
///   "none"        : at rest
///   "piston_sin"  : u = a sin(f t), displacement a (1 - cos(f t)) / f
///   "shuttle_cos" : u = a cos(2 pi f t), displacement a sin(2 pi f t) / (2 pi f)
struct MotionLaw {
  std::string id = "none";
  double amplitude = 0.0;
  double frequency = 1.0;

  MotionLaw() = default;
  MotionLaw(std::string law, double a, double f)
      : id(std::move(law)), amplitude(a), frequency(f) {
    if (id != "none" && id != "piston_sin" && id != "shuttle_cos")
      throw ConfigError("unknown motion law '" + id + "'");
    if (id != "none" && !(frequency > 0.0))
      throw ConfigError("motion law frequency must be positive");
  }

  bool moving() const { return id != "none"; }

  double velocity(double t) const {
    if (id == "piston_sin") return amplitude * std::sin(frequency * t);
    if (id == "shuttle_cos") return amplitude * std::cos(2.0 * std::numbers::pi * frequency * t);
    return 0.0;
  }

  double displacement(double t) const {
    if (id == "piston_sin") return amplitude * (1.0 - std::cos(frequency * t)) / frequency;
    if (id == "shuttle_cos") {
      const double w = 2.0 * std::numbers::pi * frequency;
      return amplitude * std::sin(w * t) / w;
    }
    return 0.0;
  }
};

/// Velocity of a prescribed wall or body at time t.
inline double prescribed_motion(const MotionLaw& law, double t) { return law.velocity(t); }

}  // namespace bgkale
