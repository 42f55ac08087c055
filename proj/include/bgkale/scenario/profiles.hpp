#pragma once

#include <cmath>
#include <functional>
#include <string>

#include "bgkale/core/error.hpp"
#include "bgkale/velocity/macro.hpp"
#include "json.hpp"

namespace bgkale {

namespace detail {

inline double pulse(double s, double r) {
  return (std::exp(-(s * r - 1.0) * (s * r - 1.0)) -
          2.0 * std::exp(-(s * r + 3.0) * (s * r + 3.0))) /
         s;
}

inline double ring_pulse(double s, double r_plus, double r_minus) {
  return (std::exp(-(s * r_plus - 1.0) * (s * r_plus - 1.0)) -
          2.0 * std::exp(-(s * r_minus - 1.0) * (s * r_minus - 1.0))) /
         s;
}

template <int Dim>
Vec<Dim> vec_from_json(const nlohmann::json& j, const Vec<Dim>& fallback = {}) {
  if (j.is_null()) return fallback;
  if (j.is_number()) {
    Vec<Dim> v{};
    v[0] = j.get<double>();
    return v;
  }
  if (!j.is_array() || j.size() != static_cast<std::size_t>(Dim))
    throw ConfigError("expected a vector of length " + std::to_string(Dim));
  Vec<Dim> v{};
  for (int d = 0; d < Dim; ++d) v[d] = j[d].get<double>();
  return v;
}

}  // namespace detail

/// Named initial profiles (rho, U, T)(x):
///   uniform          : rho, U, T
///   smooth_pulse_1d  : rho, T, sigma; U_x = (exp(-(s x - 1)^2) - 2 exp(-(s x + 3)^2)) / s
///   smooth_pulse_2d  : rho, T, sigma; the four off-centre ring pulses of the 2D test
///   riemann          : rho_left/right, T_left/right, u_left/right, x0 (split along x)
template <int Dim>
std::function<MacroState<Dim>(const Vec<Dim>&)> make_profile(const nlohmann::json& j) {
  const std::string name = j.value("profile", std::string("uniform"));
  const double rho = j.value("rho", 1.0);
  const double T = j.value("T", 1.0);
  if (name == "uniform") {
    const Vec<Dim> U = detail::vec_from_json<Dim>(j.value("U", nlohmann::json()));
    return [=](const Vec<Dim>&) { return MacroState<Dim>{rho, U, T}; };
  }
  if (name == "smooth_pulse_1d") {
    const double s = j.value("sigma", 10.0);
    return [=](const Vec<Dim>& x) {
      MacroState<Dim> m{rho, {}, T};
      m.U[0] = detail::pulse(s, x[0]);
      return m;
    };
  }
  if (name == "smooth_pulse_2d") {
    if constexpr (Dim != 2) {
      throw ConfigError("smooth_pulse_2d needs a 2D scenario");
    } else {
      const double s = j.value("sigma", 10.0);
      const double c = j.value("offset", 0.2);
      return [=](const Vec<2>& x) {
        MacroState<2> m{rho, {}, T};
        m.U[0] = detail::ring_pulse(s, std::hypot(x[0] - c, x[1]), std::hypot(x[0] + c, x[1]));
        m.U[1] = detail::ring_pulse(s, std::hypot(x[0], x[1] - c), std::hypot(x[0], x[1] + c));
        return m;
      };
    }
  }
  if (name == "riemann") {
    const double rl = j.at("rho_left").get<double>();
    const double rr = j.at("rho_right").get<double>();
    const double tl = j.value("T_left", T);
    const double tr = j.value("T_right", T);
    const double ul = j.value("u_left", 0.0);
    const double ur = j.value("u_right", 0.0);
    const double x0 = j.value("x0", 0.5);
    return [=](const Vec<Dim>& x) {
      MacroState<Dim> m;
      const bool left = x[0] < x0;
      m.rho = left ? rl : rr;
      m.T = left ? tl : tr;
      m.U[0] = left ? ul : ur;
      return m;
    };
  }
  throw ConfigError("unknown initial profile '" + name + "'");
}

}  // namespace bgkale
