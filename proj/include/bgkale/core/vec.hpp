#pragma once

#include <array>
#include <cmath>
#include <cstddef>

namespace bgkale {

/// Fixed-size Euclidean vector in physical or velocity space.
template <int Dim>
struct Vec : std::array<double, Dim> {};

/// Row-major Dim x Dim matrix.
template <int Dim>
using Mat = std::array<Vec<Dim>, Dim>;

template <int Dim>
constexpr Vec<Dim> operator+(const Vec<Dim>& a, const Vec<Dim>& b) {
  Vec<Dim> r{};
  for (int d = 0; d < Dim; ++d) r[d] = a[d] + b[d];
  return r;
}

template <int Dim>
constexpr Vec<Dim> operator-(const Vec<Dim>& a, const Vec<Dim>& b) {
  Vec<Dim> r{};
  for (int d = 0; d < Dim; ++d) r[d] = a[d] - b[d];
  return r;
}

template <int Dim>
constexpr Vec<Dim> operator*(double s, const Vec<Dim>& a) {
  Vec<Dim> r{};
  for (int d = 0; d < Dim; ++d) r[d] = s * a[d];
  return r;
}

template <int Dim>
constexpr Vec<Dim> operator-(const Vec<Dim>& a) {
  return -1.0 * a;
}

template <int Dim>
constexpr Vec<Dim>& operator-=(Vec<Dim>& a, const Vec<Dim>& b) {
  for (int d = 0; d < Dim; ++d) a[d] -= b[d];
  return a;
}

template <int Dim>
constexpr Vec<Dim>& operator+=(Vec<Dim>& a, const Vec<Dim>& b) {
  for (int d = 0; d < Dim; ++d) a[d] += b[d];
  return a;
}

template <int Dim>
constexpr double dot(const Vec<Dim>& a, const Vec<Dim>& b) {
  double s = 0.0;
  for (int d = 0; d < Dim; ++d) s += a[d] * b[d];
  return s;
}

template <int Dim>
constexpr double norm2(const Vec<Dim>& a) {
  return dot(a, a);
}

template <int Dim>
inline double norm(const Vec<Dim>& a) {
  return std::sqrt(norm2(a));
}

template <int Dim>
inline Vec<Dim> normalized(const Vec<Dim>& a) {
  const double n = norm(a);
  return n > 0.0 ? (1.0 / n) * a : a;
}

/// z-component of the planar cross product.
inline double cross(const Vec<2>& a, const Vec<2>& b) {
  return a[0] * b[1] - a[1] * b[0];
}

/// Planar rotation by angle theta (counter-clockwise).
inline Vec<2> rotate(const Vec<2>& a, double theta) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  return {c * a[0] - s * a[1], s * a[0] + c * a[1]};
}

template <int Dim>
constexpr Vec<Dim> zero_vec() {
  return Vec<Dim>{};
}

}  // namespace bgkale
