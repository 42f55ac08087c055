#pragma once

#include <array>
#include <span>
#include <vector>

#include "bgkale/cloud/point_cloud.hpp"
#include "bgkale/stencil/ls_fit.hpp"

namespace bgkale {

enum class SpatialOrder { First, Second };

/// Candidate stencils of one point. lower/upper[a] are the half-balls
/// x_k[a] <= x_i[a] and x_k[a] >= x_i[a]. A failed one-sided fit has ok ==
/// false. The central fit falls back to a linear basis when the quadratic
/// one is ill-posed (central.terms tells which).
template <int Dim>
struct PointStencils {
  StencilFit central;
  std::array<StencilFit, Dim> lower;
  std::array<StencilFit, Dim> upper;
};

/// Builds the stencils of point i: linear one-sided fits for the first
/// order scheme, quadratic ones for the WENO blend. Throws DegenerateStencil
/// when even the linear central fit fails.
template <int Dim>
void build_point_stencils(const PointCloud<Dim>& cloud, std::size_t i, SpatialOrder order,
                          PointStencils<Dim>& st) {
  const auto x = cloud.positions();
  const Vec<Dim>& c = x[i];
  const auto all = cloud.neighbors(i);
  const int degree = order == SpatialOrder::First ? 1 : 2;
  // In 2D a one-sided fit needs one point more than unknowns: an exactly
  // determined fit on a nearly collinear set (a wall arc) amplifies noise.
  const std::size_t min_side = Dim > 1 ? static_cast<std::size_t>(taylor_terms<Dim>(degree)) + 1 : 0;
  thread_local std::vector<std::size_t> side;
  for (int a = 0; a < Dim; ++a) {
    side.clear();
    for (std::size_t k : all)
      if (x[k][a] <= c[a]) side.push_back(k);
    fit_stencil<Dim>(x, c, side, cloud.h(), cloud.alpha(), degree, st.lower[a], 1e12, min_side);
    side.clear();
    for (std::size_t k : all)
      if (x[k][a] >= c[a]) side.push_back(k);
    fit_stencil<Dim>(x, c, side, cloud.h(), cloud.alpha(), degree, st.upper[a], 1e12, min_side);
  }
  if (fit_stencil<Dim>(x, c, all, cloud.h(), cloud.alpha(), degree, st.central)) return;
  if (degree == 2 && fit_stencil<Dim>(x, c, all, cloud.h(), cloud.alpha(), 1, st.central))
    return;
  throw DegenerateStencil("no solvable stencil at point " + std::to_string(cloud.id(i)),
                          i);
}

/// Linear WENO coefficients (C_L, C_C, C_R) for the sign of the transport
/// velocity along the axis.
inline std::array<double, 3> weno_linear_coefficients(double sign) {
  if (sign > 0.0) return {0.5, 0.5, 0.0};
  if (sign < 0.0) return {0.0, 0.5, 0.5};
  return {0.0, 1.0, 0.0};
}

/// Smoothness of a candidate from its fitted derivatives:
/// sum of first derivatives^2 dx^2 plus second derivatives^2 dx^4.
template <int Dim>
double candidate_smoothness(const double* d, int terms, double dx) {
  const double dx2 = dx * dx;
  double s = 0.0;
  for (int r = 0; r < terms; ++r) s += d[r] * d[r] * (r < Dim ? dx2 : dx2 * dx2);
  return s;
}

/// omega_k = beta_k / sum beta, beta_k = C_k / (smoothness_k + eps)^2.
inline std::array<double, 3> weno_weights(const std::array<double, 3>& coeffs,
                                          const std::array<double, 3>& smoothness,
                                          double eps) {
  std::array<double, 3> beta{};
  double sum = 0.0;
  for (int k = 0; k < 3; ++k) {
    const double s = smoothness[k] + eps;
    beta[k] = coeffs[k] / (s * s);
    sum += beta[k];
  }
  for (auto& b : beta) b /= sum;
  return beta;
}

/// Moves the linear weight of unavailable one-sided candidates onto the
/// central candidate.
inline std::array<double, 3> shift_unavailable(std::array<double, 3> c, bool lower_ok,
                                               bool upper_ok) {
  if (!lower_ok) {
    c[1] += c[0];
    c[0] = 0.0;
  }
  if (!upper_ok) {
    c[1] += c[2];
    c[2] = 0.0;
  }
  return c;
}

/// First-order upwind derivative along `axis`: a linear least-squares fit on
/// the lower half-ball when sign > 0, the upper one when sign < 0, the full
/// ball at sign 0. An empty or degenerate side falls back to the full ball
/// and sets *fallback.
template <int Dim>
double upwind_first_order(const PointCloud<Dim>& cloud, std::size_t i, double sign,
                          int axis, std::span<const double> field,
                          bool* fallback = nullptr) {
  PointStencils<Dim> st;
  build_point_stencils(cloud, i, SpatialOrder::First, st);
  const StencilFit* fit = &st.central;
  if (sign > 0.0 && st.lower[axis].ok) fit = &st.lower[axis];
  if (sign < 0.0 && st.upper[axis].ok) fit = &st.upper[axis];
  if (fallback) *fallback = sign != 0.0 && fit == &st.central;
  return fit->apply(axis, field, field[i]);
}

struct WenoResult {
  double value = 0.0;
  std::array<double, 3> omega{};
  std::array<double, 3> candidates{};
  std::array<bool, 3> available{};
};

/// WENO-blended first derivative along `axis` from the lower, central and
/// upper quadratic fits.
template <int Dim>
WenoResult weno_derivative(const PointCloud<Dim>& cloud, std::size_t i, double sign,
                           int axis, double dx_nominal, std::span<const double> field,
                           double eps = 1e-6) {
  PointStencils<Dim> st;
  build_point_stencils(cloud, i, SpatialOrder::Second, st);
  const std::array<const StencilFit*, 3> fits = {&st.lower[axis], &st.central,
                                                 &st.upper[axis]};
  WenoResult res;
  std::array<double, 3> smooth{};
  for (int k = 0; k < 3; ++k) {
    res.available[k] = fits[k]->ok;
    if (!fits[k]->ok) continue;
    std::array<double, 5> d{};
    for (int r = 0; r < fits[k]->terms; ++r) d[r] = fits[k]->apply(r, field, field[i]);
    res.candidates[k] = d[axis];
    smooth[k] = candidate_smoothness<Dim>(d.data(), fits[k]->terms, dx_nominal);
  }
  const auto coeffs = shift_unavailable(weno_linear_coefficients(sign), res.available[0],
                                        res.available[2]);
  res.omega = weno_weights(coeffs, smooth, eps);
  for (int k = 0; k < 3; ++k) res.value += res.omega[k] * res.candidates[k];
  return res;
}

}  // namespace bgkale
