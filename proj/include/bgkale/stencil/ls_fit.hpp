#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <span>
#include <vector>

#include "bgkale/core/error.hpp"
#include "bgkale/core/small_solve.hpp"
#include "bgkale/core/vec.hpp"

namespace bgkale {

/// Number of Taylor derivatives fitted: 1D [f_x, f_xx]; 2D [f_x, f_y] for a
/// linear fit and [f_x, f_y, f_xx, f_xy, f_yy] for a quadratic one.
template <int Dim>
constexpr int taylor_terms(int degree) {
  if constexpr (Dim == 1) {
    return degree;
  } else {
    return degree == 1 ? 2 : 5;
  }
}

/// Precomputed least-squares stencil at one point: derivative r is
///   d_r = sum_k coef[r * m + k] * (f[ids[k]] - f_center).
struct StencilFit {
  std::vector<std::size_t> ids;
  std::vector<double> coef;
  int terms = 0;
  bool ok = false;

  std::size_t size() const { return ids.size(); }
  const double* row(int r) const { return coef.data() + r * ids.size(); }

  /// Applies the stencil to a scalar field.
  template <class Field>
  double apply(int r, const Field& f, double f_center) const {
    const double* c = row(r);
    double s = 0.0;
    for (std::size_t k = 0; k < ids.size(); ++k) s += c[k] * (f[ids[k]] - f_center);
    return s;
  }
};

namespace detail {

/// Taylor row in scaled offsets xi = (x_k - x) / h, and the power of h
/// that converts each scaled coefficient back to a physical derivative.
template <int Dim>
void taylor_row(const Vec<Dim>& xi, int terms, double* row) {
  if constexpr (Dim == 1) {
    row[0] = xi[0];
    if (terms > 1) row[1] = 0.5 * xi[0] * xi[0];
  } else {
    row[0] = xi[0];
    row[1] = xi[1];
    if (terms > 2) {
      row[2] = 0.5 * xi[0] * xi[0];
      row[3] = xi[0] * xi[1];
      row[4] = 0.5 * xi[1] * xi[1];
    }
  }
}

template <int Dim>
constexpr int taylor_order(int r) {
  return r < Dim ? 1 : 2;
}

}  // namespace detail

/// Weighted least-squares Taylor fit of the given degree (1 or 2) around
/// `center` from the points `ids` (the center itself may be listed; its
/// row is zero and it is skipped). Solves the normal equations
/// (D^T W D) a = D^T W b with a pivoted factorisation and reports failure
/// when the system is singular or its condition exceeds max_condition.
template <int Dim>
bool fit_stencil(std::span<const Vec<Dim>> x, const Vec<Dim>& center,
                 std::span<const std::size_t> ids, double h, double alpha, int degree,
                 StencilFit& out, double max_condition = 1e12, std::size_t min_points = 0) {
  const int p = taylor_terms<Dim>(degree);
  out.terms = p;
  out.ids.clear();
  out.ok = false;
  thread_local std::vector<double> rows;
  thread_local std::vector<double> w;
  rows.clear();
  w.clear();
  for (std::size_t k : ids) {
    const Vec<Dim> xi = (1.0 / h) * (x[k] - center);
    const double r2 = norm2(xi);
    if (r2 == 0.0) continue;
    out.ids.push_back(k);
    rows.resize(rows.size() + p);
    detail::taylor_row<Dim>(xi, p, rows.data() + rows.size() - p);
    w.push_back(r2 <= 1.0 ? std::exp(-alpha * r2) : 0.0);
  }
  const std::size_t m = out.ids.size();
  if (m < std::max<std::size_t>(static_cast<std::size_t>(p), min_points)) return false;
  SmallLU::Matrix a{};
  for (std::size_t k = 0; k < m; ++k) {
    const double* r = rows.data() + k * p;
    for (int i = 0; i < p; ++i)
      for (int j = i; j < p; ++j) a[i][j] += w[k] * r[i] * r[j];
  }
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < i; ++j) a[i][j] = a[j][i];
  SmallLU lu;
  if (!lu.factor(a, p, max_condition)) return false;
  out.coef.assign(p * m, 0.0);
  std::array<double, SmallLU::kMax> scale{};
  for (int r = 0; r < p; ++r) scale[r] = detail::taylor_order<Dim>(r) == 1 ? 1.0 / h : 1.0 / (h * h);
  for (std::size_t k = 0; k < m; ++k) {
    std::array<double, SmallLU::kMax> col{};
    const double* r = rows.data() + k * p;
    for (int i = 0; i < p; ++i) col[i] = w[k] * r[i];
    lu.solve(col);
    for (int i = 0; i < p; ++i) out.coef[i * m + k] = col[i] * scale[i];
  }
  out.ok = true;
  return true;
}

template <int Dim>
struct LsDerivatives {
  Vec<Dim> gradient{};
  Mat<Dim> hessian{};
};

/// Gradient and Hessian at `center` from a quadratic least-squares fit to
/// scattered samples. Throws DegenerateStencil when the fit is ill-posed.
template <int Dim>
LsDerivatives<Dim> ls_derivatives(std::span<const double> values,
                                  std::span<const Vec<Dim>> positions,
                                  const Vec<Dim>& center, double center_value, double h,
                                  double alpha = 6.0) {
  std::vector<std::size_t> ids(positions.size());
  for (std::size_t k = 0; k < ids.size(); ++k) ids[k] = k;
  StencilFit fit;
  if (!fit_stencil<Dim>(positions, center, ids, h, alpha, 2, fit))
    throw DegenerateStencil("least-squares system is singular or ill-conditioned");
  LsDerivatives<Dim> d;
  if constexpr (Dim == 1) {
    d.gradient[0] = fit.apply(0, values, center_value);
    d.hessian[0][0] = fit.apply(1, values, center_value);
  } else {
    d.gradient = {fit.apply(0, values, center_value), fit.apply(1, values, center_value)};
    const double fxy = fit.apply(3, values, center_value);
    d.hessian = {{{fit.apply(2, values, center_value), fxy},
                  {fxy, fit.apply(4, values, center_value)}}};
  }
  return d;
}

}  // namespace bgkale
