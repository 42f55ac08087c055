#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <span>
#include <vector>

#include "bgkale/cloud/point_cloud.hpp"
#include "bgkale/core/error.hpp"
#include "bgkale/core/small_solve.hpp"

namespace bgkale {

/// Interpolation weights c_k such that f(x) ~ sum_k c_k f_k.
struct MlsWeights {
  std::vector<std::size_t> ids;
  std::vector<double> coef;
  int degree = 0;
};

namespace detail {

template <int Dim>
int poly_terms(int degree) {
  if constexpr (Dim == 1) {
    return degree + 1;
  } else {
    return degree == 0 ? 1 : degree == 1 ? 3 : 6;
  }
}

/// Monomials 1, xi, xi^2/2 (1D) or 1, xi, eta, xi^2/2, xi eta, eta^2/2 (2D).
template <int Dim>
void poly_row(const Vec<Dim>& xi, int terms, double* row) {
  row[0] = 1.0;
  if constexpr (Dim == 1) {
    if (terms > 1) row[1] = xi[0];
    if (terms > 2) row[2] = 0.5 * xi[0] * xi[0];
  } else {
    if (terms > 1) {
      row[1] = xi[0];
      row[2] = xi[1];
    }
    if (terms > 3) {
      row[3] = 0.5 * xi[0] * xi[0];
      row[4] = xi[0] * xi[1];
      row[5] = 0.5 * xi[1] * xi[1];
    }
  }
}

template <int Dim>
bool mls_solve(std::span<const Vec<Dim>> x, const Vec<Dim>& q,
               const std::vector<std::size_t>& ids, double h, double alpha, int degree,
               MlsWeights& out) {
  const int p = poly_terms<Dim>(degree);
  if (static_cast<int>(ids.size()) < p) return false;
  SmallLU::Matrix a{};
  std::vector<double> rows(ids.size() * p);
  std::vector<double> w(ids.size());
  for (std::size_t k = 0; k < ids.size(); ++k) {
    const Vec<Dim> xi = (1.0 / h) * (x[ids[k]] - q);
    double* r = rows.data() + k * p;
    poly_row<Dim>(xi, p, r);
    w[k] = std::exp(-alpha * norm2(xi));
    for (int i = 0; i < p; ++i)
      for (int j = 0; j < p; ++j) a[i][j] += w[k] * r[i] * r[j];
  }
  SmallLU lu;
  if (!lu.factor(a, p)) return false;
  // The value at q is the constant coefficient: e_0^T A^-1 D^T W.
  std::array<double, SmallLU::kMax> e0{};
  e0[0] = 1.0;
  lu.solve(e0);  // A symmetric, so this row of A^-1 is usable directly.
  out.ids = ids;
  out.coef.assign(ids.size(), 0.0);
  out.degree = degree;
  for (std::size_t k = 0; k < ids.size(); ++k) {
    const double* r = rows.data() + k * p;
    double c = 0.0;
    for (int i = 0; i < p; ++i) c += e0[i] * r[i];
    out.coef[k] = w[k] * c;
  }
  return true;
}

}  // namespace detail

/// Moving least squares weights at x_query from the cloud points within h,
/// same Gaussian weight as the derivative fits. Falls back from quadratic
/// to linear to constant when the fit is ill-posed, and widens the radius
/// by 1.5 up to twice. A query on top of a cloud point returns that point.
///
/// `skip(k)` excludes points (e.g. the pair being merged).
template <int Dim>
MlsWeights mls_weights(const PointCloud<Dim>& cloud, const Vec<Dim>& q, std::size_t m_min,
                       const std::function<bool(std::size_t)>& skip = {}) {
  std::vector<std::size_t> ball;
  double radius = cloud.h();
  for (int widen = 0; widen < 3; ++widen, radius *= 1.5) {
    ball.clear();
    cloud.query_ball(q, radius, ball);
    if (skip) std::erase_if(ball, skip);
    std::sort(ball.begin(), ball.end());
    for (std::size_t k : ball) {
      if (norm(cloud.position(k) - q) <= 1e-12 * cloud.h()) {
        return MlsWeights{{k}, {1.0}, 2};
      }
    }
    if (ball.empty() || (ball.size() < m_min && widen < 2)) continue;
    MlsWeights out;
    for (int degree = 2; degree >= 0; --degree)
      if (detail::mls_solve<Dim>(cloud.positions(), q, ball, radius, cloud.alpha(), degree, out))
        return out;
  }
  throw InsufficientNeighbors("not enough neighbours to interpolate");
}

/// Interpolates a per-point scalar field at x_query.
template <int Dim>
double mls_interpolate(const PointCloud<Dim>& cloud, const Vec<Dim>& q,
                       std::span<const double> field, std::size_t m_min = 1) {
  const MlsWeights w = mls_weights(cloud, q, m_min);
  double s = 0.0;
  for (std::size_t k = 0; k < w.ids.size(); ++k) s += w.coef[k] * field[w.ids[k]];
  return s;
}

/// Interpolates every value column of the cloud into `out`.
template <int Dim>
void mls_interpolate_row(const PointCloud<Dim>& cloud, const MlsWeights& w,
                         std::span<double> out) {
  std::fill(out.begin(), out.end(), 0.0);
  for (std::size_t k = 0; k < w.ids.size(); ++k) {
    const auto row = cloud.row(w.ids[k]);
    const double c = w.coef[k];
    for (std::size_t j = 0; j < out.size(); ++j) out[j] += c * row[j];
  }
}

}  // namespace bgkale
