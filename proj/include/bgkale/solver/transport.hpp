#pragma once

#include <atomic>
#include <span>
#include <vector>

#include "bgkale/bodies/boundary.hpp"
#include "bgkale/cloud/point_cloud.hpp"
#include "bgkale/core/parallel.hpp"
#include "bgkale/stencil/weno.hpp"
#include "bgkale/velocity/grid.hpp"

namespace bgkale {

/// Everything the transport operator reads. All spans are indexed by point.
/// frame[i] is the velocity the point moves with (U for interior points,
/// the wall or surface velocity for boundary points); wall[i] and rule[i]
/// classify the nodes re-emitted by the boundary condition, which are not
/// transported.
template <int Dim>
struct TransportInput {
  const PointCloud<Dim>* cloud = nullptr;
  const VelocityGrid<Dim>* grid = nullptr;
  std::span<const Vec<Dim>> frame;
  std::span<const Vec<Dim>> wall;
  std::span<const IncomingRule> rule;
  SpatialOrder order = SpatialOrder::First;
  double dx_nominal = 1.0;
  double eps = 1e-6;
};

namespace detail {

/// out[r * width + c] = sum_k coef[r][k] (f_k[c] - f_i[c]) for every fitted
/// derivative r.
template <int Dim>
void apply_fit_rows(const StencilFit& fit, const PointCloud<Dim>& cloud, std::size_t i,
                    double* out) {
  const std::size_t width = cloud.width();
  const std::size_t m = fit.size();
  const double* fi = cloud.row(i).data();
  for (int r = 0; r < fit.terms; ++r) {
    const double* c = fit.row(r);
    double csum = 0.0;
    for (std::size_t k = 0; k < m; ++k) csum += c[k];
    double* o = out + r * width;
    for (std::size_t col = 0; col < width; ++col) o[col] = -csum * fi[col];
  }
  for (std::size_t k = 0; k < m; ++k) {
    const double* fk = cloud.row(fit.ids[k]).data();
    for (int r = 0; r < fit.terms; ++r) {
      const double ck = fit.row(r)[k];
      double* o = out + r * width;
      for (std::size_t col = 0; col < width; ++col) o[col] += ck * fk[col];
    }
  }
}

}  // namespace detail

/// Right-hand side -(v_j - W_i) . grad g at every point and node, written
/// to out (points x width, same layout as the cloud values). Upwinding per
/// axis follows sign(v_j[a] - W_i[a]). Returns the number of interior
/// points that needed a central fallback for a one-sided stencil.
template <int Dim>
std::size_t transport_rhs(const TransportInput<Dim>& in, std::vector<double>& out) {
  const PointCloud<Dim>& cloud = *in.cloud;
  const VelocityGrid<Dim>& grid = *in.grid;
  const std::size_t nv = grid.size();
  const std::size_t width = cloud.width();
  out.assign(cloud.size() * width, 0.0);
  std::atomic<std::size_t> fallbacks{0};
  const int nfit = 1 + 2 * Dim;
  parallel_for(cloud.size(), [&](std::size_t i) {
    thread_local PointStencils<Dim> st;
    thread_local std::vector<double> d;
    thread_local std::vector<char> skip;
    build_point_stencils(cloud, i, in.order, st);
    const int rows = in.order == SpatialOrder::First ? taylor_terms<Dim>(1)
                                                     : taylor_terms<Dim>(2);
    d.assign(static_cast<std::size_t>(nfit) * rows * width, 0.0);
    auto block = [&](int f) { return d.data() + static_cast<std::size_t>(f) * rows * width; };
    // Fit slots: 0 central, 1 + 2a lower[a], 2 + 2a upper[a].
    std::array<const StencilFit*, 1 + 2 * Dim> fits{};
    fits[0] = &st.central;
    for (int a = 0; a < Dim; ++a) {
      fits[1 + 2 * a] = &st.lower[a];
      fits[2 + 2 * a] = &st.upper[a];
    }
    for (int f = 0; f < nfit; ++f)
      if (fits[f]->ok) detail::apply_fit_rows(*fits[f], cloud, i, block(f));

    const bool interior = cloud.kind(i) == PointKind::Interior;
    skip.assign(nv, 0);
    if (!interior) {
      for (std::size_t j = 0; j < nv; ++j)
        skip[j] = is_incoming(in.rule[i], dot(grid.node(j) - in.wall[i], cloud.normal(i)));
    }
    bool fell_back = false;
    double* o = out.data() + i * width;
    for (std::size_t col = 0; col < width; ++col) {
      const std::size_t j = col % nv;
      if (skip[j]) continue;
      const Vec<Dim>& v = grid.node(j);
      double rhs = 0.0;
      for (int a = 0; a < Dim; ++a) {
        const double s = v[a] - in.frame[i][a];
        if (s == 0.0) continue;
        const StencilFit& lo = *fits[1 + 2 * a];
        const StencilFit& up = *fits[2 + 2 * a];
        double deriv;
        if (in.order == SpatialOrder::First) {
          int f = 0;
          if (s > 0.0 && lo.ok) f = 1 + 2 * a;
          if (s < 0.0 && up.ok) f = 2 + 2 * a;
          if (f == 0) fell_back = true;
          deriv = block(f)[a * width + col];
        } else {
          const std::array<int, 3> slot = {1 + 2 * a, 0, 2 + 2 * a};
          const auto coeffs = shift_unavailable(weno_linear_coefficients(s), lo.ok, up.ok);
          std::array<double, 3> smooth{};
          std::array<double, 3> cand{};
          for (int k = 0; k < 3; ++k) {
            if (coeffs[k] == 0.0) continue;
            const int terms = fits[slot[k]]->terms;
            std::array<double, 5> dv{};
            for (int r = 0; r < terms; ++r) dv[r] = block(slot[k])[r * width + col];
            cand[k] = dv[a];
            smooth[k] = candidate_smoothness<Dim>(dv.data(), terms, in.dx_nominal);
          }
          const auto omega = weno_weights(coeffs, smooth, in.eps);
          deriv = omega[0] * cand[0] + omega[1] * cand[1] + omega[2] * cand[2];
        }
        rhs -= s * deriv;
      }
      o[col] = rhs;
    }
    if (fell_back && interior) fallbacks.fetch_add(1, std::memory_order_relaxed);
  });
  return fallbacks.load();
}

}  // namespace bgkale
