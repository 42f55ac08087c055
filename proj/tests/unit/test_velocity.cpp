#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "bgkale/velocity/grid.hpp"
#include "bgkale/velocity/moments.hpp"
#include "bgkale/velocity/physics.hpp"
#include "bgkale/velocity/reduced.hpp"

using namespace bgkale;

namespace {

// Composite Simpson on [a, b], independent of the solver grid.
template <class F>
double simpson(F f, double a, double b, int n = 20000) {
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int k = 1; k < n; ++k) s += (k % 2 ? 4.0 : 2.0) * f(a + k * h);
  return s * h / 3.0;
}

double gauss(double v, double u, double rt) {
  return std::exp(-(v - u) * (v - u) / (2.0 * rt)) / std::sqrt(2.0 * std::numbers::pi * rt);
}

}  // namespace

TEST(VelocityGrid, OneDimensionalNodes) {
  VelocityGrid<1> g(10.0, 20);
  ASSERT_EQ(g.size(), 21u);
  EXPECT_DOUBLE_EQ(g.spacing(), 1.0);
  for (std::size_t j = 0; j < g.size(); ++j) EXPECT_DOUBLE_EQ(g.node(j)[0], -10.0 + j);
  EXPECT_DOUBLE_EQ(g.weight(0), 0.5);
  EXPECT_DOUBLE_EQ(g.weight(10), 1.0);
}

TEST(VelocityGrid, SingleSegment) {
  VelocityGrid<1> g(1.0, 1);
  ASSERT_EQ(g.size(), 2u);
  EXPECT_EQ(g.node(0)[0], -1.0);
  EXPECT_EQ(g.node(1)[0], 1.0);
}

TEST(VelocityGrid, Invariants) {
  for (int nv : {1, 7, 16, 30}) {
    VelocityGrid<2> g(3.5, nv);
    EXPECT_EQ(g.size(), static_cast<std::size_t>((nv + 1) * (nv + 1)));
    EXPECT_NEAR(g.spacing() * nv, 7.0, 1e-14);
    const auto& ax = g.axis_nodes();
    for (std::size_t i = 0; i + 1 < ax.size(); ++i) EXPECT_LT(ax[i], ax[i + 1]);
    for (std::size_t i = 0; i < ax.size(); ++i) EXPECT_EQ(ax[i], -ax[ax.size() - 1 - i]);
    double s = 0.0;
    for (double w : g.weights()) {
      EXPECT_GT(w, 0.0);
      s += w;
    }
    EXPECT_NEAR(s, 49.0, 1e-12);
  }
}

TEST(VelocityGrid, RejectsBadInput) {
  EXPECT_THROW(VelocityGrid<1>(10.0, 0), ConfigError);
  EXPECT_THROW(VelocityGrid<1>(0.0, 4), ConfigError);
  EXPECT_THROW(VelocityGrid<2>(-1.0, 4), ConfigError);
}

TEST(ReducedMaxwellian, UnitValueAtZero) {
  VelocityGrid<1> g(10.0, 20);
  const auto p = reduced_maxwellians(MacroState<1>{1.0, {0.0}, 1.0}, g, 1.0);
  EXPECT_NEAR(p.g1[10], 0.3989422804014327, 1e-15);
  for (std::size_t j = 0; j < g.size(); ++j) {
    EXPECT_NEAR(p.g2[j], 2.0 * p.g1[j], 1e-16);
    EXPECT_EQ(p.g1[j], p.g1[g.size() - 1 - j]);
  }
}

TEST(ReducedMaxwellian, TwoDimensionalEnergyFactor) {
  VelocityGrid<2> g(6.0, 12);
  const double R = 2.0, T = 0.7;
  const auto p = reduced_maxwellians(MacroState<2>{1.3, {0.4, -0.2}, T}, g, R);
  for (std::size_t j = 0; j < g.size(); ++j) {
    EXPECT_NEAR(p.g2[j], R * T * p.g1[j], 1e-15);
    const auto v = g.node(j);
    const double expect = 1.3 * gauss(v[0], 0.4, R * T) * gauss(v[1], -0.2, R * T);
    EXPECT_NEAR(p.g1[j], expect, 1e-14);
  }
}

TEST(ReducedMaxwellian, VacuumAndDegenerate) {
  VelocityGrid<1> g(5.0, 10);
  const auto p = reduced_maxwellians(MacroState<1>{0.0, {0.0}, 0.0}, g, 1.0);
  for (double x : p.g1) EXPECT_EQ(x, 0.0);
  EXPECT_THROW(reduced_maxwellians(MacroState<1>{1.0, {0.0}, 0.0}, g, 1.0), UnphysicalState);
  EXPECT_THROW(reduced_maxwellians(MacroState<1>{-1.0, {0.0}, 1.0}, g, 1.0), UnphysicalState);
}

TEST(Moments, UnitMaxwellianAgainstFineQuadrature) {
  VelocityGrid<1> g(10.0, 20);
  const auto m = compute_moments(reduced_maxwellians(MacroState<1>{1.0, {0.0}, 1.0}, g, 1.0), g, 1.0);
  const double rho = simpson([](double v) { return gauss(v, 0, 1); }, -10, 10);
  const double mom = simpson([](double v) { return v * gauss(v, 0, 1); }, -10, 10);
  EXPECT_NEAR(m.rho, rho, 1e-8);
  EXPECT_NEAR(m.U[0], mom / rho, 1e-8);
  // T carries the trapezoid aliasing of the zeroth and second moments;
  // Poisson summation gives it in closed form for unit spacing.
  const double e = std::exp(-2.0 * std::numbers::pi * std::numbers::pi);
  const double d0 = 2.0 * e;
  const double d2 = 2.0 * (1.0 - 4.0 * std::numbers::pi * std::numbers::pi) * e;
  EXPECT_NEAR(m.T, 1.0 + (d2 - d0) / (3.0 * (1.0 + d0)), 1e-12);
  EXPECT_LT(std::abs(m.T - 1.0), 1e-7);
}

TEST(Moments, PointMassAndVacuum) {
  VelocityGrid<1> g(10.0, 20);
  ReducedPair p(g.size());
  p.g1[12] = 1.0 / g.weight(12);
  const auto m = compute_moments(p, g, 1.0);
  EXPECT_DOUBLE_EQ(m.rho, 1.0);
  EXPECT_DOUBLE_EQ(m.U[0], 2.0);
  EXPECT_DOUBLE_EQ(m.T, 0.0);
  const auto z = compute_moments(ReducedPair(g.size()), g, 1.0);
  EXPECT_EQ(z.rho, 0.0);
  EXPECT_EQ(z.U[0], 0.0);
  EXPECT_EQ(z.T, 0.0);
}

TEST(Moments, NegativeDensityAndMismatch) {
  VelocityGrid<1> g(10.0, 20);
  ReducedPair p(g.size());
  p.g1[3] = -1.0;
  EXPECT_THROW(compute_moments(p, g, 1.0), UnphysicalState);
  EXPECT_THROW(compute_moments(ReducedPair(5), g, 1.0), ConfigError);
}

TEST(Moments, ReproducesParametersWithinQuadratureTolerance) {
  // vmax >= |U| + 6 sqrt(RT); finer spacing than the Example 1 grid.
  VelocityGrid<2> g(12.0, 48);
  const MacroState<2> in{0.8, {0.5, -1.0}, 1.2};
  const auto m = compute_moments(reduced_maxwellians(in, g, 1.5), g, 1.5);
  EXPECT_NEAR(m.rho, in.rho, 1e-8);
  EXPECT_NEAR(m.U[0], in.U[0], 1e-8);
  EXPECT_NEAR(m.U[1], in.U[1], 1e-8);
  EXPECT_NEAR(m.T, in.T, 1e-8);
}

TEST(Moments, RandomPairAgainstDirectSums) {
  VelocityGrid<2> g(4.0, 8);
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  ReducedPair p(g.size());
  for (std::size_t j = 0; j < g.size(); ++j) {
    p.g1[j] = u(rng);
    p.g2[j] = u(rng);
  }
  double rho = 0, mx = 0, my = 0, e2 = 0, vv = 0;
  for (std::size_t j = 0; j < g.size(); ++j) {
    const double w = g.weight(j), vx = g.node(j)[0], vy = g.node(j)[1];
    rho += w * p.g1[j];
    mx += w * vx * p.g1[j];
    my += w * vy * p.g1[j];
    vv += w * (vx * vx + vy * vy) * p.g1[j];
    e2 += w * p.g2[j];
  }
  const auto m = compute_moments(p, g, 1.0);
  EXPECT_NEAR(m.rho, rho, 1e-12 * rho);
  EXPECT_NEAR(m.U[0], mx / rho, 1e-12);
  EXPECT_NEAR(m.U[1], my / rho, 1e-12);
  // |v - U|^2 expanded about the origin.
  const double energy = vv - (mx * mx + my * my) / rho + e2;
  EXPECT_NEAR(m.T, energy / (3.0 * rho), 1e-11);

  // Scaling both distributions scales rho and leaves U, T unchanged.
  ReducedPair q = p;
  for (auto& x : q.g1) x *= 3.5;
  for (auto& x : q.g2) x *= 3.5;
  const auto s = compute_moments(q, g, 1.0);
  EXPECT_NEAR(s.rho, 3.5 * m.rho, 1e-12);
  EXPECT_NEAR(s.U[0], m.U[0], 1e-13);
  EXPECT_NEAR(s.T, m.T, 1e-12);
}

TEST(Physics, RelaxationTimeSodValues) {
  GasProperties gas;
  gas.R = 208.0;
  const MacroState<1> m{1e-3, {0.0}, 273.0};
  EXPECT_NEAR(mean_free_path(1e-3, gas), 1.110e-4, 0.01 * 1.110e-4);
  EXPECT_NEAR(relaxation_time(m, gas), 3.69e-7, 0.01 * 3.69e-7);
}

TEST(Physics, RelaxationTimeHomogeneous) {
  GasProperties gas;
  gas.R = 208.0;
  const MacroState<1> m{1e-3, {0.0}, 273.0};
  const double tau = relaxation_time(m, gas);
  EXPECT_NEAR(relaxation_time(MacroState<1>{0.5e-3, {0.0}, 273.0}, gas), 2.0 * tau, 1e-12 * tau);
  EXPECT_NEAR(relaxation_time(MacroState<1>{1e-3 / 8, {0.0}, 273.0}, gas), 8.0 * tau, 1e-12 * tau);
  for (double c : {0.1, 3.0, 17.0})
    EXPECT_NEAR(relaxation_time(MacroState<1>{c * 1e-3, {0.0}, 273.0}, gas), tau / c, 1e-12 * tau);
  EXPECT_THROW(relaxation_time(MacroState<1>{0.0, {0.0}, 273.0}, gas), UnphysicalState);
  EXPECT_THROW(relaxation_time(MacroState<1>{1.0, {0.0}, 0.0}, gas), UnphysicalState);
}

TEST(Physics, StressTensorOfEquilibrium) {
  VelocityGrid<1> g1(12.0, 48);
  const auto p1 = reduced_maxwellians(MacroState<1>{0.9, {0.3}, 1.1}, g1, 1.0);
  EXPECT_NEAR(stress_tensor<1>(p1.g1, g1, {0.3})[0][0], 0.9 * 1.1, 1e-8);

  VelocityGrid<2> g2(12.0, 48);
  const auto p2 = reduced_maxwellians(MacroState<2>{0.9, {0.3, -0.4}, 1.1}, g2, 1.0);
  const auto phi = stress_tensor<2>(p2.g1, g2, {0.3, -0.4});
  EXPECT_NEAR(phi[0][0], 0.99, 1e-8);
  EXPECT_NEAR(phi[1][1], 0.99, 1e-8);
  EXPECT_NEAR(phi[0][1], 0.0, 1e-8);
  EXPECT_EQ(phi[0][1], phi[1][0]);
}

TEST(Physics, PlateForceIsPressureDifference) {
  VelocityGrid<1> g(12.0, 48);
  const auto l = reduced_maxwellians(MacroState<1>{1.0, {0.0}, 1.2}, g, 1.0);
  const auto r = reduced_maxwellians(MacroState<1>{1.0, {0.0}, 0.8}, g, 1.0);
  const double A = 0.5;
  const double F = (stress_tensor<1>(l.g1, g, {0.0})[0][0] - stress_tensor<1>(r.g1, g, {0.0})[0][0]) * A;
  EXPECT_NEAR(F, 0.2, 1e-8);
}
