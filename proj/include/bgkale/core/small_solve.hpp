#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <limits>

namespace bgkale {

/// LU factorisation with partial pivoting for the tiny symmetric normal
/// systems of the least-squares fits (at most 6 unknowns).
class SmallLU {
 public:
  static constexpr int kMax = 6;
  using Matrix = std::array<std::array<double, kMax>, kMax>;

  /// Factorises the leading n x n block of a. Returns false when a pivot
  /// vanishes or the 1-norm condition estimate exceeds max_condition.
  bool factor(const Matrix& a, int n, double max_condition = 1e12) {
    n_ = n;
    lu_ = a;
    double anorm = 0.0;
    for (int c = 0; c < n; ++c) {
      double col = 0.0;
      for (int r = 0; r < n; ++r) col += std::abs(a[r][c]);
      anorm = std::max(anorm, col);
    }
    if (!(anorm > 0.0) || !std::isfinite(anorm)) return false;
    for (int i = 0; i < n; ++i) perm_[i] = i;
    for (int k = 0; k < n; ++k) {
      int p = k;
      for (int r = k + 1; r < n; ++r)
        if (std::abs(lu_[r][k]) > std::abs(lu_[p][k])) p = r;
      if (!(std::abs(lu_[p][k]) > anorm * 1e-15)) return false;
      if (p != k) {
        std::swap(lu_[p], lu_[k]);
        std::swap(perm_[p], perm_[k]);
      }
      for (int r = k + 1; r < n; ++r) {
        const double f = lu_[r][k] / lu_[k][k];
        lu_[r][k] = f;
        for (int c = k + 1; c < n; ++c) lu_[r][c] -= f * lu_[k][c];
      }
    }
    // ||A^-1||_1 from the explicit inverse; n <= 6 so this is cheap.
    double inv_norm = 0.0;
    for (int c = 0; c < n; ++c) {
      std::array<double, kMax> e{};
      e[c] = 1.0;
      solve(e);
      double col = 0.0;
      for (int r = 0; r < n; ++r) col += std::abs(e[r]);
      inv_norm = std::max(inv_norm, col);
    }
    condition_ = anorm * inv_norm;
    return std::isfinite(condition_) && condition_ <= max_condition;
  }

  /// Solves A x = b in place.
  void solve(std::array<double, kMax>& b) const {
    std::array<double, kMax> y{};
    for (int i = 0; i < n_; ++i) y[i] = b[perm_[i]];
    for (int i = 0; i < n_; ++i)
      for (int k = 0; k < i; ++k) y[i] -= lu_[i][k] * y[k];
    for (int i = n_ - 1; i >= 0; --i) {
      for (int k = i + 1; k < n_; ++k) y[i] -= lu_[i][k] * y[k];
      y[i] /= lu_[i][i];
    }
    b = y;
  }

  double condition() const { return condition_; }
  int size() const { return n_; }

 private:
  int n_ = 0;
  Matrix lu_{};
  std::array<int, kMax> perm_{};
  double condition_ = std::numeric_limits<double>::infinity();
};

}  // namespace bgkale
