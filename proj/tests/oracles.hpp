#pragma once

// Independent reference implementations used only to cross-check the
// library: a dense linear solve for the occupancy chain, a from-scratch
// TOPSIS, and a factorial-form Erlang loss formula. Kept deliberately
// separate from (and slower than) the production code paths.

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "hoprank/guard_channel.hpp"
#include "hoprank/mcdm.hpp"

namespace oracles {

/// Stationary distribution of the guard-channel chain by Gaussian
/// elimination on the global balance equations (replacing one equation by
/// the normalization constraint).
inline std::vector<double> balance_solve(const hoprank::GuardChannelSpec& s) {
  const int n = s.total_channels + 1;
  // rows: balance at states 0..C-1, then normalization
  std::vector<std::vector<double>> a(n, std::vector<double>(n + 1, 0.0));
  for (int state = 0; state < n - 1; ++state) {
    // flow out of {0..state} equals flow back across the cut
    a[state][state] += s.arrival_rate(state);
    a[state][state + 1] -= (state + 1) * s.service_rate();
  }
  for (int j = 0; j < n; ++j) a[n - 1][j] = 1.0;
  a[n - 1][n] = 1.0;

  for (int col = 0; col < n; ++col) {
    int pivot = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
    std::swap(a[col], a[pivot]);
    if (a[col][col] == 0.0) continue;
    for (int r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0.0) continue;
      double factor = a[r][col] / a[col][col];
      for (int j = col; j <= n; ++j) a[r][j] -= factor * a[col][j];
    }
  }
  std::vector<double> p(n, 0.0);
  for (int i = 0; i < n; ++i) p[i] = a[i][n] / a[i][i];
  return p;
}

/// Erlang loss probability from the closed form with long double
/// factorial terms; fine for small channel counts.
inline double erlang_b_closed_form(int channels, double offered) {
  long double term = 1.0L;
  long double sum = 1.0L;
  long double top = 1.0L;
  for (int k = 1; k <= channels; ++k) {
    term *= static_cast<long double>(offered) / k;
    sum += term;
    if (k == channels) top = term;
  }
  return static_cast<double>(top / sum);
}

/// TOPSIS closeness written independently of the library.
inline std::vector<double> topsis_closeness(
    const std::vector<std::vector<double>>& x,
    const std::vector<hoprank::Direction>& dir, const std::vector<double>& w) {
  const std::size_t rows = x.size();
  const std::size_t cols = x[0].size();
  std::vector<std::vector<double>> v(rows, std::vector<double>(cols, 0.0));
  for (std::size_t j = 0; j < cols; ++j) {
    double norm = 0.0;
    for (std::size_t i = 0; i < rows; ++i) norm += x[i][j] * x[i][j];
    norm = std::sqrt(norm);
    for (std::size_t i = 0; i < rows; ++i) v[i][j] = w[j] * x[i][j] / norm;
  }
  std::vector<double> best(cols), worst(cols);
  for (std::size_t j = 0; j < cols; ++j) {
    double lo = v[0][j], hi = v[0][j];
    for (std::size_t i = 1; i < rows; ++i) {
      lo = std::min(lo, v[i][j]);
      hi = std::max(hi, v[i][j]);
    }
    bool cost = dir[j] == hoprank::Direction::Cost;
    best[j] = cost ? lo : hi;
    worst[j] = cost ? hi : lo;
  }
  std::vector<double> closeness(rows, 0.0);
  for (std::size_t i = 0; i < rows; ++i) {
    double dp = 0.0, dm = 0.0;
    for (std::size_t j = 0; j < cols; ++j) {
      dp += (v[i][j] - best[j]) * (v[i][j] - best[j]);
      dm += (v[i][j] - worst[j]) * (v[i][j] - worst[j]);
    }
    dp = std::sqrt(dp);
    dm = std::sqrt(dm);
    closeness[i] = dp + dm == 0.0 ? 0.0 : dm / (dp + dm);
  }
  return closeness;
}

/// Reciprocally consistent judgement matrix built from a weight vector;
/// its principal eigenvector is the weight vector itself.
inline std::vector<std::vector<double>> consistent_matrix(
    const std::vector<double>& w) {
  const std::size_t n = w.size();
  std::vector<std::vector<double>> m(n, std::vector<double>(n, 1.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m[i][j] = w[i] / w[j];
  return m;
}

} // namespace oracles
