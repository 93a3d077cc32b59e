#include "hoprank/mcdm.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <string>

#include "hoprank/errors.hpp"

namespace hoprank {

PairwiseMatrix::PairwiseMatrix(std::vector<std::vector<double>> values)
    : values_(std::move(values)) {
  const std::size_t n = values_.size();
  if (n == 0) throw ValidationError("pairwise matrix must not be empty");
  for (std::size_t i = 0; i < n; ++i) {
    if (values_[i].size() != n) {
      throw ValidationError("pairwise matrix row " + std::to_string(i + 1) +
                            " has " + std::to_string(values_[i].size()) +
                            " entries, expected " + std::to_string(n));
    }
    for (std::size_t j = 0; j < n; ++j) {
      const double v = values_[i][j];
      if (!std::isfinite(v) || v <= 0) {
        throw ValidationError("pairwise entry (" + std::to_string(i + 1) +
                              "," + std::to_string(j + 1) +
                              ") must be finite and positive");
      }
    }
    if (std::abs(values_[i][i] - 1) > 1e-9) {
      throw ValidationError("pairwise diagonal entry " +
                            std::to_string(i + 1) + " must be 1");
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (std::abs(values_[i][j] * values_[j][i] - 1) > 1e-9) {
        throw ValidationError(
            "pairwise entries (" + std::to_string(i + 1) + "," +
            std::to_string(j + 1) + ") and its mirror are not reciprocal");
      }
    }
  }
}

void WeightVector::validate() const {
  if (values.empty()) throw ValidationError("weight vector must not be empty");
  double sum = 0;
  for (double v : values) {
    if (!std::isfinite(v) || v < 0) {
      throw ValidationError("weights must be finite and non-negative");
    }
    sum += v;
  }
  if (std::abs(sum - 1) > 1e-12) {
    throw ValidationError("weights must sum to 1 (got " +
                          std::to_string(sum) + ")");
  }
}

WeightVector WeightVector::equal(std::size_t n) {
  if (n == 0) throw ValidationError("weight vector must not be empty");
  std::vector<double> v(n, 1.0 / static_cast<double>(n));
  return normalized(std::move(v));
}

WeightVector WeightVector::normalized(std::vector<double> raw) {
  double sum = 0;
  for (double v : raw) {
    if (!std::isfinite(v) || v < 0) {
      throw ValidationError("weights must be finite and non-negative");
    }
    sum += v;
  }
  if (sum <= 0) throw ValidationError("weights must have a positive sum");
  for (double& v : raw) v /= sum;
  // Nudge the largest entry so the total is exactly 1 in floating point.
  double total = std::accumulate(raw.begin(), raw.end(), 0.0);
  auto top = std::max_element(raw.begin(), raw.end());
  *top += 1 - total;
  WeightVector w{std::move(raw)};
  w.validate();
  return w;
}

AhpResult ahp_weights(const PairwiseMatrix& m) {
  const std::size_t n = m.size();
  std::vector<double> x(n, 1.0 / static_cast<double>(n));
  std::vector<double> y(n);
  int iterations = 0;
  bool converged = false;
  for (int it = 1; it <= 10000; ++it) {
    for (std::size_t i = 0; i < n; ++i) {
      double acc = 0;
      for (std::size_t j = 0; j < n; ++j) acc += m.at(i, j) * x[j];
      y[i] = acc;
    }
    const double sum = std::accumulate(y.begin(), y.end(), 0.0);
    double diff = 0;
    for (std::size_t i = 0; i < n; ++i) {
      y[i] /= sum;
      diff = std::max(diff, std::abs(y[i] - x[i]));
    }
    x = y;
    iterations = it;
    if (diff < 1e-12) {
      converged = true;
      break;
    }
  }
  if (!converged) {
    throw ConvergenceError(
        "power iteration did not settle within 10000 rounds", x);
  }
  double xmx = 0;
  double xx = 0;
  for (std::size_t i = 0; i < n; ++i) {
    double acc = 0;
    for (std::size_t j = 0; j < n; ++j) acc += m.at(i, j) * x[j];
    xmx += x[i] * acc;
    xx += x[i] * x[i];
  }
  AhpResult r;
  r.weights = WeightVector::normalized(x);
  r.lambda_max = xmx / xx;
  r.iterations = iterations;
  return r;
}

WeightVector ahp_weights_geometric(const PairwiseMatrix& m) {
  const std::size_t n = m.size();
  std::vector<double> g(n);
  for (std::size_t i = 0; i < n; ++i) {
    double log_sum = 0;
    for (std::size_t j = 0; j < n; ++j) log_sum += std::log(m.at(i, j));
    g[i] = std::exp(log_sum / static_cast<double>(n));
  }
  return WeightVector::normalized(std::move(g));
}

ConsistencyResult consistency_ratio(const PairwiseMatrix& m) {
  // Saaty random indices for orders 1..10.
  static constexpr double kRandomIndex[10] = {0,    0,    0.58, 0.90, 1.12,
                                              1.24, 1.32, 1.41, 1.45, 1.49};
  const std::size_t n = m.size();
  if (n > 10) {
    throw UnsupportedFormError(
        "no tabulated random index for order " + std::to_string(n) +
        " (supported up to 10)");
  }
  ConsistencyResult r;
  r.lambda_max = ahp_weights(m).lambda_max;
  r.ci = n < 2 ? 0
               : (r.lambda_max - static_cast<double>(n)) /
                     (static_cast<double>(n) - 1);
  const double ri = kRandomIndex[n - 1];
  r.cr = ri == 0 ? 0 : r.ci / ri;
  return r;
}

void DecisionMatrix::validate() const {
  const std::size_t m = alternatives.size();
  const std::size_t n = criteria.size();
  if (values.size() != m) {
    throw ValidationError("decision matrix has " +
                          std::to_string(values.size()) + " rows for " +
                          std::to_string(m) + " alternatives");
  }
  if (directions.size() != n) {
    throw ValidationError("decision matrix has " +
                          std::to_string(directions.size()) +
                          " directions for " + std::to_string(n) +
                          " criteria");
  }
  for (std::size_t i = 0; i < m; ++i) {
    if (values[i].size() != n) {
      throw ValidationError("decision matrix row \"" + alternatives[i] +
                            "\" has " + std::to_string(values[i].size()) +
                            " values, expected " + std::to_string(n));
    }
    for (double v : values[i]) {
      if (!std::isfinite(v)) {
        throw ValidationError("decision matrix value for \"" +
                              alternatives[i] + "\" is not finite");
      }
    }
  }
  for (std::size_t j = 0; j < n; ++j) {
    bool nonzero = false;
    for (std::size_t i = 0; i < m; ++i) {
      if (values[i][j] != 0) {
        nonzero = true;
        break;
      }
    }
    if (!nonzero) {
      throw ValidationError(
          "criterion \"" + criteria[j] +
          "\" is zero for every alternative; vector normalization is "
          "undefined — drop it from the criteria list or supply nonzero "
          "values");
    }
  }
}

Ranking topsis(const DecisionMatrix& dm, const WeightVector& w) {
  dm.validate();
  w.validate();
  const std::size_t m = dm.alternative_count();
  const std::size_t n = dm.criterion_count();
  if (m < 2) {
    throw DegenerateInputError("ranking needs at least 2 alternatives, got " +
                               std::to_string(m));
  }
  if (w.values.size() != n) {
    throw ValidationError("weight count " + std::to_string(w.values.size()) +
                          " does not match criterion count " +
                          std::to_string(n));
  }

  std::vector<std::vector<double>> v(m, std::vector<double>(n));
  for (std::size_t j = 0; j < n; ++j) {
    double ss = 0;
    for (std::size_t i = 0; i < m; ++i) ss += dm.values[i][j] * dm.values[i][j];
    const double norm = std::sqrt(ss);
    for (std::size_t i = 0; i < m; ++i) {
      v[i][j] = w.values[j] * dm.values[i][j] / norm;
    }
  }

  std::vector<double> ideal(n);
  std::vector<double> anti(n);
  for (std::size_t j = 0; j < n; ++j) {
    double lo = v[0][j];
    double hi = v[0][j];
    for (std::size_t i = 1; i < m; ++i) {
      lo = std::min(lo, v[i][j]);
      hi = std::max(hi, v[i][j]);
    }
    const bool cost = dm.directions[j] == Direction::Cost;
    ideal[j] = cost ? lo : hi;
    anti[j] = cost ? hi : lo;
  }

  Ranking r;
  r.closeness.resize(m);
  bool any_separated = false;
  for (std::size_t i = 0; i < m; ++i) {
    double dp = 0;
    double dn = 0;
    for (std::size_t j = 0; j < n; ++j) {
      dp += (v[i][j] - ideal[j]) * (v[i][j] - ideal[j]);
      dn += (v[i][j] - anti[j]) * (v[i][j] - anti[j]);
    }
    dp = std::sqrt(dp);
    dn = std::sqrt(dn);
    if (dp + dn == 0) {
      r.closeness[i] = 0;
    } else {
      r.closeness[i] = dn / (dp + dn);
      any_separated = true;
    }
  }
  r.total_tie = !any_separated;
  if (r.total_tie) {
    r.notes.push_back("all alternatives are identical; total tie");
  }

  r.order.resize(m);
  std::iota(r.order.begin(), r.order.end(), std::size_t{0});
  std::stable_sort(r.order.begin(), r.order.end(),
                   [&r](std::size_t a, std::size_t b) {
                     return r.closeness[a] > r.closeness[b];
                   });
  for (std::size_t k = 0; k + 1 < m; ++k) {
    const std::size_t a = r.order[k];
    const std::size_t b = r.order[k + 1];
    if (r.closeness[a] == r.closeness[b] && !r.total_tie) {
      r.notes.push_back("tie between \"" + dm.alternatives[a] + "\" and \"" +
                        dm.alternatives[b] +
                        "\" broken by input order");
    }
  }
  return r;
}

namespace {

std::vector<std::vector<int>> simplex_grid(std::size_t parts, int resolution) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(parts);
  // Lexicographic recursion; the enumeration order is part of the
  // deterministic tie-break contract.
  auto rec = [&](auto&& self, std::size_t pos, int remaining) -> void {
    if (pos + 1 == parts) {
      cur[pos] = remaining;
      out.push_back(cur);
      return;
    }
    for (int v = 0; v <= remaining; ++v) {
      cur[pos] = v;
      self(self, pos + 1, remaining - v);
    }
  };
  rec(rec, 0, resolution);
  return out;
}

} // namespace

WeightSearchResult search_weights_for_order(
    const DecisionMatrix& dm, const std::vector<std::size_t>& target_order,
    int resolution, ExecMode mode) {
  dm.validate();
  const std::size_t m = dm.alternative_count();
  if (m < 2) {
    throw DegenerateInputError("ranking needs at least 2 alternatives, got " +
                               std::to_string(m));
  }
  if (resolution < 1) throw ValidationError("resolution must be at least 1");
  {
    std::vector<bool> seen(m, false);
    if (target_order.size() != m) {
      throw ValidationError("target order must list every alternative once");
    }
    for (std::size_t idx : target_order) {
      if (idx >= m || seen[idx]) {
        throw ValidationError("target order must be a permutation of rows");
      }
      seen[idx] = true;
    }
  }

  const auto grid = simplex_grid(dm.criterion_count(), resolution);
  const auto total = static_cast<std::int64_t>(grid.size());
  std::vector<double> gaps(grid.size(), -1);

#pragma omp parallel for schedule(static) if (mode == ExecMode::Parallel)
  for (std::int64_t k = 0; k < total; ++k) {
    std::vector<double> raw(grid[k].begin(), grid[k].end());
    WeightVector w = WeightVector::normalized(std::move(raw));
    Ranking rank = topsis(dm, w);
    if (rank.order != target_order) continue;
    double min_gap = std::numeric_limits<double>::infinity();
    for (std::size_t p = 0; p + 1 < m; ++p) {
      min_gap = std::min(min_gap, rank.closeness[rank.order[p]] -
                                      rank.closeness[rank.order[p + 1]]);
    }
    if (min_gap > 0) gaps[static_cast<std::size_t>(k)] = min_gap;
  }

  WeightSearchResult result;
  result.profiles_tested = grid.size();
  std::int64_t best = -1;
  for (std::int64_t k = 0; k < total; ++k) {
    const double g = gaps[static_cast<std::size_t>(k)];
    if (g < 0) continue;
    ++result.matching_profiles;
    if (best < 0 || g > gaps[static_cast<std::size_t>(best)]) best = k;
  }
  if (best >= 0) {
    result.found = true;
    result.min_gap = gaps[static_cast<std::size_t>(best)];
    std::vector<double> raw(grid[static_cast<std::size_t>(best)].begin(),
                            grid[static_cast<std::size_t>(best)].end());
    result.weights = WeightVector::normalized(std::move(raw));
  }
  return result;
}

} // namespace hoprank
