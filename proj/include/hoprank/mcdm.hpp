#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "hoprank/exec.hpp"

namespace hoprank {

/// Square matrix of pairwise importance judgements: positive, unit
/// diagonal, reciprocal (a_ij * a_ji = 1 within 1e-9).
class PairwiseMatrix {
public:
  explicit PairwiseMatrix(std::vector<std::vector<double>> values);

  std::size_t size() const { return values_.size(); }
  double at(std::size_t i, std::size_t j) const { return values_[i][j]; }
  const std::vector<std::vector<double>>& values() const { return values_; }

private:
  std::vector<std::vector<double>> values_;
};

/// Non-negative weights summing to 1 within 1e-12.
struct WeightVector {
  std::vector<double> values;

  void validate() const;
  static WeightVector equal(std::size_t n);
  /// Scales a non-negative vector with positive sum to sum 1.
  static WeightVector normalized(std::vector<double> raw);
};

struct AhpResult {
  WeightVector weights;
  double lambda_max = 0;
  int iterations = 0;
};

/// Principal-eigenvector weights by power iteration: start uniform,
/// stop when successive sum-normalized iterates differ by less than 1e-12
/// in max norm, cap 10,000 rounds (ConvergenceError past the cap, carrying
/// the last iterate). lambda_max is the Rayleigh quotient at the fixpoint.
AhpResult ahp_weights(const PairwiseMatrix& m);

/// Row-geometric-mean approximation, kept as a cross-check on the
/// eigenvector method (identical on consistent matrices).
WeightVector ahp_weights_geometric(const PairwiseMatrix& m);

struct ConsistencyResult {
  double lambda_max = 0;
  double ci = 0;
  double cr = 0;
};

/// CI = (lambda_max - n)/(n - 1) for n >= 2, else 0; CR = CI / RI(n) with
/// Saaty's tabulated random indices, 0 whenever RI(n) = 0. Matrices larger
/// than 10 have no tabulated index and raise UnsupportedFormError.
ConsistencyResult consistency_ratio(const PairwiseMatrix& m);

enum class Direction { Cost, Benefit };

/// Alternatives x criteria matrix with per-criterion optimization
/// direction. Every column must carry at least one nonzero value so
/// vector normalization is defined.
struct DecisionMatrix {
  std::vector<std::string> alternatives;
  std::vector<std::string> criteria;
  std::vector<Direction> directions;
  std::vector<std::vector<double>> values; // [alternative][criterion]

  std::size_t alternative_count() const { return alternatives.size(); }
  std::size_t criterion_count() const { return criteria.size(); }
  void validate() const;
};

struct Ranking {
  std::vector<double> closeness;    // by input row
  std::vector<std::size_t> order;   // row indices, best first
  bool total_tie = false;
  std::vector<std::string> notes;
};

/// Classic TOPSIS with vector normalization: r_ij = x_ij / sqrt(sum x^2),
/// weighted, ideal point takes the per-column min for cost criteria and
/// max for benefit, Euclidean distances, closeness = d-/(d+ + d-).
/// An alternative coinciding with both ideals scores 0 (only possible when
/// all alternatives are identical; reported as a total tie). Ties in the
/// order break toward the lower input index.
Ranking topsis(const DecisionMatrix& dm, const WeightVector& w);

struct WeightSearchResult {
  bool found = false;
  WeightVector weights;          // best profile when found
  double min_gap = 0;            // smallest closeness gap along the order
  std::size_t matching_profiles = 0;
  std::size_t profiles_tested = 0;
};

/// Exhaustive scan of the weight simplex at the given resolution (all
/// compositions of `resolution` into one part per criterion) for profiles
/// whose TOPSIS order equals `target_order` with strictly decreasing
/// closeness. Returns the profile maximizing the smallest adjacent gap;
/// deterministic in both execution modes (ties toward the lower
/// enumeration index).
WeightSearchResult search_weights_for_order(
    const DecisionMatrix& dm, const std::vector<std::size_t>& target_order,
    int resolution, ExecMode mode = ExecMode::Serial);

} // namespace hoprank
