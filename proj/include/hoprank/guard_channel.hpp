#pragma once

#include <vector>

#include "hoprank/exec.hpp"
#include "hoprank/timelines.hpp"

namespace hoprank {

/// A single cell with a fixed channel pool. New calls are admitted only
/// while the pool has more than guard_channels free; handoff arrivals may
/// use every channel. Channel holding ends when the call completes or the
/// mobile leaves the cell, whichever comes first.
struct GuardChannelSpec {
  int total_channels = 0;
  int guard_channels = 0;
  double lambda_new = 0;     // new-call arrivals per second
  double lambda_handoff = 0; // handoff arrivals per second
  double mu_call = 0;        // call completions per second per busy channel
  double eta_dwell = 0;      // cell departures per second per busy channel

  double arrival_rate(int busy) const;
  double service_rate() const { return mu_call + eta_dwell; }

  /// Throws ValidationError unless 1 <= total_channels,
  /// 0 <= guard_channels < total_channels, and all rates are finite and
  /// non-negative.
  void validate() const;
};

/// Occupancy distribution of the cell in steady state, one probability per
/// state 0..total_channels. Throws DegenerateChainError when no stationary
/// distribution exists: channels are never released (zero service rate) or
/// the weights cannot be normalized.
std::vector<double> stationary_distribution(const GuardChannelSpec& spec);

struct BlockingResult {
  std::vector<double> stationary;
  double p_block_new;    // new call finds the guard region already busy
  double p_drop_handoff; // handoff finds every channel busy
};

BlockingResult blocking_probabilities(const GuardChannelSpec& spec);

/// Loss probability of an M/M/k/k queue at offered load a, by the stable
/// one-pass recursion.
double erlang_b(int channels, double offered_load);

struct MobilityParams {
  double speed_mps = 0;
  double radius_m = 0;
  double holding_time_s = 0;

  /// speed >= 0, radius > 0, holding time > 0, all finite.
  void validate() const;
};

/// Rate at which a call leaves its current cell: the reciprocal of the
/// mean dwell time pi*r/(2*v) for straight-line crossings of a disc.
/// Zero when the node is stationary.
double dwell_rate(const MobilityParams& m);

/// Call-completion rate, 1 / holding_time.
double completion_rate(const MobilityParams& m);

struct FixedPointResult {
  double lambda_handoff = 0;
  int iterations = 0;
  double p_block_new = 0;
  double p_drop_handoff = 0;
};

/// Solves for the handoff arrival rate consistent with the cell's own
/// carried traffic: admitted calls hand off before completing with odds
/// eta/(eta + mu). Iterates from zero until successive rates agree within
/// 1e-10 * lambda_new; throws ConvergenceError (carrying the last rate)
/// after 1000 rounds. The lambda_handoff field of `spec` seeds nothing and
/// is ignored.
FixedPointResult handoff_rate_fixed_point(const GuardChannelSpec& spec);

/// Soft handover keeps the old link alive through the switch, so only half
/// the pool (rounded down) is usable; hard handover keeps the full pool.
/// May return 0 (soft with a single channel); downstream validation
/// rejects that as a degenerate cell.
int effective_channels(HandoverMode mode, int total_channels);

struct CalibrationTargets {
  double hard_p_block = 0;
  double hard_p_drop = 0;
  double soft_p_block = 0;
  double soft_p_drop = 0;
};

struct CalibrationResult {
  double lambda_new = 0;
  double lambda_handoff = 0;
  // Worst absolute log10 ratio between an achieved probability and its
  // target, across the four targets.
  double residual = 0;
  double hard_p_block = 0;
  double hard_p_drop = 0;
  double soft_p_block = 0;
  double soft_p_drop = 0;
};

/// Grid search over arrival-rate pairs for the combination that best
/// reproduces a published pair of blocking figures under hard handover
/// (full pool) and soft handover (half pool) simultaneously. Purely
/// informational: the best point is returned with its residual, however
/// poor the fit. Deterministic in both execution modes; ties resolve to
/// the smallest grid index.
CalibrationResult calibrate_arrival_rates(const GuardChannelSpec& base,
                                          const CalibrationTargets& targets,
                                          int grid_points_per_axis,
                                          double max_rate,
                                          ExecMode mode = ExecMode::Serial);

} // namespace hoprank
