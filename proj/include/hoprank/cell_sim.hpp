#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "hoprank/exec.hpp"
#include "hoprank/guard_channel.hpp"

namespace hoprank {

/// One simulation run. Statistics start after the first warmup_arrivals
/// arrivals; when warmup is left unset it defaults to 1% of the target.
struct SimConfig {
  GuardChannelSpec spec;
  std::uint64_t target_arrivals = 0;
  std::optional<std::uint64_t> warmup_arrivals;
  std::uint64_t seed = 0;

  std::uint64_t effective_warmup() const;
  void validate() const;
};

struct SimStats {
  std::uint64_t new_offered = 0;
  std::uint64_t new_blocked = 0;
  std::uint64_t handoff_offered = 0;
  std::uint64_t handoff_dropped = 0;
  std::optional<double> p_block_hat; // absent when no new calls offered
  std::optional<double> p_drop_hat;  // absent when no handoffs offered
  std::optional<double> se_block;
  std::optional<double> se_drop;
  std::string generator;
  std::uint64_t seed = 0;
  int replications = 1;

  friend bool operator==(const SimStats&, const SimStats&) = default;
};

/// Simulates the cell's occupancy process arrival by arrival: Poisson new
/// and handoff streams, exponential holding at mu_call + eta_dwell per busy
/// channel, guard-channel admission. The embedded jump chain is simulated
/// directly (event types drawn by rate); arrival-seen statistics are
/// distributionally identical to the clocked process. Deterministic per
/// seed: identical configs give bit-identical stats.
SimStats simulate(const SimConfig& cfg);

/// Runs `replications` independent copies with per-replication seeds
/// derived from cfg.seed, merging by summing counts. The merge is
/// order-independent, so serial and parallel execution agree bit for bit.
SimStats simulate_replications(const SimConfig& cfg, int replications,
                               ExecMode mode = ExecMode::Serial);

struct MetricComparison {
  bool available = false; // false when that stream offered no traffic
  double analytic = 0;
  std::optional<double> estimate;
  std::optional<double> z;
  bool pass = false;
  std::string note;
};

struct ComparisonReport {
  MetricComparison block;
  MetricComparison drop;
  bool pass = false; // every available metric within 3 standard errors
};

/// Z-scores of the simulated estimates against the analytic chain solution
/// for the same spec, using the binomial standard error at the analytic
/// probability. A stream with no offered traffic is marked unavailable
/// (insufficient data) rather than failed; if neither stream offered
/// traffic the whole comparison is impossible and InsufficientDataError is
/// thrown.
ComparisonReport compare_to_analytic(const SimStats& stats,
                                     const GuardChannelSpec& spec);

} // namespace hoprank
