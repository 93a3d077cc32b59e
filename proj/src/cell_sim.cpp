#include "hoprank/cell_sim.hpp"

#include <cassert>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "hoprank/errors.hpp"

namespace hoprank {

namespace {

constexpr const char* kGeneratorTag = "mt19937_64/jump-chain/v1";

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Uniform in [0, 1) with 53 random bits, independent of library
// distribution implementations.
double uniform01(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

void finish_estimates(SimStats& s) {
  if (s.new_offered > 0) {
    const double p =
        static_cast<double>(s.new_blocked) / static_cast<double>(s.new_offered);
    s.p_block_hat = p;
    s.se_block = std::sqrt(p * (1 - p) / static_cast<double>(s.new_offered));
  }
  if (s.handoff_offered > 0) {
    const double p = static_cast<double>(s.handoff_dropped) /
                     static_cast<double>(s.handoff_offered);
    s.p_drop_hat = p;
    s.se_drop =
        std::sqrt(p * (1 - p) / static_cast<double>(s.handoff_offered));
  }
}

} // namespace

std::uint64_t SimConfig::effective_warmup() const {
  if (warmup_arrivals) return *warmup_arrivals;
  return target_arrivals / 100;
}

void SimConfig::validate() const {
  spec.validate();
  if (target_arrivals == 0) {
    throw ValidationError("target_arrivals must be positive");
  }
  if (effective_warmup() >= target_arrivals) {
    throw ValidationError("warmup_arrivals must be below target_arrivals");
  }
}

SimStats simulate(const SimConfig& cfg) {
  cfg.validate();
  SimStats stats;
  stats.generator = kGeneratorTag;
  stats.seed = cfg.seed;

  const GuardChannelSpec& spec = cfg.spec;
  const double lambda_total = spec.lambda_new + spec.lambda_handoff;
  if (lambda_total <= 0) {
    return stats; // no traffic will ever arrive
  }

  const std::uint64_t warmup = cfg.effective_warmup();
  const int admit_new_below = spec.total_channels - spec.guard_channels;
  std::mt19937_64 gen(cfg.seed);

  int busy = 0;
  std::uint64_t arrivals = 0;
  while (arrivals < cfg.target_arrivals) {
    assert(busy >= 0 && busy <= spec.total_channels);
    const double departure = busy * spec.service_rate();
    const double total = lambda_total + departure;
    const double u = uniform01(gen) * total;
    if (u < spec.lambda_new) {
      ++arrivals;
      const bool counted = arrivals > warmup;
      if (counted) ++stats.new_offered;
      if (busy < admit_new_below) {
        ++busy;
      } else if (counted) {
        ++stats.new_blocked;
      }
    } else if (u < lambda_total) {
      ++arrivals;
      const bool counted = arrivals > warmup;
      if (counted) ++stats.handoff_offered;
      if (busy < spec.total_channels) {
        ++busy;
      } else if (counted) {
        ++stats.handoff_dropped;
      }
    } else {
      --busy;
    }
  }

  finish_estimates(stats);
  return stats;
}

SimStats simulate_replications(const SimConfig& cfg, int replications,
                               ExecMode mode) {
  cfg.validate();
  if (replications < 1) {
    throw ValidationError("replications must be at least 1");
  }

  std::vector<SimStats> parts(static_cast<std::size_t>(replications));

#pragma omp parallel for schedule(static) if (mode == ExecMode::Parallel)
  for (int r = 0; r < replications; ++r) {
    SimConfig sub = cfg;
    sub.seed = splitmix64(cfg.seed + static_cast<std::uint64_t>(r));
    parts[static_cast<std::size_t>(r)] = simulate(sub);
  }

  SimStats merged;
  merged.generator = kGeneratorTag;
  merged.seed = cfg.seed;
  merged.replications = replications;
  for (const SimStats& p : parts) {
    merged.new_offered += p.new_offered;
    merged.new_blocked += p.new_blocked;
    merged.handoff_offered += p.handoff_offered;
    merged.handoff_dropped += p.handoff_dropped;
  }
  finish_estimates(merged);
  return merged;
}

namespace {

MetricComparison compare_metric(std::uint64_t offered, std::uint64_t bad,
                                double analytic, const char* stream) {
  MetricComparison c;
  c.analytic = analytic;
  if (offered == 0) {
    c.available = false;
    c.note = std::string("insufficient data: no ") + stream + " offered";
    return c;
  }
  c.available = true;
  const double hat =
      static_cast<double>(bad) / static_cast<double>(offered);
  c.estimate = hat;
  const double se =
      std::sqrt(analytic * (1 - analytic) / static_cast<double>(offered));
  if (se == 0) {
    c.z = hat == analytic ? 0 : std::numeric_limits<double>::infinity();
  } else {
    c.z = (hat - analytic) / se;
  }
  c.pass = std::abs(*c.z) <= 3;
  return c;
}

} // namespace

ComparisonReport compare_to_analytic(const SimStats& stats,
                                     const GuardChannelSpec& spec) {
  if (stats.new_offered == 0 && stats.handoff_offered == 0) {
    throw InsufficientDataError(
        "simulation offered no traffic; nothing to compare");
  }
  const BlockingResult analytic = blocking_probabilities(spec);
  ComparisonReport report;
  report.block = compare_metric(stats.new_offered, stats.new_blocked,
                                analytic.p_block_new, "new calls");
  report.drop = compare_metric(stats.handoff_offered, stats.handoff_dropped,
                               analytic.p_drop_handoff, "handoffs");
  report.pass = (!report.block.available || report.block.pass) &&
                (!report.drop.available || report.drop.pass);
  return report;
}

} // namespace hoprank
