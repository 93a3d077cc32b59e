#include "hoprank/guard_channel.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>

#include "hoprank/errors.hpp"

namespace hoprank {

double GuardChannelSpec::arrival_rate(int busy) const {
  if (busy < total_channels - guard_channels) {
    return lambda_new + lambda_handoff;
  }
  return lambda_handoff;
}

void GuardChannelSpec::validate() const {
  if (total_channels < 1) {
    throw ValidationError("total_channels must be at least 1");
  }
  if (guard_channels < 0 || guard_channels >= total_channels) {
    throw ValidationError(
        "guard_channels must lie in [0, total_channels)");
  }
  auto check = [](double v, const char* name) {
    if (!std::isfinite(v) || v < 0) {
      throw ValidationError(std::string(name) +
                            " must be finite and non-negative");
    }
  };
  check(lambda_new, "lambda_new");
  check(lambda_handoff, "lambda_handoff");
  check(mu_call, "mu_call");
  check(eta_dwell, "eta_dwell");
}

std::vector<double> stationary_distribution(const GuardChannelSpec& spec) {
  spec.validate();
  if (spec.service_rate() <= 0) {
    throw DegenerateChainError(
        "channels are never released: mu_call + eta_dwell is zero");
  }
  const int states = spec.total_channels + 1;
  std::vector<double> w(static_cast<std::size_t>(states));
  w[0] = 1;
  for (int n = 1; n < states; ++n) {
    w[n] = w[n - 1] * spec.arrival_rate(n - 1) / (n * spec.service_rate());
    if (w[n] > 1e250) { // keep the running product representable
      for (int j = 0; j <= n; ++j) w[j] *= 1e-250;
    }
  }
  double sum = 0;
  for (double v : w) sum += v;
  if (!std::isfinite(sum) || sum <= 0) {
    throw DegenerateChainError(
        "stationary weights cannot be normalized");
  }
  for (double& v : w) v /= sum;
  return w;
}

BlockingResult blocking_probabilities(const GuardChannelSpec& spec) {
  BlockingResult r;
  r.stationary = stationary_distribution(spec);
  const int threshold = spec.total_channels - spec.guard_channels;
  r.p_block_new = 0;
  for (int n = threshold; n <= spec.total_channels; ++n) {
    r.p_block_new += r.stationary[static_cast<std::size_t>(n)];
  }
  r.p_drop_handoff = r.stationary.back();
  return r;
}

double erlang_b(int channels, double offered_load) {
  if (channels < 0) {
    throw ValidationError("channel count must be non-negative");
  }
  if (!std::isfinite(offered_load) || offered_load < 0) {
    throw ValidationError("offered load must be finite and non-negative");
  }
  double b = 1;
  for (int k = 1; k <= channels; ++k) {
    b = offered_load * b / (k + offered_load * b);
  }
  return b;
}

void MobilityParams::validate() const {
  if (!std::isfinite(speed_mps) || speed_mps < 0) {
    throw ValidationError("speed must be finite and non-negative");
  }
  if (!std::isfinite(radius_m) || radius_m <= 0) {
    throw ValidationError("cell radius must be finite and positive");
  }
  if (!std::isfinite(holding_time_s) || holding_time_s <= 0) {
    throw ValidationError("holding time must be finite and positive");
  }
}

double dwell_rate(const MobilityParams& m) {
  m.validate();
  constexpr double pi = 3.14159265358979323846;
  return 2 * m.speed_mps / (pi * m.radius_m);
}

double completion_rate(const MobilityParams& m) {
  m.validate();
  return 1 / m.holding_time_s;
}

FixedPointResult handoff_rate_fixed_point(const GuardChannelSpec& spec) {
  GuardChannelSpec cur = spec;
  cur.lambda_handoff = 0;
  cur.validate();
  const double handoff_fraction =
      cur.eta_dwell / (cur.eta_dwell + cur.mu_call);
  const double tol = 1e-10 * cur.lambda_new;
  for (int it = 1; it <= 1000; ++it) {
    BlockingResult b = blocking_probabilities(cur);
    const double next =
        (cur.lambda_new * (1 - b.p_block_new) +
         cur.lambda_handoff * (1 - b.p_drop_handoff)) *
        handoff_fraction;
    const double prev = cur.lambda_handoff;
    cur.lambda_handoff = next;
    if (std::abs(next - prev) <= tol) {
      BlockingResult fin = blocking_probabilities(cur);
      return {next, it, fin.p_block_new, fin.p_drop_handoff};
    }
  }
  throw ConvergenceError(
      "handoff arrival rate did not settle within 1000 iterations",
      {cur.lambda_handoff});
}

int effective_channels(HandoverMode mode, int total_channels) {
  if (total_channels < 1) {
    throw ValidationError("total_channels must be at least 1");
  }
  if (mode == HandoverMode::Hard) return total_channels;
  return total_channels / 2;
}

namespace {

double fit_residual(double achieved, double target) {
  const double floor = 1e-300;
  return std::abs(std::log10(std::max(achieved, floor) /
                             std::max(target, floor)));
}

struct GridPoint {
  double residual;
  CalibrationResult result;
};

GridPoint evaluate_grid_point(const GuardChannelSpec& base,
                              const CalibrationTargets& targets,
                              double lambda_new, double lambda_handoff) {
  GuardChannelSpec hard = base;
  hard.lambda_new = lambda_new;
  hard.lambda_handoff = lambda_handoff;

  GuardChannelSpec soft = hard;
  soft.total_channels = effective_channels(HandoverMode::Soft,
                                           base.total_channels);
  soft.guard_channels = std::min(base.guard_channels,
                                 soft.total_channels - 1);

  BlockingResult bh = blocking_probabilities(hard);
  BlockingResult bs = blocking_probabilities(soft);

  GridPoint gp;
  gp.result.lambda_new = lambda_new;
  gp.result.lambda_handoff = lambda_handoff;
  gp.result.hard_p_block = bh.p_block_new;
  gp.result.hard_p_drop = bh.p_drop_handoff;
  gp.result.soft_p_block = bs.p_block_new;
  gp.result.soft_p_drop = bs.p_drop_handoff;
  gp.residual = std::max(
      std::max(fit_residual(bh.p_block_new, targets.hard_p_block),
               fit_residual(bh.p_drop_handoff, targets.hard_p_drop)),
      std::max(fit_residual(bs.p_block_new, targets.soft_p_block),
               fit_residual(bs.p_drop_handoff, targets.soft_p_drop)));
  gp.result.residual = gp.residual;
  return gp;
}

} // namespace

CalibrationResult calibrate_arrival_rates(const GuardChannelSpec& base,
                                          const CalibrationTargets& targets,
                                          int grid_points_per_axis,
                                          double max_rate, ExecMode mode) {
  base.validate();
  if (grid_points_per_axis < 1) {
    throw ValidationError("grid needs at least one point per axis");
  }
  if (!std::isfinite(max_rate) || max_rate <= 0) {
    throw ValidationError("max_rate must be finite and positive");
  }
  if (base.total_channels < 2) {
    throw ValidationError("calibration needs at least 2 channels");
  }

  const int n = grid_points_per_axis;
  const auto total = static_cast<std::int64_t>(n) * n;
  std::vector<double> residuals(static_cast<std::size_t>(total));

  auto rate_at = [&](int i) { return max_rate * (i + 1) / n; };

  // Residuals are filled independently per grid point; the winning index
  // is then chosen by a serial scan so both modes agree bit for bit.
#pragma omp parallel for schedule(static) if (mode == ExecMode::Parallel)
  for (std::int64_t k = 0; k < total; ++k) {
    const int i = static_cast<int>(k / n);
    const int j = static_cast<int>(k % n);
    residuals[static_cast<std::size_t>(k)] =
        evaluate_grid_point(base, targets, rate_at(i), rate_at(j)).residual;
  }

  std::int64_t best = 0;
  for (std::int64_t k = 1; k < total; ++k) {
    if (residuals[static_cast<std::size_t>(k)] <
        residuals[static_cast<std::size_t>(best)]) {
      best = k;
    }
  }
  const int bi = static_cast<int>(best / n);
  const int bj = static_cast<int>(best % n);
  return evaluate_grid_point(base, targets, rate_at(bi), rate_at(bj)).result;
}

} // namespace hoprank
