#include <chrono>
#include <cstdio>
#include <functional>
#include <vector>

#include "hoprank/cell_sim.hpp"
#include "hoprank/exec.hpp"
#include "hoprank/guard_channel.hpp"
#include "hoprank/mcdm.hpp"
#include "hoprank/report.hpp"

using namespace hoprank;

namespace {

double time_ms(const std::function<void()>& fn) {
  auto t0 = std::chrono::steady_clock::now();
  fn();
  auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

struct BenchRow {
  const char* name;
  double serial_ms;
  double parallel_ms;
  bool identical;
};

} // namespace

int main() {
  std::vector<BenchRow> rows;

  {
    GuardChannelSpec spec;
    spec.total_channels = 10;
    spec.guard_channels = 3;
    spec.lambda_new = 2.0;
    spec.lambda_handoff = 0.5;
    spec.mu_call = 1.0;
    spec.eta_dwell = 0.1;
    SimConfig cfg;
    cfg.spec = spec;
    cfg.target_arrivals = 200000;
    cfg.seed = 20240817;
    const int reps = 16;
    SimStats serial, parallel;
    double ts = time_ms([&] {
      serial = simulate_replications(cfg, reps, ExecMode::Serial);
    });
    double tp = time_ms([&] {
      parallel = simulate_replications(cfg, reps, ExecMode::Parallel);
    });
    rows.push_back({"simulate_replications (16 x 200k arrivals)", ts, tp,
                    serial == parallel});
  }

  {
    GuardChannelSpec base;
    base.total_channels = 10;
    base.guard_channels = 3;
    base.mu_call = 1.0 / 300.0;
    base.eta_dwell = 1.061e-3;
    CalibrationTargets targets{1.82e-3, 6.74e-11, 0.56, 2.5e-5};
    CalibrationResult serial, parallel;
    double ts = time_ms([&] {
      serial = calibrate_arrival_rates(base, targets, 120, 0.2, ExecMode::Serial);
    });
    double tp = time_ms([&] {
      parallel =
          calibrate_arrival_rates(base, targets, 120, 0.2, ExecMode::Parallel);
    });
    bool same = serial.lambda_new == parallel.lambda_new &&
                serial.lambda_handoff == parallel.lambda_handoff &&
                serial.residual == parallel.residual;
    rows.push_back({"calibrate_arrival_rates (120 x 120 grid)", ts, tp, same});
  }

  {
    DecisionMatrix dm = reference_decision_matrix();
    std::vector<std::size_t> target;
    for (ProtocolId id : reference_rank_order())
      target.push_back(static_cast<std::size_t>(id));
    WeightSearchResult serial, parallel;
    double ts = time_ms([&] {
      serial = search_weights_for_order(dm, target, 24, ExecMode::Serial);
    });
    double tp = time_ms([&] {
      parallel = search_weights_for_order(dm, target, 24, ExecMode::Parallel);
    });
    bool same = serial.found == parallel.found &&
                serial.min_gap == parallel.min_gap &&
                serial.matching_profiles == parallel.matching_profiles &&
                (!serial.found ||
                 serial.weights.values == parallel.weights.values);
    rows.push_back({"search_weights_for_order (resolution 24)", ts, tp, same});
  }

  std::printf("%-46s %12s %12s %9s %6s\n", "kernel", "serial ms", "parallel ms",
              "speedup", "match");
  bool all_match = true;
  for (const BenchRow& r : rows) {
    std::printf("%-46s %12.1f %12.1f %8.2fx %6s\n", r.name, r.serial_ms,
                r.parallel_ms,
                r.parallel_ms > 0 ? r.serial_ms / r.parallel_ms : 0.0,
                r.identical ? "yes" : "NO");
    all_match = all_match && r.identical;
  }
  std::printf("threads available: %d\n", max_threads());
  return all_match ? 0 : 1;
}
