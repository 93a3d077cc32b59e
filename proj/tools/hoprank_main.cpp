#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <utility>

#include <CLI11.hpp>

#include "hoprank/cell_sim.hpp"
#include "hoprank/errors.hpp"
#include "hoprank/exec.hpp"
#include "hoprank/guard_channel.hpp"
#include "hoprank/report.hpp"
#include "hoprank/scenario.hpp"
#include "hoprank/version.hpp"

namespace {

using namespace hoprank;

/// "g=A..B"; B may be the literal C-1 for one short of the channel count.
std::pair<int, int> parse_sweep(const std::string& text, int channels_total) {
  auto fail = [&text]() {
    throw ValidationError("sweep must look like g=0..7 or g=0..C-1, got \"" +
                          text + "\"");
  };
  std::string body = text;
  if (body.rfind("g=", 0) == 0) body = body.substr(2);
  auto dots = body.find("..");
  if (dots == std::string::npos) fail();
  auto parse_bound = [&](std::string s) -> int {
    if (s == "C-1") return channels_total - 1;
    try {
      std::size_t used = 0;
      int v = std::stoi(s, &used);
      if (used != s.size()) fail();
      return v;
    } catch (const std::exception&) {
      fail();
    }
    return 0; // unreachable
  };
  return {parse_bound(body.substr(0, dots)), parse_bound(body.substr(dots + 2))};
}

GuardChannelSpec cell_spec(const ResolvedScenario& sc, double lambda_handoff) {
  GuardChannelSpec spec;
  spec.total_channels = sc.channels_total;
  spec.guard_channels = sc.guard_channels;
  spec.lambda_new = sc.new_call_rate;
  spec.lambda_handoff = lambda_handoff;
  spec.mu_call = sc.call_completion_rate;
  spec.eta_dwell = sc.dwell_departure_rate;
  return spec;
}

int run(int argc, char** argv) {
  CLI::App app{"Analytical handover comparison for MIPv6-family protocols"};
  app.set_version_flag("--version", std::string(kToolName) + " " + kVersion);
  app.require_subcommand(1);

  std::string scenario_path;
  std::string mode;
  std::string format = "text";

  CLI::App* evaluate = app.add_subcommand(
      "evaluate", "Render the per-protocol metric table for a scenario");
  evaluate->add_option("--scenario", scenario_path, "Scenario file")->required();
  evaluate->add_option("--mode", mode, "parametric or numeric")
      ->required()
      ->check(CLI::IsMember({"parametric", "numeric"}));
  evaluate->add_option("--format", format, "text, csv, or json")
      ->required()
      ->check(CLI::IsMember({"text", "csv", "json"}));

  std::string weights_path;
  std::string pairwise_path;
  bool override_blocking = false;
  CLI::App* rank = app.add_subcommand(
      "rank", "Rank the protocols by TOPSIS closeness under a scenario");
  rank->add_option("--scenario", scenario_path, "Scenario file")->required();
  CLI::Option* w_opt =
      rank->add_option("--weights", weights_path, "Weights file");
  rank->add_option("--pairwise", pairwise_path, "Pairwise-judgement file")
      ->excludes(w_opt);
  rank->add_flag("--override-blocking", override_blocking,
                 "Use the built-in reference blocking figures instead of the "
                 "chain solution");

  std::string sweep_text;
  CLI::App* blocking = app.add_subcommand(
      "blocking", "Guard-channel blocking probabilities for a scenario");
  blocking->add_option("--scenario", scenario_path, "Scenario file")->required();
  blocking->add_option("--sweep", sweep_text,
                       "Sweep guard channels, e.g. g=0..C-1");

  std::uint64_t arrivals = 0;
  std::uint64_t seed = 0;
  int replications = 1;
  CLI::App* simulate_cmd = app.add_subcommand(
      "simulate", "Simulate the cell and compare against the chain solution");
  simulate_cmd->add_option("--scenario", scenario_path, "Scenario file")
      ->required();
  simulate_cmd->add_option("--arrivals", arrivals, "Arrivals per replication")
      ->required();
  simulate_cmd->add_option("--seed", seed, "Base random seed")->required();
  simulate_cmd->add_option("--replications", replications, "Replication count")
      ->check(CLI::PositiveNumber);

  std::string ahp_pairwise_path;
  CLI::App* ahp = app.add_subcommand(
      "ahp", "Derive criterion weights from a pairwise-judgement matrix");
  ahp->add_option("--pairwise", ahp_pairwise_path, "Pairwise-judgement file")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  if (evaluate->parsed()) {
    ResolvedScenario sc = load_scenario_file(scenario_path);
    OutputFormat fmt = format_from_name(format);
    ReportTable table = mode == "parametric"
                            ? parametric_table(sc)
                            : numeric_table(evaluate_scenario(sc));
    std::cout << render_table(table, fmt);
    return 0;
  }

  if (rank->parsed()) {
    ResolvedScenario sc = load_scenario_file(scenario_path);
    RankOptions opts;
    if (!weights_path.empty()) opts.cli_weights = load_weights_file(weights_path);
    if (!pairwise_path.empty())
      opts.cli_pairwise = load_pairwise_file(pairwise_path);
    opts.override_blocking = override_blocking;
    RankOutcome outcome = run_rank(sc, opts);
    std::cout << render_table(outcome.matrix_table, OutputFormat::Text) << '\n';
    std::cout << render_table(outcome.result_table, OutputFormat::Text);
    for (const std::string& warning : outcome.warnings)
      std::cerr << "warning: " << warning << '\n';
    return 0;
  }

  if (blocking->parsed()) {
    ResolvedScenario sc = load_scenario_file(scenario_path);
    std::optional<std::pair<int, int>> sweep;
    if (!sweep_text.empty()) sweep = parse_sweep(sweep_text, sc.channels_total);
    std::cout << render_table(blocking_table(sc, sweep), OutputFormat::Text);
    return 0;
  }

  if (simulate_cmd->parsed()) {
    ResolvedScenario sc = load_scenario_file(scenario_path);
    double lambda_handoff;
    if (sc.handoff_rate) {
      lambda_handoff = *sc.handoff_rate;
    } else {
      GuardChannelSpec probe = cell_spec(sc, 0.0);
      lambda_handoff = handoff_rate_fixed_point(probe).lambda_handoff;
    }
    GuardChannelSpec spec = cell_spec(sc, lambda_handoff);
    SimConfig cfg;
    cfg.spec = spec;
    cfg.target_arrivals = arrivals;
    cfg.seed = seed;
    SimStats stats = simulate_replications(cfg, replications, default_exec_mode());
    ComparisonReport cmp = compare_to_analytic(stats, spec);
    std::cout << render_table(simulation_table(spec, cfg, stats, cmp, sc.hash()),
                              OutputFormat::Text);
    return 0;
  }

  PairwiseMatrix m = load_pairwise_file(ahp_pairwise_path);
  std::cout << render_table(ahp_table(m), OutputFormat::Text);
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const hoprank::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const hoprank::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const hoprank::DegenerateInputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const hoprank::IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const hoprank::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
