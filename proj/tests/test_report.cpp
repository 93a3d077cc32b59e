#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstddef>
#include <filesystem>
#include <string>

#include "hoprank/delay_expr.hpp"
#include "hoprank/errors.hpp"
#include "hoprank/report.hpp"

using namespace hoprank;
namespace fs = std::filesystem;

namespace {

ResolvedScenario shipped(const char* name) {
  return load_scenario_file(fs::path(HOPRANK_SCENARIO_DIR) / name);
}

const char* find_meta(const ReportTable& t, std::string_view key) {
  for (const auto& [k, v] : t.meta) {
    if (k == key) return v.c_str();
  }
  return nullptr;
}

bool has_discrepancy(const std::vector<CellDiscrepancy>& list, ProtocolId id,
                     CriterionId metric) {
  for (const auto& d : list) {
    if (d.id == id && d.metric == metric) return true;
  }
  return false;
}

} // namespace

TEST_CASE("evaluating the slow scenario reproduces the reference delay table") {
  ResolvedScenario sc = shipped("scenario_a.cfg");
  Evaluation ev = evaluate_scenario(sc);
  REQUIRE(ev.rows.size() == kProtocolCount);
  REQUIRE(ev.pools.size() == 2);

  CHECK(compare_reference_delays(ReferenceScenario::A, ev, 1e-6).empty());

  const MetricsRow& mip = ev.rows[0];
  CHECK(mip.id == ProtocolId::MIPv6);
  CHECK(mip.packet_loss_pkts ==
        packet_loss(ProtocolId::MIPv6, sc.params).packets_lost);
  CHECK(mip.handover_delay_s ==
        handover_delay(ProtocolId::MIPv6).evaluate(sc.params));
  CHECK(mip.price == 1000.0);

  const BlockingSummary* hard = nullptr;
  const BlockingSummary* soft = nullptr;
  for (const BlockingSummary& pool : ev.pools) {
    (pool.mode == HandoverMode::Hard ? hard : soft) = &pool;
  }
  REQUIRE(hard != nullptr);
  REQUIRE(soft != nullptr);
  CHECK(hard->pool == 10);
  CHECK(soft->pool == 5);
  CHECK(hard->fixed_point_iterations > 0);
  CHECK(soft->fixed_point_iterations > 0);
  CHECK(soft->p_block_new > hard->p_block_new);

  // Hard pool feeds only MIPv6; the soft pool feeds the other four.
  CHECK(mip.p_block_new == hard->p_block_new);
  CHECK(ev.rows[1].p_block_new == soft->p_block_new);
  CHECK(ev.rows[4].p_drop_handoff == soft->p_drop_handoff);
}

TEST_CASE("the fast scenario misses the reference table in three cells") {
  ResolvedScenario sc = shipped("scenario_b.cfg");
  Evaluation ev = evaluate_scenario(sc);
  auto gaps = compare_reference_delays(ReferenceScenario::B, ev, 1e-6);
  REQUIRE(gaps.size() == 3);
  CHECK(has_discrepancy(gaps, ProtocolId::FMIPv6, CriterionId::HandoverDelay));
  CHECK(has_discrepancy(gaps, ProtocolId::HMIPv6, CriterionId::HandoverDelay));
  CHECK(has_discrepancy(gaps, ProtocolId::HMIPv6, CriterionId::SignalingDelay));
  for (const auto& d : gaps) {
    if (d.metric == CriterionId::HandoverDelay) {
      CHECK(d.delta() > 0.0);
      CHECK(std::abs(d.delta()) < 6e-6);
    } else {
      CHECK(d.delta() < 0.0);
      CHECK(std::abs(d.delta()) < 6e-6);
    }
  }
}

TEST_CASE("file-supplied handoff rate bypasses the fixed point") {
  ResolvedScenario sc = shipped("scenario_a.cfg");
  sc.handoff_rate = 0.004;
  Evaluation ev = evaluate_scenario(sc);
  for (const BlockingSummary& pool : ev.pools) {
    CHECK(pool.fixed_point_iterations == 0);
    CHECK(pool.lambda_handoff == 0.004);
  }
}

TEST_CASE("reference override injects the published blocking pairs") {
  ResolvedScenario sc = shipped("scenario_b.cfg");
  Evaluation ev = evaluate_scenario(sc, true);
  CHECK(ev.blocking_overridden);
  const ReferenceBlocking ref = reference_blocking();
  CHECK(ev.rows[0].p_block_new == ref.hard_p_block);
  CHECK(ev.rows[0].p_drop_handoff == ref.hard_p_drop);
  for (std::size_t i = 1; i < kProtocolCount; ++i) {
    CHECK(ev.rows[i].p_block_new == ref.soft_p_block);
    CHECK(ev.rows[i].p_drop_handoff == ref.soft_p_drop);
  }
}

TEST_CASE("decision matrix follows the scenario's criteria") {
  ResolvedScenario sc = shipped("scenario_a.cfg");
  Evaluation ev = evaluate_scenario(sc);
  DecisionMatrix dm = build_decision_matrix(ev);
  CHECK(dm.alternative_count() == 5);
  CHECK(dm.criterion_count() == 6);
  CHECK(dm.alternatives[0] == "MIPv6");
  CHECK(dm.criteria[0] == "packet_loss");
  CHECK(dm.values[0][5] == 1000.0);
  CHECK(dm.values[2][1] == ev.rows[2].handover_delay_s);

  // Zero throughput zeroes the packet-loss column, which the matrix rejects.
  ResolvedScenario dry = sc;
  dry.params.throughput_pkt_per_s = 0.0;
  Evaluation dry_ev = evaluate_scenario(dry);
  CHECK_THROWS_AS(build_decision_matrix(dry_ev), ValidationError);
}

TEST_CASE("parametric and numeric tables agree bit for bit") {
  ResolvedScenario sc = shipped("scenario_a.cfg");
  Evaluation ev = evaluate_scenario(sc);
  ReportTable par = parametric_table(sc);
  ReportTable num = numeric_table(ev);

  REQUIRE(par.cells.size() == kProtocolCount);
  REQUIRE(num.cells.size() == kProtocolCount);
  for (std::size_t i = 0; i < kProtocolCount; ++i) {
    double window =
        parse_delay_expr(par.cells[i][0].text).evaluate(sc.params);
    CHECK(window * sc.params.throughput_pkt_per_s == num.cells[i][0].number);
    CHECK(parse_delay_expr(par.cells[i][1].text).evaluate(sc.params) ==
          num.cells[i][1].number);
    CHECK(parse_delay_expr(par.cells[i][2].text).evaluate(sc.params) ==
          num.cells[i][4].number);
    CHECK(par.cells[i][3].number == num.cells[i][5].number);
  }

  CHECK(par.cells[1][1].text == "max(6T+2d+h, 7T+4f+d)");
  const char* mode = find_meta(par, "mode");
  REQUIRE(mode);
  CHECK(std::string(mode) == "parametric");
  CHECK(find_meta(num, "hard_pool"));
  CHECK(find_meta(num, "soft_lambda_handoff"));
  CHECK(find_meta(num, "scenario_hash"));
}

TEST_CASE("csv rendering round-trips numeric tables exactly") {
  ResolvedScenario sc = shipped("scenario_a.cfg");
  ReportTable num = numeric_table(evaluate_scenario(sc));
  ReportTable back = parse_csv_table(render_table(num, OutputFormat::Csv));
  CHECK(back == num);

  ReportTable blocking = blocking_table(sc, std::nullopt);
  // Blocking rows mix numbers and "n/a" text; "n/a" survives classification.
  ReportTable blocking_back =
      parse_csv_table(render_table(blocking, OutputFormat::Csv));
  CHECK(blocking_back == blocking);
}

TEST_CASE("csv quoting handles commas, quotes, and newlines") {
  ReportTable t;
  t.title = "odd, \"title\"";
  t.columns = {"plain", "weird"};
  t.row_labels = {"r1", "r2"};
  t.cells = {
      {Cell::of(1.5), Cell::of(std::string("a,b"))},
      {Cell::of(std::string("say \"hi\"")), Cell::of(std::string("two\nlines"))},
  };
  t.meta.emplace_back("note", "value, with comma");

  std::string csv = render_table(t, OutputFormat::Csv);
  ReportTable back = parse_csv_table(csv);
  CHECK(back == t);

  CHECK_THROWS_AS(parse_csv_table("title,\"oops\n"), ParseError);
}

TEST_CASE("json rendering carries the full table") {
  ResolvedScenario sc = shipped("scenario_a.cfg");
  ReportTable num = numeric_table(evaluate_scenario(sc));
  std::string json = render_table(num, OutputFormat::Json);
  CHECK(json.find("\"title\"") != std::string::npos);
  CHECK(json.find("\"columns\"") != std::string::npos);
  CHECK(json.find("\"rows\"") != std::string::npos);
  CHECK(json.find("\"cells\"") != std::string::npos);
  CHECK(json.find("\"meta\"") != std::string::npos);
  CHECK(json.find("\"scenario_hash\"") != std::string::npos);
  CHECK(json.find("\"version\"") != std::string::npos);
  CHECK(json.find("MIPv6") != std::string::npos);
}

TEST_CASE("text rendering is human-oriented") {
  ResolvedScenario sc = shipped("scenario_a.cfg");
  ReportTable num = numeric_table(evaluate_scenario(sc));
  std::string text = render_table(num, OutputFormat::Text);
  CHECK(text.find("Handover metrics (numeric)") != std::string::npos);
  CHECK(text.find("EFMIPv6") != std::string::npos);
  CHECK(text.find("# scenario_hash = ") != std::string::npos);
  CHECK(text.find("# mode = numeric") != std::string::npos);

  CHECK_THROWS_AS(format_from_name("yaml"), ValidationError);
  CHECK(format_from_name("json") == OutputFormat::Json);
}

TEST_CASE("blocking table sweeps guard channels") {
  ResolvedScenario sc = shipped("scenario_a.cfg");
  ReportTable t = blocking_table(sc, std::make_pair(0, 9));
  REQUIRE(t.cells.size() == 10);
  CHECK(t.row_labels.front() == "g=0");
  CHECK(t.row_labels.back() == "g=9");
  REQUIRE(t.columns.size() == 6);

  for (std::size_t r = 0; r < t.cells.size(); ++r) {
    REQUIRE(t.cells[r].size() == 6);
    bool soft_na = r >= 5; // soft pool is 5 channels
    CHECK((t.cells[r][4].kind == Cell::Kind::Text) == soft_na);
    if (soft_na) CHECK(t.cells[r][4].text == "n/a");
    CHECK(t.cells[r][1].kind == Cell::Kind::Number);
  }
  CHECK(t.cells[9][1].number > t.cells[0][1].number);

  const char* soft_pool = find_meta(t, "soft_pool");
  REQUIRE(soft_pool);
  CHECK(std::string(soft_pool) == "5");
  const char* src = find_meta(t, "lambda_handoff_source");
  REQUIRE(src);
  CHECK(std::string(src) == "fixed point");

  CHECK_THROWS_AS(blocking_table(sc, std::make_pair(-1, 3)), ValidationError);
  CHECK_THROWS_AS(blocking_table(sc, std::make_pair(4, 2)), ValidationError);
  CHECK_THROWS_AS(blocking_table(sc, std::make_pair(0, 10)), ValidationError);
}

TEST_CASE("simulation table summarizes a run") {
  GuardChannelSpec spec;
  spec.total_channels = 4;
  spec.guard_channels = 1;
  spec.lambda_new = 2.0;
  spec.lambda_handoff = 0.5;
  spec.mu_call = 1.0;

  SimConfig cfg;
  cfg.spec = spec;
  cfg.target_arrivals = 50000;
  cfg.seed = 99;

  SimStats stats = simulate_replications(cfg, 2, ExecMode::Serial);
  ComparisonReport cmp = compare_to_analytic(stats, spec);
  ReportTable t = simulation_table(spec, cfg, stats, cmp, 0xabcdef);

  REQUIRE(t.row_labels.size() == 2);
  CHECK(t.row_labels[0] == "new calls");
  CHECK(t.row_labels[1] == "handoffs");
  CHECK(t.cells[0][5].text == (cmp.block.pass ? "pass" : "FAIL"));

  const char* seed = find_meta(t, "seed");
  REQUIRE(seed);
  CHECK(std::string(seed) == "99");
  const char* generator = find_meta(t, "generator");
  REQUIRE(generator);
  CHECK(std::string(generator) == "mt19937_64/jump-chain/v1");
  CHECK(find_meta(t, "overall"));
  const char* reps = find_meta(t, "replications");
  REQUIRE(reps);
  CHECK(std::string(reps) == "2");
}

TEST_CASE("ahp table reports both weighting methods") {
  PairwiseMatrix m = load_pairwise_file(fs::path(HOPRANK_SCENARIO_DIR) /
                                        "pairwise_voice.cfg");
  ReportTable t = ahp_table(m);
  REQUIRE(t.cells.size() == 6);
  double sum = 0;
  for (const auto& row : t.cells) sum += row[0].number;
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));

  const char* cr = find_meta(t, "consistency_ratio");
  REQUIRE(cr);
  CHECK(std::abs(std::stod(cr) - 0.005931700542590627) <= 1e-4);
  CHECK(find_meta(t, "warning") == nullptr);
}

TEST_CASE("rank pipeline with the published blocking figures") {
  ResolvedScenario sc = shipped("scenario_b.cfg");
  RankOptions opts;
  opts.override_blocking = true;
  RankOutcome out = run_rank(sc, opts);

  CHECK(out.weight_source == "scenario [mcdm] weights");
  CHECK(out.matrix.alternatives[out.ranking.order.front()] == "EFMIPv6");
  CHECK(out.matrix.alternatives[out.ranking.order.back()] == "MIPv6");
  CHECK(std::abs(out.ranking.closeness[3] - 0.6321012859790786) <= 0.005);
  CHECK(std::abs(out.ranking.closeness[0] - 0.35900988840309983) <= 0.005);

  CHECK(out.result_table.title == "Ranking (closeness to ideal)");
  CHECK(out.result_table.row_labels.front() == "EFMIPv6");
  CHECK(out.result_table.cells[0][0].number == 1.0);
  const char* blocking = find_meta(out.matrix_table, "blocking");
  REQUIRE(blocking);
  CHECK(std::string(blocking) == "reference override");
}

TEST_CASE("weight precedence and failures") {
  ResolvedScenario sc = shipped("scenario_a.cfg");

  RankOptions cli;
  cli.cli_weights = WeightVector::equal(6);
  RankOutcome with_cli = run_rank(sc, cli);
  CHECK(with_cli.weight_source == "command line (--weights)");

  RankOptions pair;
  pair.cli_pairwise = load_pairwise_file(fs::path(HOPRANK_SCENARIO_DIR) /
                                         "pairwise_voice.cfg");
  RankOutcome with_pair = run_rank(sc, pair);
  CHECK(with_pair.weight_source == "command line (--pairwise, AHP eigenvector)");
  CHECK(with_pair.ahp.has_value());
  CHECK(with_pair.consistency.has_value());
  CHECK(with_pair.warnings.empty());

  RankOptions mismatched;
  mismatched.cli_weights = WeightVector::equal(3);
  CHECK_THROWS_AS(run_rank(sc, mismatched), ValidationError);

  // A scenario without weights or pairwise judgements cannot rank.
  ResolvedScenario bare = sc;
  bare.mcdm.weights.reset();
  bare.mcdm.pairwise.reset();
  try {
    run_rank(bare, RankOptions{});
    FAIL("expected ValidationError");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("no criterion weights available") !=
          std::string::npos);
  }
}

TEST_CASE("inconsistent judgements warn but still rank") {
  ResolvedScenario sc = shipped("scenario_a.cfg");
  sc.mcdm.weights.reset();
  sc.mcdm.pairwise = PairwiseMatrix({
      {1.0, 9.0, 1.0 / 9.0, 5.0, 1.0, 1.0},
      {1.0 / 9.0, 1.0, 9.0, 1.0 / 7.0, 1.0, 1.0},
      {9.0, 1.0 / 9.0, 1.0, 9.0, 1.0, 1.0},
      {1.0 / 5.0, 7.0, 1.0 / 9.0, 1.0, 1.0, 1.0},
      {1.0, 1.0, 1.0, 1.0, 1.0, 1.0},
      {1.0, 1.0, 1.0, 1.0, 1.0, 1.0},
  });
  RankOutcome out = run_rank(sc, RankOptions{});
  CHECK(out.weight_source == "scenario [mcdm] pairwise matrix (AHP eigenvector)");
  REQUIRE(out.consistency.has_value());
  CHECK(out.consistency->cr > 0.1);
  REQUIRE_FALSE(out.warnings.empty());
  CHECK(out.warnings.front().find("exceeds 0.1") != std::string::npos);
  bool warned = false;
  for (const auto& [k, v] : out.result_table.meta) {
    if (k == "warning") warned = true;
  }
  CHECK(warned);
  CHECK(out.ranking.order.size() == 5);
}
