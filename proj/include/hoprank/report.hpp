#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hoprank/cell_sim.hpp"
#include "hoprank/guard_channel.hpp"
#include "hoprank/mcdm.hpp"
#include "hoprank/scenario.hpp"
#include "hoprank/timelines.hpp"

namespace hoprank {

/// All six criterion values for one protocol under a resolved scenario.
struct MetricsRow {
  ProtocolId id;
  double packet_loss_pkts = 0;
  double handover_delay_s = 0;
  double p_block_new = 0;
  double p_drop_handoff = 0;
  double signaling_delay_s = 0;
  double price = 0;
};

double metric_value(const MetricsRow& row, CriterionId id);

/// Blocking figures for one effective channel pool (hard handover keeps
/// the whole pool, soft handover half of it).
struct BlockingSummary {
  HandoverMode mode = HandoverMode::Hard;
  int pool = 0;
  int guard = 0;
  double lambda_new = 0;
  double lambda_handoff = 0;
  int fixed_point_iterations = 0; // 0 when the rate came from the file
  double p_block_new = 0;
  double p_drop_handoff = 0;
};

struct Evaluation {
  ResolvedScenario scenario;
  std::vector<MetricsRow> rows; // kAllProtocols order
  std::vector<BlockingSummary> pools;
  bool blocking_overridden = false;
};

/// Evaluates every protocol under the scenario: delay metrics from the
/// timeline expressions, blocking from the guard-channel chain over each
/// protocol's effective pool (handoff rate from the file when given, else
/// solved by fixed point per pool). With override_blocking the two
/// blocking columns are replaced by the built-in reference figures.
Evaluation evaluate_scenario(const ResolvedScenario& sc,
                             bool override_blocking = false);

/// Decision matrix over the scenario's configured criteria, one row per
/// protocol. Throws ValidationError on a zero column (for example packet
/// loss with zero throughput).
DecisionMatrix build_decision_matrix(const Evaluation& ev);

// ---------------------------------------------------------------------
// Built-in reference figures the implementation is cross-checked against.

/// The two shipped parameter sets: A with 2.5 ms per-node processing,
/// B with 2.5 us.
enum class ReferenceScenario { A, B };

/// Reference (packet loss, handover delay, signaling delay) per protocol,
/// kAllProtocols order.
std::array<std::array<double, 3>, kProtocolCount>
reference_delays(ReferenceScenario which);

struct ReferenceBlocking {
  double hard_p_block = 0;
  double hard_p_drop = 0;
  double soft_p_block = 0;
  double soft_p_drop = 0;
};

ReferenceBlocking reference_blocking();

/// The full reference decision matrix (scenario B delays, reference
/// blocking pairs, default prices), all six criteria as costs.
DecisionMatrix reference_decision_matrix();

/// Reference overall ranking, best first.
std::array<ProtocolId, kProtocolCount> reference_rank_order();

struct CellDiscrepancy {
  ProtocolId id;
  CriterionId metric = CriterionId::PacketLoss;
  double computed = 0;
  double reference = 0;

  double delta() const { return computed - reference; }
};

/// Delay/loss cells whose computed value differs from the reference table
/// by more than tol.
std::vector<CellDiscrepancy> compare_reference_delays(ReferenceScenario which,
                                                      const Evaluation& ev,
                                                      double tol);

// ---------------------------------------------------------------------
// Tables and rendering.

struct Cell {
  enum class Kind { Text, Number };
  Kind kind = Kind::Text;
  std::string text;
  double number = 0;

  static Cell of(std::string s);
  static Cell of(double v);

  friend bool operator==(const Cell&, const Cell&) = default;
};

struct ReportTable {
  std::string title;
  std::vector<std::string> columns;
  std::vector<std::string> row_labels;
  std::vector<std::vector<Cell>> cells; // [row][column]
  std::vector<std::pair<std::string, std::string>> meta;

  friend bool operator==(const ReportTable&, const ReportTable&) = default;
};

enum class OutputFormat { Text, Csv, Json };

OutputFormat format_from_name(std::string_view name);

/// Text: aligned columns plus a meta block. CSV: RFC-4180 quoting, one
/// `title` record, `meta` records, a `columns` record, then data records;
/// numbers carry 17 significant digits so they parse back exactly. JSON:
/// object with rows, columns, cells, meta.
std::string render_table(const ReportTable& table, OutputFormat format);

/// Inverse of the CSV rendering: fields that parse fully as numbers become
/// number cells. parse_csv_table(render_table(t, Csv)) == t whenever t's
/// text cells do not themselves look like numbers.
ReportTable parse_csv_table(std::string_view text);

/// Symbolic metric expressions per protocol plus the scenario prices.
ReportTable parametric_table(const ResolvedScenario& sc);

/// The six numeric criteria per protocol.
ReportTable numeric_table(const Evaluation& ev);

/// Blocking per pool; with `sweep` one row per guard-channel count in
/// [first, second], pools whose size does not exceed g reported as n/a.
ReportTable blocking_table(const ResolvedScenario& sc,
                           std::optional<std::pair<int, int>> sweep);

ReportTable simulation_table(const GuardChannelSpec& spec, const SimConfig& cfg,
                             const SimStats& stats, const ComparisonReport& cmp,
                             std::uint64_t scenario_hash);

ReportTable ahp_table(const PairwiseMatrix& m);

// ---------------------------------------------------------------------
// Ranking pipeline.

struct RankOptions {
  std::optional<WeightVector> cli_weights;
  std::optional<PairwiseMatrix> cli_pairwise;
  bool override_blocking = false;
};

struct RankOutcome {
  Evaluation evaluation;
  DecisionMatrix matrix;
  WeightVector weights;
  std::string weight_source;
  std::optional<AhpResult> ahp;
  std::optional<ConsistencyResult> consistency;
  Ranking ranking;
  std::vector<std::string> warnings;
  ReportTable matrix_table;
  ReportTable result_table;
};

/// Full pipeline: evaluate, build the decision matrix, resolve weights
/// (command-line weights, then command-line pairwise, then the scenario's
/// own weights, then its pairwise matrix), run the ranking. A pairwise
/// consistency ratio above 0.1 adds a warning, never an error.
RankOutcome run_rank(const ResolvedScenario& sc, const RankOptions& opts);

} // namespace hoprank
