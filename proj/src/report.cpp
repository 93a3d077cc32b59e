#include "hoprank/report.hpp"

#include <algorithm>
#include <cctype>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "hoprank/errors.hpp"
#include "hoprank/format.hpp"
#include "hoprank/version.hpp"

namespace hoprank {

double metric_value(const MetricsRow& row, CriterionId id) {
  switch (id) {
    case CriterionId::PacketLoss: return row.packet_loss_pkts;
    case CriterionId::HandoverDelay: return row.handover_delay_s;
    case CriterionId::CallBlocking: return row.p_block_new;
    case CriterionId::HandoverBlocking: return row.p_drop_handoff;
    case CriterionId::SignalingDelay: return row.signaling_delay_s;
    case CriterionId::Price: return row.price;
  }
  return 0.0;
}

namespace {

std::string hash_hex(std::uint64_t h) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

void stamp(ReportTable& t, const ResolvedScenario* sc) {
  t.meta.emplace_back("tool", kToolName);
  t.meta.emplace_back("version", kVersion);
  if (sc) t.meta.emplace_back("scenario_hash", hash_hex(sc->hash()));
}

std::string numeric_column_label(CriterionId id) {
  switch (id) {
    case CriterionId::PacketLoss: return "Packet loss (pkts)";
    case CriterionId::HandoverDelay: return "Handover delay (s)";
    case CriterionId::CallBlocking: return "Call blocking";
    case CriterionId::HandoverBlocking: return "Handover blocking";
    case CriterionId::SignalingDelay: return "Signaling delay (s)";
    case CriterionId::Price: return "Price";
  }
  return "?";
}

BlockingSummary solve_pool(const ResolvedScenario& sc, HandoverMode mode) {
  BlockingSummary s;
  s.mode = mode;
  s.pool = effective_channels(mode, sc.channels_total);
  s.guard = sc.guard_channels;
  s.lambda_new = sc.new_call_rate;
  if (s.pool <= sc.guard_channels)
    throw ValidationError(std::string("effective pool for ") +
                          std::string(to_string(mode)) + " handover is " +
                          std::to_string(s.pool) + " of " +
                          std::to_string(sc.channels_total) +
                          " channels, which does not exceed guard_channels = " +
                          std::to_string(sc.guard_channels));
  GuardChannelSpec spec;
  spec.total_channels = s.pool;
  spec.guard_channels = sc.guard_channels;
  spec.lambda_new = sc.new_call_rate;
  spec.mu_call = sc.call_completion_rate;
  spec.eta_dwell = sc.dwell_departure_rate;
  if (sc.handoff_rate) {
    spec.lambda_handoff = *sc.handoff_rate;
    BlockingResult br = blocking_probabilities(spec);
    s.lambda_handoff = *sc.handoff_rate;
    s.fixed_point_iterations = 0;
    s.p_block_new = br.p_block_new;
    s.p_drop_handoff = br.p_drop_handoff;
  } else {
    FixedPointResult fp = handoff_rate_fixed_point(spec);
    s.lambda_handoff = fp.lambda_handoff;
    s.fixed_point_iterations = fp.iterations;
    s.p_block_new = fp.p_block_new;
    s.p_drop_handoff = fp.p_drop_handoff;
  }
  return s;
}

} // namespace

Evaluation evaluate_scenario(const ResolvedScenario& sc, bool override_blocking) {
  Evaluation ev;
  ev.scenario = sc;
  ev.blocking_overridden = override_blocking;

  std::set<HandoverMode> modes;
  for (ProtocolId id : kAllProtocols)
    modes.insert(timeline(id).classification.mode);

  std::map<HandoverMode, BlockingSummary> pools;
  const ReferenceBlocking ref = reference_blocking();
  for (HandoverMode mode : {HandoverMode::Hard, HandoverMode::Soft}) {
    if (!modes.count(mode)) continue;
    if (override_blocking) {
      BlockingSummary s;
      s.mode = mode;
      s.pool = effective_channels(mode, sc.channels_total);
      s.guard = sc.guard_channels;
      s.lambda_new = sc.new_call_rate;
      s.p_block_new = mode == HandoverMode::Hard ? ref.hard_p_block : ref.soft_p_block;
      s.p_drop_handoff = mode == HandoverMode::Hard ? ref.hard_p_drop : ref.soft_p_drop;
      pools.emplace(mode, s);
    } else {
      pools.emplace(mode, solve_pool(sc, mode));
    }
  }
  for (auto& [mode, summary] : pools) ev.pools.push_back(summary);

  for (std::size_t i = 0; i < kProtocolCount; ++i) {
    ProtocolId id = kAllProtocols[i];
    MetricsRow r;
    r.id = id;
    r.packet_loss_pkts = packet_loss(id, sc.params).packets_lost;
    r.handover_delay_s = handover_delay(id).evaluate(sc.params);
    r.signaling_delay_s = signaling_delay(id).evaluate(sc.params);
    const BlockingSummary& pool = pools.at(timeline(id).classification.mode);
    r.p_block_new = pool.p_block_new;
    r.p_drop_handoff = pool.p_drop_handoff;
    r.price = sc.prices[i];
    ev.rows.push_back(r);
  }
  return ev;
}

DecisionMatrix build_decision_matrix(const Evaluation& ev) {
  const McdmConfig& cfg = ev.scenario.mcdm;
  DecisionMatrix dm;
  for (ProtocolId id : kAllProtocols)
    dm.alternatives.emplace_back(protocol_name(id));
  for (CriterionId id : cfg.criteria)
    dm.criteria.emplace_back(criterion_key(id));
  dm.directions = cfg.directions;
  for (const MetricsRow& row : ev.rows) {
    std::vector<double> values;
    for (CriterionId id : cfg.criteria) values.push_back(metric_value(row, id));
    dm.values.push_back(std::move(values));
  }
  dm.validate();
  return dm;
}

std::array<std::array<double, 3>, kProtocolCount>
reference_delays(ReferenceScenario which) {
  if (which == ReferenceScenario::A) {
    return {{
        {0.08753104, 0.0300191, 1.0750281},
        {0.00000001, 0.0175029, 1.0750300},
        {0.00000001, 0.0100004, 1.0125095},
        {0.00000001, 0.0125070, 0.0525155},
        {0.00000001, 0.015005, 1.0475087},
    }};
  }
  return {{
      {0.00011854, 0.00004912, 1.00010318},
      {0.0, 0.000015, 1.00010508},
      {0.0, 0.00001048, 1.00002206},
      {0.0, 0.00001956, 0.00006802},
      {0.0, 0.000015, 1.0000612},
  }};
}

ReferenceBlocking reference_blocking() {
  return {1.82e-3, 6.74e-11, 0.56, 2.5e-5};
}

DecisionMatrix reference_decision_matrix() {
  const auto delays = reference_delays(ReferenceScenario::B);
  const ReferenceBlocking rb = reference_blocking();
  DecisionMatrix dm;
  for (ProtocolId id : kAllProtocols)
    dm.alternatives.emplace_back(protocol_name(id));
  for (CriterionId id : kAllCriteria)
    dm.criteria.emplace_back(criterion_key(id));
  dm.directions.assign(kAllCriteria.size(), Direction::Cost);
  for (std::size_t i = 0; i < kProtocolCount; ++i) {
    bool hard = timeline(kAllProtocols[i]).classification.mode == HandoverMode::Hard;
    dm.values.push_back({
        delays[i][0],
        delays[i][1],
        hard ? rb.hard_p_block : rb.soft_p_block,
        hard ? rb.hard_p_drop : rb.soft_p_drop,
        delays[i][2],
        timeline(kAllProtocols[i]).price,
    });
  }
  dm.validate();
  return dm;
}

std::array<ProtocolId, kProtocolCount> reference_rank_order() {
  return {ProtocolId::EFMIPv6, ProtocolId::SMIPv6, ProtocolId::HMIPv6,
          ProtocolId::FMIPv6, ProtocolId::MIPv6};
}

std::vector<CellDiscrepancy> compare_reference_delays(ReferenceScenario which,
                                                      const Evaluation& ev,
                                                      double tol) {
  const auto ref = reference_delays(which);
  const std::array<CriterionId, 3> metrics = {
      CriterionId::PacketLoss, CriterionId::HandoverDelay,
      CriterionId::SignalingDelay};
  std::vector<CellDiscrepancy> out;
  for (std::size_t i = 0; i < kProtocolCount; ++i) {
    for (std::size_t m = 0; m < metrics.size(); ++m) {
      double computed = metric_value(ev.rows[i], metrics[m]);
      double reference = ref[i][m];
      if (std::abs(computed - reference) > tol)
        out.push_back({kAllProtocols[i], metrics[m], computed, reference});
    }
  }
  return out;
}

// ---------------------------------------------------------------------

Cell Cell::of(std::string s) {
  Cell c;
  c.kind = Kind::Text;
  c.text = std::move(s);
  return c;
}

Cell Cell::of(double v) {
  Cell c;
  c.kind = Kind::Number;
  c.number = v;
  return c;
}

OutputFormat format_from_name(std::string_view name) {
  if (name == "text") return OutputFormat::Text;
  if (name == "csv") return OutputFormat::Csv;
  if (name == "json") return OutputFormat::Json;
  throw ValidationError("unknown output format \"" + std::string(name) +
                        "\" (expected text, csv, or json)");
}

namespace {

std::string cell_text(const Cell& c, int digits) {
  return c.kind == Cell::Kind::Number ? format_sig(c.number, digits) : c.text;
}

std::string render_text(const ReportTable& t) {
  std::ostringstream out;
  if (!t.title.empty()) out << t.title << "\n\n";
  std::size_t ncols = t.columns.size();
  std::vector<std::size_t> widths(ncols + 1, 0);
  for (const std::string& label : t.row_labels)
    widths[0] = std::max(widths[0], label.size());
  for (std::size_t j = 0; j < ncols; ++j)
    widths[j + 1] = t.columns[j].size();
  for (const auto& row : t.cells)
    for (std::size_t j = 0; j < row.size() && j < ncols; ++j)
      widths[j + 1] = std::max(widths[j + 1], cell_text(row[j], 10).size());

  auto pad = [&out](const std::string& s, std::size_t w, bool last) {
    out << s;
    if (!last)
      for (std::size_t k = s.size(); k < w + 2; ++k) out << ' ';
  };
  pad("", widths[0], false);
  for (std::size_t j = 0; j < ncols; ++j)
    pad(t.columns[j], widths[j + 1], j + 1 == ncols);
  out << '\n';
  for (std::size_t i = 0; i < t.cells.size(); ++i) {
    pad(i < t.row_labels.size() ? t.row_labels[i] : "", widths[0], false);
    const auto& row = t.cells[i];
    for (std::size_t j = 0; j < row.size(); ++j)
      pad(cell_text(row[j], 10), j + 1 <= ncols ? widths[j + 1] : 0,
          j + 1 == row.size());
    out << '\n';
  }
  if (!t.meta.empty()) {
    out << '\n';
    for (const auto& [k, v] : t.meta) out << "# " << k << " = " << v << '\n';
  }
  return out.str();
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += '"';
  return out;
}

void csv_record(std::ostringstream& out, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out << ',';
    out << csv_escape(fields[i]);
  }
  out << '\n';
}

std::string render_csv(const ReportTable& t) {
  std::ostringstream out;
  csv_record(out, {"title", t.title});
  for (const auto& [k, v] : t.meta) csv_record(out, {"meta", k, v});
  std::vector<std::string> header = {"columns"};
  header.insert(header.end(), t.columns.begin(), t.columns.end());
  csv_record(out, header);
  for (std::size_t i = 0; i < t.cells.size(); ++i) {
    std::vector<std::string> rec = {
        i < t.row_labels.size() ? t.row_labels[i] : ""};
    for (const Cell& c : t.cells[i])
      rec.push_back(c.kind == Cell::Kind::Number ? format_g17(c.number) : c.text);
    csv_record(out, rec);
  }
  return out.str();
}

std::string render_json(const ReportTable& t) {
  nlohmann::ordered_json j;
  j["title"] = t.title;
  j["columns"] = t.columns;
  j["rows"] = t.row_labels;
  nlohmann::ordered_json cells = nlohmann::ordered_json::array();
  for (const auto& row : t.cells) {
    nlohmann::ordered_json jrow = nlohmann::ordered_json::array();
    for (const Cell& c : row) {
      if (c.kind == Cell::Kind::Number) jrow.push_back(c.number);
      else jrow.push_back(c.text);
    }
    cells.push_back(std::move(jrow));
  }
  j["cells"] = std::move(cells);
  nlohmann::ordered_json meta = nlohmann::ordered_json::object();
  for (const auto& [k, v] : t.meta) meta[k] = v;
  j["meta"] = std::move(meta);
  return j.dump(2) + "\n";
}

Cell classify_field(const std::string& f) {
  if (!f.empty()) {
    const char* s = f.c_str();
    char* end = nullptr;
    errno = 0;
    double v = std::strtod(s, &end);
    if (end == s + f.size() && errno != ERANGE) return Cell::of(v);
  }
  return Cell::of(f);
}

} // namespace

std::string render_table(const ReportTable& table, OutputFormat format) {
  switch (format) {
    case OutputFormat::Text: return render_text(table);
    case OutputFormat::Csv: return render_csv(table);
    case OutputFormat::Json: return render_json(table);
  }
  return {};
}

ReportTable parse_csv_table(std::string_view text) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> fields;
  std::string field;
  bool in_quotes = false;
  bool field_started = false;
  std::size_t line = 1;
  auto end_field = [&] {
    fields.push_back(field);
    field.clear();
    field_started = false;
  };
  auto end_record = [&] {
    end_field();
    if (!(fields.size() == 1 && fields[0].empty())) records.push_back(fields);
    fields.clear();
  };
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        if (c == '\n') ++line;
        field += c;
      }
      continue;
    }
    if (c == '"' && !field_started && field.empty()) {
      in_quotes = true;
      field_started = true;
    } else if (c == ',') {
      end_field();
    } else if (c == '\r') {
      if (i + 1 < text.size() && text[i + 1] == '\n') ++i;
      ++line;
      end_record();
    } else if (c == '\n') {
      ++line;
      end_record();
    } else {
      field += c;
      field_started = true;
    }
  }
  if (in_quotes) throw ParseError("csv: unterminated quoted field", line, 1);
  if (field_started || !field.empty() || !fields.empty()) end_record();

  ReportTable t;
  for (const auto& rec : records) {
    const std::string& kind = rec[0];
    if (kind == "title") {
      t.title = rec.size() > 1 ? rec[1] : "";
    } else if (kind == "meta") {
      t.meta.emplace_back(rec.size() > 1 ? rec[1] : "",
                          rec.size() > 2 ? rec[2] : "");
    } else if (kind == "columns") {
      t.columns.assign(rec.begin() + 1, rec.end());
    } else {
      t.row_labels.push_back(kind);
      std::vector<Cell> row;
      for (std::size_t i = 1; i < rec.size(); ++i)
        row.push_back(classify_field(rec[i]));
      t.cells.push_back(std::move(row));
    }
  }
  return t;
}

// ---------------------------------------------------------------------

ReportTable parametric_table(const ResolvedScenario& sc) {
  ReportTable t;
  t.title = "Handover metrics (parametric)";
  t.columns = {"Packet loss window", "Handover delay", "Signaling delay", "Price"};
  for (std::size_t i = 0; i < kProtocolCount; ++i) {
    ProtocolId id = kAllProtocols[i];
    t.row_labels.emplace_back(protocol_name(id));
    t.cells.push_back({
        Cell::of(canonical_form(packet_loss_window(id))),
        Cell::of(canonical_form(handover_delay(id))),
        Cell::of(canonical_form(signaling_delay(id))),
        Cell::of(sc.prices[i]),
    });
  }
  stamp(t, &sc);
  t.meta.emplace_back("mode", "parametric");
  return t;
}

ReportTable numeric_table(const Evaluation& ev) {
  ReportTable t;
  t.title = "Handover metrics (numeric)";
  for (CriterionId id : kAllCriteria)
    t.columns.push_back(numeric_column_label(id));
  for (const MetricsRow& row : ev.rows) {
    t.row_labels.emplace_back(protocol_name(row.id));
    std::vector<Cell> cells;
    for (CriterionId id : kAllCriteria)
      cells.push_back(Cell::of(metric_value(row, id)));
    t.cells.push_back(std::move(cells));
  }
  stamp(t, &ev.scenario);
  t.meta.emplace_back("mode", "numeric");
  for (const BlockingSummary& pool : ev.pools) {
    std::string prefix(to_string(pool.mode));
    for (char& c : prefix) c = static_cast<char>(std::tolower(c));
    t.meta.emplace_back(prefix + "_pool", std::to_string(pool.pool));
    if (!ev.blocking_overridden) {
      t.meta.emplace_back(prefix + "_lambda_handoff",
                          format_g17(pool.lambda_handoff));
      t.meta.emplace_back(prefix + "_fixed_point_iterations",
                          std::to_string(pool.fixed_point_iterations));
    }
  }
  if (ev.blocking_overridden)
    t.meta.emplace_back("blocking", "reference override");
  return t;
}

ReportTable blocking_table(const ResolvedScenario& sc,
                           std::optional<std::pair<int, int>> sweep) {
  ReportTable t;
  t.title = "Guard-channel blocking";
  t.columns = {"Hard lambda_handoff", "Hard P(block)", "Hard P(drop)",
               "Soft lambda_handoff", "Soft P(block)", "Soft P(drop)"};
  int lo = sweep ? sweep->first : sc.guard_channels;
  int hi = sweep ? sweep->second : sc.guard_channels;
  if (lo < 0 || hi < lo || hi >= sc.channels_total)
    throw ValidationError("guard-channel sweep must satisfy 0 <= first <= last < channels_total");
  for (int g = lo; g <= hi; ++g) {
    t.row_labels.push_back("g=" + std::to_string(g));
    std::vector<Cell> row;
    for (HandoverMode mode : {HandoverMode::Hard, HandoverMode::Soft}) {
      ResolvedScenario varied = sc;
      varied.guard_channels = g;
      int pool = effective_channels(mode, sc.channels_total);
      if (pool <= g) {
        row.push_back(Cell::of(std::string("n/a")));
        row.push_back(Cell::of(std::string("n/a")));
        row.push_back(Cell::of(std::string("n/a")));
        continue;
      }
      BlockingSummary s = solve_pool(varied, mode);
      row.push_back(Cell::of(s.lambda_handoff));
      row.push_back(Cell::of(s.p_block_new));
      row.push_back(Cell::of(s.p_drop_handoff));
    }
    t.cells.push_back(std::move(row));
  }
  stamp(t, &sc);
  t.meta.emplace_back("hard_pool", std::to_string(effective_channels(
                                       HandoverMode::Hard, sc.channels_total)));
  t.meta.emplace_back("soft_pool", std::to_string(effective_channels(
                                       HandoverMode::Soft, sc.channels_total)));
  t.meta.emplace_back("lambda_handoff_source",
                      sc.handoff_rate ? "file" : "fixed point");
  return t;
}

ReportTable simulation_table(const GuardChannelSpec& spec, const SimConfig& cfg,
                             const SimStats& stats, const ComparisonReport& cmp,
                             std::uint64_t scenario_hash) {
  ReportTable t;
  t.title = "Guard-channel simulation vs analytic";
  t.columns = {"Offered", "Rejected", "Observed", "Analytic", "z", "Verdict"};
  auto add_row = [&t](const char* label, std::uint64_t offered,
                      std::uint64_t rejected, const MetricComparison& m) {
    t.row_labels.emplace_back(label);
    std::vector<Cell> row;
    row.push_back(Cell::of(static_cast<double>(offered)));
    row.push_back(Cell::of(static_cast<double>(rejected)));
    row.push_back(m.estimate ? Cell::of(*m.estimate)
                             : Cell::of(std::string("n/a")));
    row.push_back(Cell::of(m.analytic));
    row.push_back(m.z ? Cell::of(*m.z) : Cell::of(std::string("n/a")));
    row.push_back(Cell::of(std::string(
        !m.available ? "insufficient data" : (m.pass ? "pass" : "FAIL"))));
    t.cells.push_back(std::move(row));
  };
  add_row("new calls", stats.new_offered, stats.new_blocked, cmp.block);
  add_row("handoffs", stats.handoff_offered, stats.handoff_dropped, cmp.drop);
  t.meta.emplace_back("tool", kToolName);
  t.meta.emplace_back("version", kVersion);
  t.meta.emplace_back("scenario_hash", hash_hex(scenario_hash));
  t.meta.emplace_back("channels", std::to_string(spec.total_channels));
  t.meta.emplace_back("guard_channels", std::to_string(spec.guard_channels));
  t.meta.emplace_back("lambda_new", format_g17(spec.lambda_new));
  t.meta.emplace_back("lambda_handoff", format_g17(spec.lambda_handoff));
  t.meta.emplace_back("mu_call", format_g17(spec.mu_call));
  t.meta.emplace_back("eta_dwell", format_g17(spec.eta_dwell));
  t.meta.emplace_back("seed", std::to_string(cfg.seed));
  t.meta.emplace_back("arrivals_per_replication",
                      std::to_string(cfg.target_arrivals));
  t.meta.emplace_back("warmup_arrivals", std::to_string(cfg.effective_warmup()));
  t.meta.emplace_back("replications", std::to_string(stats.replications));
  t.meta.emplace_back("generator", stats.generator);
  t.meta.emplace_back("overall", cmp.pass ? "pass" : "FAIL");
  return t;
}

ReportTable ahp_table(const PairwiseMatrix& m) {
  AhpResult eig = ahp_weights(m);
  WeightVector geo = ahp_weights_geometric(m);
  ConsistencyResult cons = consistency_ratio(m);
  ReportTable t;
  t.title = "Pairwise-judgement weights";
  t.columns = {"Eigenvector weight", "Geometric-mean weight"};
  for (std::size_t i = 0; i < m.size(); ++i) {
    t.row_labels.push_back("item " + std::to_string(i + 1));
    t.cells.push_back(
        {Cell::of(eig.weights.values[i]), Cell::of(geo.values[i])});
  }
  t.meta.emplace_back("tool", kToolName);
  t.meta.emplace_back("version", kVersion);
  t.meta.emplace_back("lambda_max", format_g17(eig.lambda_max));
  t.meta.emplace_back("power_iterations", std::to_string(eig.iterations));
  t.meta.emplace_back("consistency_index", format_g17(cons.ci));
  t.meta.emplace_back("consistency_ratio", format_g17(cons.cr));
  if (cons.cr > 0.1)
    t.meta.emplace_back("warning",
                        "consistency ratio exceeds 0.1; judgements are weakly "
                        "consistent");
  return t;
}

// ---------------------------------------------------------------------

RankOutcome run_rank(const ResolvedScenario& sc, const RankOptions& opts) {
  RankOutcome out;
  out.evaluation = evaluate_scenario(sc, opts.override_blocking);
  out.matrix = build_decision_matrix(out.evaluation);
  const std::size_t n = sc.mcdm.criteria.size();

  auto check_count = [n](std::size_t got, const char* what) {
    if (got != n)
      throw ValidationError(std::string(what) + " has " + std::to_string(got) +
                            " entries for " + std::to_string(n) + " criteria");
  };
  if (opts.cli_weights) {
    check_count(opts.cli_weights->values.size(), "weights file");
    out.weights = *opts.cli_weights;
    out.weight_source = "command line (--weights)";
  } else if (opts.cli_pairwise) {
    check_count(opts.cli_pairwise->size(), "pairwise file");
    out.ahp = ahp_weights(*opts.cli_pairwise);
    out.consistency = consistency_ratio(*opts.cli_pairwise);
    out.weights = out.ahp->weights;
    out.weight_source = "command line (--pairwise, AHP eigenvector)";
  } else if (sc.mcdm.weights) {
    out.weights = WeightVector::normalized(*sc.mcdm.weights);
    out.weight_source = "scenario [mcdm] weights";
  } else if (sc.mcdm.pairwise) {
    check_count(sc.mcdm.pairwise->size(), "scenario pairwise matrix");
    out.ahp = ahp_weights(*sc.mcdm.pairwise);
    out.consistency = consistency_ratio(*sc.mcdm.pairwise);
    out.weights = out.ahp->weights;
    out.weight_source = "scenario [mcdm] pairwise matrix (AHP eigenvector)";
  } else {
    throw ValidationError(
        "no criterion weights available: add [mcdm] weights or a pairwise "
        "matrix to the scenario, or pass --weights/--pairwise");
  }
  if (out.consistency && out.consistency->cr > 0.1)
    out.warnings.push_back(
        "consistency ratio " + format_sig(out.consistency->cr, 6) +
        " exceeds 0.1; pairwise judgements are weakly consistent");

  out.ranking = topsis(out.matrix, out.weights);

  ReportTable mt;
  mt.title = "Decision matrix";
  mt.columns = out.matrix.criteria;
  for (std::size_t i = 0; i < out.matrix.alternative_count(); ++i) {
    mt.row_labels.push_back(out.matrix.alternatives[i]);
    std::vector<Cell> row;
    for (double v : out.matrix.values[i]) row.push_back(Cell::of(v));
    mt.cells.push_back(std::move(row));
  }
  stamp(mt, &sc);
  {
    std::string w;
    for (std::size_t i = 0; i < out.weights.values.size(); ++i) {
      if (i) w += ", ";
      w += format_g17(out.weights.values[i]);
    }
    mt.meta.emplace_back("weights", w);
    mt.meta.emplace_back("weight_source", out.weight_source);
    if (out.evaluation.blocking_overridden)
      mt.meta.emplace_back("blocking", "reference override");
  }
  out.matrix_table = std::move(mt);

  ReportTable rt;
  rt.title = "Ranking (closeness to ideal)";
  rt.columns = {"Rank", "Closeness"};
  for (std::size_t pos = 0; pos < out.ranking.order.size(); ++pos) {
    std::size_t idx = out.ranking.order[pos];
    rt.row_labels.push_back(out.matrix.alternatives[idx]);
    rt.cells.push_back({Cell::of(static_cast<double>(pos + 1)),
                        Cell::of(out.ranking.closeness[idx])});
  }
  stamp(rt, &sc);
  rt.meta.emplace_back("weight_source", out.weight_source);
  if (out.consistency) {
    rt.meta.emplace_back("consistency_ratio", format_g17(out.consistency->cr));
    rt.meta.emplace_back("lambda_max", format_g17(out.consistency->lambda_max));
  }
  if (out.ranking.total_tie) rt.meta.emplace_back("total_tie", "true");
  for (const std::string& note : out.ranking.notes)
    rt.meta.emplace_back("note", note);
  for (const std::string& warning : out.warnings)
    rt.meta.emplace_back("warning", warning);
  out.result_table = std::move(rt);
  return out;
}

} // namespace hoprank
