#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hoprank/delay_expr.hpp"
#include "hoprank/mcdm.hpp"
#include "hoprank/timelines.hpp"

namespace hoprank {

/// Ranking criteria, in the column order used by every report table.
enum class CriterionId {
  PacketLoss,
  HandoverDelay,
  CallBlocking,
  HandoverBlocking,
  SignalingDelay,
  Price,
};

inline constexpr std::array<CriterionId, 6> kAllCriteria = {
    CriterionId::PacketLoss,      CriterionId::HandoverDelay,
    CriterionId::CallBlocking,    CriterionId::HandoverBlocking,
    CriterionId::SignalingDelay,  CriterionId::Price,
};

std::string_view criterion_key(CriterionId id);
std::string_view criterion_label(CriterionId id);
CriterionId criterion_from_key(std::string_view key);

/// One-way propagation delay for a link. speed must be positive.
double propagation_delay(double length_m, double speed_m_per_s);

/// Ranking setup from the [mcdm] section. Criteria and directions are always
/// populated (defaults: all six, cost). Weights and pairwise are whatever the
/// file supplied; the rank driver decides precedence and fallbacks.
struct McdmConfig {
  std::vector<CriterionId> criteria;
  std::vector<Direction> directions;
  std::optional<std::vector<double>> weights; // raw, normalized at use
  std::optional<PairwiseMatrix> pairwise;
};

/// Everything a run needs, with raw file inputs folded into model units.
/// `provenance` records one line per derived or defaulted quantity so a
/// report can show where each number came from.
struct ResolvedScenario {
  ScenarioParams params;

  int channels_total = 0;
  int guard_channels = 0;
  double new_call_rate = 0.0;             // calls/s offered to the cell
  double call_completion_rate = 0.0;      // 1 / holding time
  double dwell_departure_rate = 0.0;      // boundary-crossing rate
  std::optional<double> handoff_rate;     // absent: solve by fixed point

  std::array<double, kProtocolCount> prices{};
  McdmConfig mcdm;
  std::vector<std::string> provenance;

  /// Deterministic key=value dump of every resolved number, %.17g.
  std::string canonical_dump() const;
  /// FNV-1a 64 over canonical_dump(), printed in report metadata so two
  /// runs can be matched to the same inputs.
  std::uint64_t hash() const;
};

ResolvedScenario load_scenario(std::string_view text, std::string_view origin = "scenario");
ResolvedScenario load_scenario_file(const std::filesystem::path& path);

/// Weights file: a [weights] section with `weights = w1, w2, ...`.
/// Values are normalized to sum 1 (they may be any nonnegative scale).
WeightVector load_weights_file(const std::filesystem::path& path);

/// Pairwise file: a [pairwise] section with rows `row_1 = ...` .. `row_n`.
PairwiseMatrix load_pairwise_file(const std::filesystem::path& path);

std::uint64_t fnv1a64(std::string_view text);

std::string read_text_file(const std::filesystem::path& path);

} // namespace hoprank
