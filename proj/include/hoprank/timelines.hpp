#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hoprank/delay_expr.hpp"

namespace hoprank {

enum class ProtocolId { MIPv6, FMIPv6, SMIPv6, EFMIPv6, HMIPv6 };

inline constexpr std::size_t kProtocolCount = 5;

inline constexpr std::array<ProtocolId, kProtocolCount> kAllProtocols = {
    ProtocolId::MIPv6, ProtocolId::FMIPv6, ProtocolId::SMIPv6,
    ProtocolId::EFMIPv6, ProtocolId::HMIPv6,
};

std::string_view protocol_name(ProtocolId id);

/// Parses "MIPv6", "FMIPv6", ... (exact match). Throws ValidationError.
ProtocolId protocol_from_name(std::string_view name);

/// How much of the base protocol stack a variant touches.
enum class DesignChange { None, Design, Architecture };

/// Whether location updates stay inside the visited domain or travel home.
enum class MobilityScope { Micro, Macro };

/// Whether the old radio link is kept alive while the new one comes up.
enum class HandoverMode { Hard, Soft };

struct Classification {
  DesignChange change;
  MobilityScope scope;
  HandoverMode mode;
};

std::string_view to_string(DesignChange v);
std::string_view to_string(MobilityScope v);
std::string_view to_string(HandoverMode v);

/// One row of a handover timeline: the event name, the delay consumed by
/// the step that produced it (absent where the source table leaves the
/// column empty), and the absolute timestamp at which it completes.
struct TimelineEvent {
  std::string name;
  std::optional<DelayExpr> delay;
  DelayExpr timestamp;
};

/// Everything recorded about one protocol: its event timeline, its
/// qualitative classification, a relative equipment price, and the three
/// closed-form delay metrics used for ranking.
struct ProtocolSpec {
  ProtocolId id;
  std::vector<TimelineEvent> events;
  Classification classification;
  double price;
  DelayExpr packet_loss_window; // zero where rerouting hides the gap
  DelayExpr handover_delay;
  DelayExpr signaling_delay;
};

/// Immutable built-in table for one protocol.
const ProtocolSpec& timeline(ProtocolId id);

DelayExpr packet_loss_window(ProtocolId id);
DelayExpr handover_delay(ProtocolId id);
DelayExpr signaling_delay(ProtocolId id);

struct PacketLoss {
  double window_s;
  double packets_lost; // window times downstream packet rate
};

PacketLoss packet_loss(ProtocolId id, const ScenarioParams& p);

/// SMIPv6 hides losses only while rerouted packets beat the mobile node to
/// the new access router; this is the slack in that race (positive means
/// safe). Evaluates 4f + T - h.
double rerouting_safety_margin(const ScenarioParams& p);

/// Outcome of checking one timeline row against its predecessors: the row
/// is consistent when its timestamp is explained by an earlier timestamp
/// plus that row's listed delay (branch by branch for max/min timestamps).
struct ChainCheck {
  std::size_t row = 0;
  std::string event;
  bool consistent = false;
  std::string actual;      // canonical timestamp as tabulated
  std::string expected;    // canonical predecessor + delay, when available
  std::string matched_via; // which candidate explained the row
};

struct ConsistencyReport {
  ProtocolId id;
  std::vector<ChainCheck> rows;

  std::vector<ChainCheck> discrepancies() const;
};

/// Replays the whole timeline and reports, row by row, whether each
/// tabulated timestamp follows from the rows before it. Discrepancies are
/// reported verbatim, never repaired.
ConsistencyReport check_chain_consistency(const ProtocolSpec& spec);

} // namespace hoprank
