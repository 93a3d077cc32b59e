#include "hoprank/timelines.hpp"

#include <utility>

#include "hoprank/errors.hpp"

namespace hoprank {

std::string_view protocol_name(ProtocolId id) {
  switch (id) {
  case ProtocolId::MIPv6: return "MIPv6";
  case ProtocolId::FMIPv6: return "FMIPv6";
  case ProtocolId::SMIPv6: return "SMIPv6";
  case ProtocolId::EFMIPv6: return "EFMIPv6";
  case ProtocolId::HMIPv6: return "HMIPv6";
  }
  return "?";
}

ProtocolId protocol_from_name(std::string_view name) {
  for (ProtocolId id : kAllProtocols) {
    if (protocol_name(id) == name) return id;
  }
  throw ValidationError("unknown protocol \"" + std::string(name) +
                        "\" (expected MIPv6, FMIPv6, SMIPv6, EFMIPv6 "
                        "or HMIPv6)");
}

std::string_view to_string(DesignChange v) {
  switch (v) {
  case DesignChange::None: return "none";
  case DesignChange::Design: return "design";
  case DesignChange::Architecture: return "architecture";
  }
  return "?";
}

std::string_view to_string(MobilityScope v) {
  return v == MobilityScope::Micro ? "micro" : "macro";
}

std::string_view to_string(HandoverMode v) {
  return v == HandoverMode::Hard ? "hard" : "soft";
}

namespace {

DelayExpr lin(std::string_view text) { return parse_delay_expr(text); }

TimelineEvent ev(std::string name, std::string_view delay,
                 std::string_view timestamp) {
  TimelineEvent e;
  e.name = std::move(name);
  if (!delay.empty()) e.delay = parse_delay_expr(delay);
  e.timestamp = parse_delay_expr(timestamp);
  return e;
}

ProtocolSpec make_mipv6() {
  ProtocolSpec s;
  s.id = ProtocolId::MIPv6;
  s.events = {
      ev("L2 Trigger", "T", "0"),
      ev("RS", "6T + 4f + d", "T"),
      ev("RA", "6T + 4f + d", "6T + 4f + d"),
      ev("NS", "6T + 4f + d", "12T + 8f + 2d"),
      ev("NA", "6T + 4f + d", "18T + 12f + 3d"),
      ev("L2 Handover", "h", "24T + 16f + 4d"),
      ev("BUs sent to HA/CN", "3f + F + d + 6T", "24T + 16f + 4d + h"),
      ev("Packets sent by CNs@NCoA", "3f + F + d + 6T",
         "30T + 19f + 5d + h + F"),
      ev("Packets sent by CNs are received", "", "36T + 22f + 6d + h + 2F"),
  };
  s.classification = {DesignChange::None, MobilityScope::Macro,
                      HandoverMode::Hard};
  s.price = 1000;
  s.packet_loss_window = lin("35T + 22f + 6d + h + 2F");
  s.handover_delay = lin("12T + 6f + 2d + h + 2F");
  s.signaling_delay = lin("30T + 19f + 5d + h + 2F + D");
  return s;
}

ProtocolSpec make_fmipv6() {
  ProtocolSpec s;
  s.id = ProtocolId::FMIPv6;
  s.events = {
      ev("L2 Trigger", "T", "0"),
      ev("RtSolPr", "d + 2T", "T"),
      ev("PrRtAdv", "d + 2T", "d + 2T"),
      ev("FBU", "d + 2T", "2d + 4T"),
      ev("HI", "4f + 5T", "3d + 6T"),
      ev("HACK", "4f + 5T", "3d + 4f + 11T"),
      ev("FBACK", "d + 2T", "3d + 8f + 16T"),
      ev("Packets are rerouted through PAR", "4f + 5T", "3d + 8f + 16T"),
      ev("L2 Handover", "h", "4d + 8f + 18T"),
      ev("FNA", "d + 2T", "4d + 8f + h + 18T"),
      ev("FNA-ACK", "d + 2T", "5d + 8f + h + 20T"),
      ev("BUs sent to HA/CN", "3f + F + d + 6T", "6d + 8f + h + 22T"),
      ev("PAR sends packets to MN", "d + 2T",
         "max(5d + 8f + h + 20T, 12f + 3d + 21T)"),
      ev("Packets are received by MN", "",
         "max(6d + 8f + h + 22T, 12f + 4d + 23T)"),
      ev("BUs are received by CNs", "", "11f + 7d + F + h + 28T"),
      // The source table leaves this timestamp cut off after "2F + h +";
      // the chain step from the previous row fixes the missing term at 34T.
      ev("BUs-ACK are received by MNs", "", "14f + 8d + 2F + h + 34T"),
  };
  s.classification = {DesignChange::Design, MobilityScope::Macro,
                      HandoverMode::Soft};
  s.price = 1000;
  s.packet_loss_window = DelayExpr::zero();
  s.handover_delay = DelayExpr::max_of({lin("2d + h + 6T"), lin("4f + 7T + d")});
  s.signaling_delay = lin("14f + 6d + 2F + h + 30T + D");
  return s;
}

ProtocolSpec make_smipv6() {
  ProtocolSpec s;
  s.id = ProtocolId::SMIPv6;
  s.events = {
      ev("L2 Trigger", "T", "0"),
      ev("FBU", "d + 2T", "T"),
      ev("BU", "3f + F + d + 6T", "T"),
      ev("FBACK", "d + 2T", "d + 3T"),
      ev("Rerouting of packets", "4f + d + 6T", "d + 3T"),
      ev("L2 Handover", "h", "2d + 5T"),
      ev("Packets sent by CNs@NCoA", "3f + F + d + 6T", "d + 3f + F + 6T"),
      ev("Rerouted packets are received", "", "4f + 2d + 9T"),
      ev("Packets sent by CNs are received", "", "6f + 2F + 2d + 12T"),
  };
  s.classification = {DesignChange::Design, MobilityScope::Macro,
                      HandoverMode::Soft};
  s.price = 1500;
  s.packet_loss_window = DelayExpr::zero();
  s.handover_delay = lin("4f + 4T");
  s.signaling_delay = lin("3f + F + d + 5T + D");
  return s;
}

ProtocolSpec make_efmipv6() {
  ProtocolSpec s;
  s.id = ProtocolId::EFMIPv6;
  s.events = {
      ev("L2 Trigger", "T", "0"),
      ev("nCoA-REQ-MN", "d + 2T", "T"),
      ev("nCoA-REQ-PAR", "4f + 5T", "d + 2T"),
      ev("nCoA-REP", "4f + 5T", "d + 4f + 7T"),
      ev("BUs sent to HA/CN", "3f + F + 5T", "d + 8f + 12T"),
      ev("nCoA-Adv", "d + 2T", "d + 8f + 12T"),
      ev("Packets are rerouted through PAR", "4f + 5T", "d + 8f + 12T"),
      ev("BU-ACK", "3f + F + 5T", "d + 11f + 17T + F"),
      ev("L2 Handover", "h", "d + 11f + 17T + F"),
      ev("FNA", "d + 2T", "d + 11f + 17T + F + h"),
      ev("Rerouted packets are received", "", "2d + 12f + 17T"),
      ev("Packets are received by MN", "",
         "max(2d + 11f + 19T + F + h, 2d + 12f + 17T)"),
      ev("NAACK", "d + 2T", "2d + 11f + 19T + F + h"),
      ev("NAACKs are received by MN", "", "3d + 11f + 21T + F + h"),
  };
  s.classification = {DesignChange::Design, MobilityScope::Macro,
                      HandoverMode::Soft};
  s.price = 1000;
  s.packet_loss_window = DelayExpr::zero();
  s.handover_delay =
      DelayExpr::max_of({lin("3f + h + F + 5T"), lin("4f + 3T")});
  s.signaling_delay = lin("3d + 11f + 21T + F + h");
  return s;
}

ProtocolSpec make_hmipv6() {
  ProtocolSpec s;
  s.id = ProtocolId::HMIPv6;
  s.events = {
      ev("L2 Trigger", "T", "0"),
      ev("RtSolPr", "d + 2T", "T"),
      ev("PrRtAdv", "d + 2T", "d + 2T"),
      ev("FBU", "d + 2T", "2d + 4T"),
      ev("HI", "4f + 5T", "3d + 6T"),
      ev("HACK", "4f + 5T", "3d + 4f + 11T"),
      ev("FBACK", "d + 2T", "3d + 8f + 16T"),
      ev("Packets are rerouted through PAR", "4f + 5T", "3d + 8f + 16T"),
      ev("L2 Handover", "h", "4d + 8f + 18T"),
      ev("FNA", "d + 2T", "4d + 8f + h + 18T"),
      ev("FNA-ACK", "d + 2T", "5d + 8f + h + 20T"),
      ev("BUs sent to MAP", "2f + d + T", "6d + 8f + h + 22T"),
      ev("PAR sends packets to MN", "",
         "max(5d + 8f + h + 20T, 12f + 3d + 21T)"),
      ev("Packets are received by MN", "",
         "max(6d + 8f + h + 22T, 12f + 4d + 23T)"),
      ev("BUs are received by MAP", "", "10f + 7d + h + 23T"),
      ev("BUs-ACK are received by MN", "", "12f + 8d + h + 24T"),
  };
  s.classification = {DesignChange::Architecture, MobilityScope::Micro,
                      HandoverMode::Soft};
  s.price = 1500;
  s.packet_loss_window = DelayExpr::zero();
  s.handover_delay =
      DelayExpr::max_of({lin("2d + h + 6T"), lin("2f + d + 5T")});
  s.signaling_delay = lin("10f + 3d + h + 19T + D");
  return s;
}

const std::array<ProtocolSpec, 5>& all_specs() {
  static const std::array<ProtocolSpec, 5> specs = {
      make_mipv6(), make_fmipv6(), make_smipv6(), make_efmipv6(),
      make_hmipv6(),
  };
  return specs;
}

} // namespace

const ProtocolSpec& timeline(ProtocolId id) {
  return all_specs()[static_cast<std::size_t>(id)];
}

DelayExpr packet_loss_window(ProtocolId id) {
  return timeline(id).packet_loss_window;
}

DelayExpr handover_delay(ProtocolId id) { return timeline(id).handover_delay; }

DelayExpr signaling_delay(ProtocolId id) { return timeline(id).signaling_delay; }

PacketLoss packet_loss(ProtocolId id, const ScenarioParams& p) {
  double window = timeline(id).packet_loss_window.evaluate(p);
  return {window, window * p.throughput_pkt_per_s};
}

double rerouting_safety_margin(const ScenarioParams& p) {
  static const DelayExpr margin = lin("4f + T - h");
  return margin.evaluate(p);
}

std::vector<ChainCheck> ConsistencyReport::discrepancies() const {
  std::vector<ChainCheck> out;
  for (const auto& r : rows) {
    if (!r.consistent) out.push_back(r);
  }
  return out;
}

ConsistencyReport check_chain_consistency(const ProtocolSpec& spec) {
  ConsistencyReport report;
  report.id = spec.id;

  struct Candidate {
    std::string canon;
    std::string label;
  };
  std::vector<Candidate> candidates;

  auto find = [&candidates](const std::string& canon) -> const Candidate* {
    for (const auto& c : candidates) {
      if (c.canon == canon) return &c;
    }
    return nullptr;
  };

  auto add_candidate = [&candidates](const DelayExpr& e, std::string label) {
    DelayExpr n = distribute_offsets(e);
    if (!n.is_linear()) {
      for (const auto& branch : n.children()) {
        candidates.push_back({canonical_form(branch), label});
      }
    }
    candidates.push_back({canonical_form(n), std::move(label)});
  };

  for (std::size_t k = 0; k < spec.events.size(); ++k) {
    const auto& row = spec.events[k];
    ChainCheck check;
    check.row = k;
    check.event = row.name;

    DelayExpr ts = distribute_offsets(row.timestamp);
    check.actual = canonical_form(ts);

    if (k == 0) {
      check.expected = "0";
      check.consistent = ts.is_zero();
      if (check.consistent) check.matched_via = "timeline origin";
    } else {
      const auto& prev = spec.events[k - 1];
      if (prev.delay) {
        check.expected =
            canonical_form(distribute_offsets(prev.timestamp + *prev.delay));
      } else {
        check.expected = "(no delay listed for \"" + prev.name + "\")";
      }
      if (const Candidate* c = find(check.actual)) {
        check.consistent = true;
        check.matched_via = c->label;
      } else if (!ts.is_linear()) {
        bool all_branches = true;
        std::string via;
        for (const auto& branch : ts.children()) {
          const Candidate* c = find(canonical_form(branch));
          if (c == nullptr) {
            all_branches = false;
            break;
          }
          if (!via.empty()) via += ", ";
          via += c->label;
        }
        if (all_branches) {
          check.consistent = true;
          check.matched_via = "branches: " + via;
        }
      }
    }

    report.rows.push_back(check);

    std::string label = "t[" + std::to_string(k) + "]";
    add_candidate(row.timestamp, label);
    if (row.delay) {
      add_candidate(row.timestamp + *row.delay, label + "+delay");
    }
  }
  return report;
}

} // namespace hoprank
