#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstddef>
#include <set>
#include <string>

#include "hoprank/delay_expr.hpp"
#include "hoprank/errors.hpp"
#include "hoprank/timelines.hpp"

using namespace hoprank;

namespace {

ScenarioParams slow_network() {
  ScenarioParams p;
  p.processing_s = 2.5e-3;
  p.wired_local_s = 35.0 / 3.0e8;
  p.wired_global_s = 2000.0 / 3.0e8;
  p.radio_s = 500.0 / 2.0e8;
  p.l2_handover_s = 0.0;
  p.address_resolution_s = 1.0;
  p.throughput_pkt_per_s = 1.0;
  return p;
}

std::string canon(ProtocolId id, const DelayExpr& (*pick)(const ProtocolSpec&)) {
  return canonical_form(pick(timeline(id)));
}

const DelayExpr& pick_loss(const ProtocolSpec& s) { return s.packet_loss_window; }
const DelayExpr& pick_ho(const ProtocolSpec& s) { return s.handover_delay; }
const DelayExpr& pick_sig(const ProtocolSpec& s) { return s.signaling_delay; }

std::set<std::size_t> bad_rows(ProtocolId id) {
  std::set<std::size_t> out;
  for (const auto& check : check_chain_consistency(timeline(id)).discrepancies()) {
    out.insert(check.row);
  }
  return out;
}

bool same_expr(std::string_view a, std::string_view b) {
  return canonical_form(parse_delay_expr(a)) == canonical_form(parse_delay_expr(b));
}

} // namespace

TEST_CASE("protocol names round-trip") {
  for (ProtocolId id : kAllProtocols) {
    CHECK(protocol_from_name(protocol_name(id)) == id);
  }
  CHECK(protocol_name(ProtocolId::EFMIPv6) == "EFMIPv6");
  CHECK_THROWS_AS(protocol_from_name("MIPv7"), ValidationError);
  CHECK(kAllProtocols.size() == kProtocolCount);
}

TEST_CASE("timeline row counts match the source tables") {
  CHECK(timeline(ProtocolId::MIPv6).events.size() == 9);
  CHECK(timeline(ProtocolId::FMIPv6).events.size() == 16);
  CHECK(timeline(ProtocolId::SMIPv6).events.size() == 9);
  CHECK(timeline(ProtocolId::EFMIPv6).events.size() == 14);
  CHECK(timeline(ProtocolId::HMIPv6).events.size() == 16);
}

TEST_CASE("timeline endpoints") {
  for (ProtocolId id : kAllProtocols) {
    const auto& spec = timeline(id);
    CHECK(spec.id == id);
    CHECK(spec.events.front().name == "L2 Trigger");
    CHECK(canonical_form(spec.events.front().timestamp) == "0");
  }
  const auto& mip = timeline(ProtocolId::MIPv6);
  CHECK(mip.events.back().name == "Packets sent by CNs are received");
  CHECK(canonical_form(mip.events.back().timestamp) == "36T+22f+2F+6d+h");

  const auto& smip = timeline(ProtocolId::SMIPv6);
  CHECK(canonical_form(smip.events.back().timestamp) == "12T+6f+2F+2d");

  const auto& fmip = timeline(ProtocolId::FMIPv6);
  CHECK(fmip.events[14].name == "BUs are received by CNs");
  CHECK(canonical_form(fmip.events[14].timestamp) == "28T+11f+F+7d+h");
}

TEST_CASE("classifications and prices") {
  using DC = DesignChange;
  using MS = MobilityScope;
  using HM = HandoverMode;
  struct Row {
    ProtocolId id;
    DC change;
    MS scope;
    HM mode;
    double price;
  };
  const Row expected[] = {
      {ProtocolId::MIPv6, DC::None, MS::Macro, HM::Hard, 1000},
      {ProtocolId::FMIPv6, DC::Design, MS::Macro, HM::Soft, 1000},
      {ProtocolId::SMIPv6, DC::Design, MS::Macro, HM::Soft, 1500},
      {ProtocolId::EFMIPv6, DC::Design, MS::Macro, HM::Soft, 1000},
      {ProtocolId::HMIPv6, DC::Architecture, MS::Micro, HM::Soft, 1500},
  };
  for (const Row& r : expected) {
    const auto& spec = timeline(r.id);
    CHECK(spec.classification.change == r.change);
    CHECK(spec.classification.scope == r.scope);
    CHECK(spec.classification.mode == r.mode);
    CHECK(spec.price == r.price);
  }
  CHECK(to_string(DC::None) == "none");
  CHECK(to_string(DC::Architecture) == "architecture");
  CHECK(to_string(MS::Micro) == "micro");
  CHECK(to_string(HM::Soft) == "soft");
}

TEST_CASE("metric expressions in canonical form") {
  CHECK(canon(ProtocolId::MIPv6, pick_loss) == "35T+22f+2F+6d+h");
  CHECK(canon(ProtocolId::MIPv6, pick_ho) == "12T+6f+2F+2d+h");
  CHECK(canon(ProtocolId::MIPv6, pick_sig) == "30T+19f+2F+5d+h+D");

  CHECK(canon(ProtocolId::FMIPv6, pick_loss) == "0");
  CHECK(canon(ProtocolId::FMIPv6, pick_ho) == "max(6T+2d+h, 7T+4f+d)");
  CHECK(canon(ProtocolId::FMIPv6, pick_sig) == "30T+14f+2F+6d+h+D");

  CHECK(canon(ProtocolId::SMIPv6, pick_loss) == "0");
  CHECK(canon(ProtocolId::SMIPv6, pick_ho) == "4T+4f");
  CHECK(canon(ProtocolId::SMIPv6, pick_sig) == "5T+3f+F+d+D");

  CHECK(canon(ProtocolId::EFMIPv6, pick_loss) == "0");
  CHECK(canon(ProtocolId::EFMIPv6, pick_ho) == "max(5T+3f+F+h, 3T+4f)");
  CHECK(canon(ProtocolId::EFMIPv6, pick_sig) == "21T+11f+F+3d+h");

  CHECK(canon(ProtocolId::HMIPv6, pick_loss) == "0");
  CHECK(canon(ProtocolId::HMIPv6, pick_ho) == "max(6T+2d+h, 5T+2f+d)");
  CHECK(canon(ProtocolId::HMIPv6, pick_sig) == "19T+10f+3d+h+D");

  CHECK(handover_delay(ProtocolId::FMIPv6).kind() == DelayExpr::Kind::Max);
  CHECK(signaling_delay(ProtocolId::EFMIPv6)
            .coefficients()[static_cast<std::size_t>(DelaySymbol::AddressResolution)]
            .is_zero());
}

TEST_CASE("metric expressions equal the table spellings") {
  CHECK(same_expr(canon(ProtocolId::MIPv6, pick_loss), "35T + 22f + 6d + h + 2F"));
  CHECK(same_expr(canon(ProtocolId::MIPv6, pick_ho), "12T + 6f + 2d + h + 2F"));
  CHECK(same_expr(canon(ProtocolId::MIPv6, pick_sig), "30T + 19f + 5d + h + 2F + D"));
  CHECK(same_expr(canon(ProtocolId::FMIPv6, pick_sig), "14f + 6d + 2F + h + 30T + D"));
  CHECK(same_expr(canon(ProtocolId::SMIPv6, pick_ho), "4f + 4T"));
  CHECK(same_expr(canon(ProtocolId::SMIPv6, pick_sig), "3f + F + d + 5T + D"));
  CHECK(same_expr(canon(ProtocolId::EFMIPv6, pick_sig), "3d + 11f + 21T + F + h"));
  CHECK(same_expr(canon(ProtocolId::HMIPv6, pick_sig), "10f + 3d + h + 19T + D"));
  CHECK(canonical_form(parse_delay_expr("max(2d + h + 6T, 4f + 7T + d)")) ==
        canon(ProtocolId::FMIPv6, pick_ho));
  CHECK(canonical_form(parse_delay_expr("max(3f + h + F + 5T, 4f + 3T)")) ==
        canon(ProtocolId::EFMIPv6, pick_ho));
  CHECK(canonical_form(parse_delay_expr("max(2d + h + 6T, 2f + d + 5T)")) ==
        canon(ProtocolId::HMIPv6, pick_ho));
}

TEST_CASE("handover delay equals the timeline difference where the chain is clean") {
  const auto& mip = timeline(ProtocolId::MIPv6);
  DelayExpr gap = subtract_linear(mip.events[8].timestamp, mip.events[5].timestamp);
  CHECK(canonical_form(gap) == canon(ProtocolId::MIPv6, pick_ho));

  DelayExpr smip_gap = subtract_linear(parse_delay_expr("2d + 4f + 9T"),
                                       parse_delay_expr("2d + 5T"));
  CHECK(canonical_form(smip_gap) == canon(ProtocolId::SMIPv6, pick_ho));
}

TEST_CASE("chain consistency: discrepancy rows per protocol") {
  CHECK(bad_rows(ProtocolId::MIPv6) == std::set<std::size_t>{2});
  CHECK(bad_rows(ProtocolId::FMIPv6) == std::set<std::size_t>{2, 15});
  CHECK(bad_rows(ProtocolId::SMIPv6) == std::set<std::size_t>{6});
  CHECK(bad_rows(ProtocolId::EFMIPv6) == std::set<std::size_t>{2, 10});
  CHECK(bad_rows(ProtocolId::HMIPv6) == std::set<std::size_t>{2, 13, 15});
}

TEST_CASE("chain consistency: report details") {
  auto mip = check_chain_consistency(timeline(ProtocolId::MIPv6));
  CHECK(mip.id == ProtocolId::MIPv6);
  CHECK(mip.rows.size() == 9);
  CHECK(mip.rows[0].consistent);
  CHECK(mip.rows[0].matched_via == "timeline origin");
  CHECK_FALSE(mip.rows[2].consistent);
  CHECK(mip.rows[2].event == "RA");
  CHECK(mip.rows[2].actual == "6T+4f+d");
  CHECK(mip.rows[2].expected == "7T+4f+d");

  auto fmip = check_chain_consistency(timeline(ProtocolId::FMIPv6));
  CHECK(fmip.rows[2].actual == "2T+d");
  CHECK(fmip.rows[2].expected == "3T+d");
  CHECK(fmip.rows[12].consistent);
  CHECK(fmip.rows[12].matched_via.rfind("branches: ", 0) == 0);
  CHECK(fmip.rows[13].consistent);
  CHECK(fmip.rows[13].matched_via == "t[12]+delay");
  CHECK_FALSE(fmip.rows[15].consistent);
  CHECK(fmip.rows[15].actual == "34T+14f+2F+8d+h");
  CHECK(fmip.rows[15].expected ==
        "(no delay listed for \"BUs are received by CNs\")");

  auto smip = check_chain_consistency(timeline(ProtocolId::SMIPv6));
  CHECK_FALSE(smip.rows[6].consistent);
  CHECK(smip.rows[6].actual == "6T+3f+F+d");
  CHECK(smip.rows[6].expected == "5T+2d+h");

  auto efmip = check_chain_consistency(timeline(ProtocolId::EFMIPv6));
  CHECK_FALSE(efmip.rows[10].consistent);
  CHECK(efmip.rows[10].actual == "17T+12f+2d");
  CHECK(efmip.rows[11].consistent);

  auto hmip = check_chain_consistency(timeline(ProtocolId::HMIPv6));
  CHECK(hmip.rows[12].consistent);
  CHECK(hmip.rows[12].matched_via.rfind("branches: ", 0) == 0);
  CHECK_FALSE(hmip.rows[13].consistent);
  CHECK(hmip.rows[13].actual == "max(22T+8f+6d+h, 23T+12f+4d)");
  CHECK_FALSE(hmip.rows[15].consistent);
  CHECK(hmip.rows[15].actual == "24T+12f+8d+h");
}

TEST_CASE("chain consistency: synthetic specs") {
  ProtocolSpec clean;
  clean.id = ProtocolId::MIPv6;
  TimelineEvent a;
  a.name = "start";
  a.delay = parse_delay_expr("2T + f");
  a.timestamp = parse_delay_expr("0");
  TimelineEvent b;
  b.name = "end";
  b.timestamp = parse_delay_expr("2T + f");
  clean.events = {a, b};
  auto report = check_chain_consistency(clean);
  CHECK(report.discrepancies().empty());
  CHECK(report.rows[1].matched_via == "t[0]+delay");

  TimelineEvent c;
  c.name = "fanout";
  c.timestamp = DelayExpr::max_of(
      {parse_delay_expr("2T + f"), parse_delay_expr("0")});
  clean.events = {a, b, c};
  auto fanout = check_chain_consistency(clean);
  CHECK(fanout.discrepancies().empty());
  CHECK(fanout.rows[2].matched_via.rfind("branches: ", 0) == 0);

  TimelineEvent off;
  off.name = "late";
  off.timestamp = parse_delay_expr("3T + f");
  clean.events = {a, off};
  auto broken = check_chain_consistency(clean);
  REQUIRE(broken.discrepancies().size() == 1);
  CHECK(broken.rows[1].expected == "2T+f");
  CHECK(broken.rows[1].actual == "3T+f");
}

TEST_CASE("packet loss window and counts") {
  ScenarioParams p = slow_network();
  p.throughput_pkt_per_s = 100.0;

  PacketLoss mip = packet_loss(ProtocolId::MIPv6, p);
  double window = 35 * p.processing_s + 22 * p.wired_local_s +
                  2 * p.wired_global_s + 6 * p.radio_s + p.l2_handover_s;
  CHECK(mip.window_s == doctest::Approx(window).epsilon(1e-12));
  CHECK(std::abs(mip.window_s - 0.08753104) < 1e-6);
  CHECK(mip.packets_lost == doctest::Approx(100.0 * window).epsilon(1e-12));

  for (ProtocolId id :
       {ProtocolId::FMIPv6, ProtocolId::SMIPv6, ProtocolId::EFMIPv6,
        ProtocolId::HMIPv6}) {
    PacketLoss none = packet_loss(id, p);
    CHECK(none.window_s == 0.0);
    CHECK(none.packets_lost == 0.0);
  }

  p.throughput_pkt_per_s = 0.0;
  PacketLoss idle = packet_loss(ProtocolId::MIPv6, p);
  CHECK(idle.window_s > 0.0);
  CHECK(idle.packets_lost == 0.0);
}

TEST_CASE("delay metrics at the slow-network point") {
  ScenarioParams p = slow_network();
  CHECK(std::abs(handover_delay(ProtocolId::SMIPv6).evaluate(p) - 0.0100004) < 1e-6);
  CHECK(std::abs(handover_delay(ProtocolId::HMIPv6).evaluate(p) - 0.015005) < 1e-6);
  CHECK(std::abs(handover_delay(ProtocolId::FMIPv6).evaluate(p) - 0.0175029) < 1e-6);
  CHECK(std::abs(handover_delay(ProtocolId::MIPv6).evaluate(p) - 0.0300191) < 1e-6);
  CHECK(std::abs(signaling_delay(ProtocolId::EFMIPv6).evaluate(p) - 0.0525155) < 1e-6);
  CHECK(std::abs(signaling_delay(ProtocolId::SMIPv6).evaluate(p) - 1.0125095) < 1e-6);
  CHECK(std::abs(packet_loss_window(ProtocolId::MIPv6).evaluate(p) - 0.08753104) < 1e-6);

  ScenarioParams slow_l2 = p;
  slow_l2.l2_handover_s = 0.010;
  CHECK(handover_delay(ProtocolId::FMIPv6).evaluate(slow_l2) ==
        doctest::Approx(6 * p.processing_s + 2 * p.radio_s + 0.010)
            .epsilon(1e-12));

  for (ProtocolId id : kAllProtocols) {
    CHECK(packet_loss_window(id).evaluate(p) >= 0.0);
    CHECK(handover_delay(id).evaluate(p) >= 0.0);
    CHECK(signaling_delay(id).evaluate(p) >= 0.0);
  }
}

TEST_CASE("address resolution contributes linearly") {
  ScenarioParams with = slow_network();
  ScenarioParams without = with;
  without.address_resolution_s = 0.0;
  for (ProtocolId id : kAllProtocols) {
    double delta = signaling_delay(id).evaluate(with) -
                   signaling_delay(id).evaluate(without);
    double expected = id == ProtocolId::EFMIPv6 ? 0.0 : 1.0;
    CHECK(delta == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("rerouting safety margin") {
  ScenarioParams p = slow_network();
  CHECK(rerouting_safety_margin(p) > 0.0);
  CHECK(rerouting_safety_margin(p) ==
        doctest::Approx(4 * p.wired_local_s + p.processing_s - p.l2_handover_s)
            .epsilon(1e-12));
  ScenarioParams sluggish = p;
  sluggish.l2_handover_s = 1.0;
  CHECK(rerouting_safety_margin(sluggish) < 0.0);
}
