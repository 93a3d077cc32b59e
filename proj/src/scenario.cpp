#include "hoprank/scenario.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "hoprank/errors.hpp"
#include "hoprank/format.hpp"
#include "hoprank/guard_channel.hpp"

namespace hoprank {

std::string format_g17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string format_sig(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

std::string_view criterion_key(CriterionId id) {
  switch (id) {
    case CriterionId::PacketLoss: return "packet_loss";
    case CriterionId::HandoverDelay: return "handover_delay";
    case CriterionId::CallBlocking: return "call_blocking";
    case CriterionId::HandoverBlocking: return "handover_blocking";
    case CriterionId::SignalingDelay: return "signaling_delay";
    case CriterionId::Price: return "price";
  }
  return "?";
}

std::string_view criterion_label(CriterionId id) {
  switch (id) {
    case CriterionId::PacketLoss: return "Packet loss";
    case CriterionId::HandoverDelay: return "Handover delay";
    case CriterionId::CallBlocking: return "Call blocking";
    case CriterionId::HandoverBlocking: return "Handover blocking";
    case CriterionId::SignalingDelay: return "Signaling delay";
    case CriterionId::Price: return "Price";
  }
  return "?";
}

CriterionId criterion_from_key(std::string_view key) {
  for (CriterionId id : kAllCriteria)
    if (key == criterion_key(id)) return id;
  throw ValidationError("unknown criterion \"" + std::string(key) +
                        "\" (expected packet_loss, handover_delay, call_blocking, "
                        "handover_blocking, signaling_delay, or price)");
}

double propagation_delay(double length_m, double speed_m_per_s) {
  if (!std::isfinite(length_m) || length_m < 0.0)
    throw ValidationError("link length must be finite and nonnegative");
  if (!std::isfinite(speed_m_per_s) || speed_m_per_s <= 0.0)
    throw ValidationError("propagation speed must be finite and positive");
  return length_m / speed_m_per_s;
}

std::uint64_t fnv1a64(std::string_view text) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream out;
  out << in.rdbuf();
  if (in.bad()) throw IoError("read failed for " + path.string());
  return out.str();
}

namespace {

struct KvEntry {
  std::string value;
  std::size_t line = 0;
  std::size_t col = 0;
  mutable bool consumed = false;
};

struct Section {
  std::size_t line = 0;
  std::map<std::string, KvEntry> entries;
  std::vector<std::string> order; // keys in file order, for error reports
  mutable bool consumed = false;
};

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

/// Sectioned key=value format: `[section]` headers, `key = value` lines,
/// `#` comments, blank lines ignored. Keys must be unique per section.
std::map<std::string, Section> parse_sections(std::string_view text,
                                              std::string_view origin) {
  std::map<std::string, Section> sections;
  std::string current;
  std::size_t line_no = 0;
  std::istringstream stream{std::string(text)};
  std::string raw;
  while (std::getline(stream, raw)) {
    ++line_no;
    std::string line = raw;
    if (auto hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    std::string body = trim(line);
    if (body.empty()) continue;
    if (body.front() == '[') {
      if (body.back() != ']')
        throw ParseError(std::string(origin) + ": unterminated section header",
                         line_no, raw.find('[') + 1);
      current = trim(body.substr(1, body.size() - 2));
      if (current.empty())
        throw ParseError(std::string(origin) + ": empty section name", line_no, 1);
      if (sections.count(current))
        throw ParseError(std::string(origin) + ": duplicate section [" + current + "]",
                         line_no, 1);
      sections[current].line = line_no;
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ParseError(std::string(origin) + ": expected `key = value`", line_no, 1);
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty())
      throw ParseError(std::string(origin) + ": missing key before `=`", line_no, 1);
    if (current.empty())
      throw ParseError(std::string(origin) + ": key \"" + key +
                           "\" appears before any [section]",
                       line_no, 1);
    Section& sec = sections[current];
    if (sec.entries.count(key))
      throw ParseError(std::string(origin) + ": duplicate key [" + current + "] " + key,
                       line_no, 1);
    std::size_t col = 0;
    while (col < line.size() && std::isspace(static_cast<unsigned char>(line[col])))
      ++col;
    sec.entries[key] = KvEntry{value, line_no, col + 1};
    sec.order.push_back(key);
  }
  return sections;
}

/// Accepts plain decimals and exact fractions like `1/3`.
double parse_number(const std::string& value, std::string_view origin,
                    const std::string& path, const KvEntry& entry) {
  auto fail = [&](const char* why) {
    throw ParseError(std::string(origin) + ": " + path + ": " + why +
                         " (got \"" + value + "\")",
                     entry.line, entry.col);
  };
  if (value.empty()) fail("empty value");
  auto slash = value.find('/');
  try {
    std::size_t used = 0;
    if (slash != std::string::npos) {
      std::string num = trim(value.substr(0, slash));
      std::string den = trim(value.substr(slash + 1));
      double n = std::stod(num, &used);
      if (used != num.size()) fail("trailing characters in numerator");
      double d = std::stod(den, &used);
      if (used != den.size()) fail("trailing characters in denominator");
      if (d == 0.0) fail("zero denominator");
      return n / d;
    }
    double v = std::stod(value, &used);
    if (used != value.size()) fail("trailing characters after number");
    return v;
  } catch (const std::invalid_argument&) {
    fail("not a number");
  } catch (const std::out_of_range&) {
    fail("number out of range");
  }
  return 0.0; // unreachable
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> items;
  std::string cur;
  for (char c : value) {
    if (c == ',') {
      items.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  items.push_back(trim(cur));
  return items;
}

class SectionReader {
 public:
  SectionReader(const std::map<std::string, Section>& sections,
                std::string_view origin)
      : sections_(sections), origin_(origin) {}

  bool has(const std::string& name) const { return sections_.count(name) > 0; }

  const Section* open(const std::string& name) const {
    auto it = sections_.find(name);
    if (it == sections_.end()) return nullptr;
    it->second.consumed = true;
    return &it->second;
  }

  const Section& require(const std::string& name) const {
    const Section* sec = open(name);
    if (!sec)
      throw ValidationError(std::string(origin_) + ": missing required section [" +
                            name + "]");
    return *sec;
  }

  const KvEntry* find(const Section& sec, const std::string& key) const {
    auto it = sec.entries.find(key);
    if (it == sec.entries.end()) return nullptr;
    it->second.consumed = true;
    return &it->second;
  }

  const KvEntry& require(const Section& sec, const std::string& section_name,
                         const std::string& key) const {
    const KvEntry* e = find(sec, key);
    if (!e)
      throw ValidationError(std::string(origin_) + ": missing key [" + section_name +
                            "] " + key);
    return *e;
  }

  double number(const Section& sec, const std::string& section_name,
                const std::string& key) const {
    const KvEntry& e = require(sec, section_name, key);
    return parse_number(e.value, origin_, "[" + section_name + "] " + key, e);
  }

  std::optional<double> optional_number(const Section& sec,
                                        const std::string& section_name,
                                        const std::string& key) const {
    const KvEntry* e = find(sec, key);
    if (!e) return std::nullopt;
    return parse_number(e->value, origin_, "[" + section_name + "] " + key, *e);
  }

  /// Every section and key must have been consumed by now.
  void reject_unknown(const std::map<std::string, Section>& sections) const {
    for (const auto& [name, sec] : sections) {
      if (!sec.consumed)
        throw ParseError(std::string(origin_) + ": unknown section [" + name + "]",
                         sec.line, 1);
      for (const std::string& key : sec.order) {
        const KvEntry& e = sec.entries.at(key);
        if (!e.consumed)
          throw ParseError(std::string(origin_) + ": unknown key [" + name + "] " + key,
                           e.line, e.col);
      }
    }
  }

 private:
  const std::map<std::string, Section>& sections_;
  std::string_view origin_;
};

McdmConfig parse_mcdm(const SectionReader& reader, const Section* sec,
                      std::string_view origin,
                      std::vector<std::string>& provenance) {
  McdmConfig cfg;
  if (!sec) {
    cfg.criteria.assign(kAllCriteria.begin(), kAllCriteria.end());
    cfg.directions.assign(kAllCriteria.size(), Direction::Cost);
    provenance.push_back(
        "mcdm: defaulted to all six criteria, each minimized (cost)");
    return cfg;
  }
  const KvEntry* crit = reader.find(*sec, "criteria");
  if (crit) {
    std::set<CriterionId> seen;
    for (const std::string& item : split_list(crit->value)) {
      if (item.empty())
        throw ParseError(std::string(origin) + ": [mcdm] criteria: empty list item",
                         crit->line, crit->col);
      std::string name = item;
      Direction dir = Direction::Cost;
      if (auto colon = item.find(':'); colon != std::string::npos) {
        name = trim(item.substr(0, colon));
        std::string d = trim(item.substr(colon + 1));
        if (d == "cost") dir = Direction::Cost;
        else if (d == "benefit") dir = Direction::Benefit;
        else
          throw ParseError(std::string(origin) +
                               ": [mcdm] criteria: direction must be `cost` or "
                               "`benefit`, got \"" + d + "\"",
                           crit->line, crit->col);
      }
      CriterionId id = criterion_from_key(name);
      if (!seen.insert(id).second)
        throw ParseError(std::string(origin) + ": [mcdm] criteria: \"" + name +
                             "\" listed twice",
                         crit->line, crit->col);
      cfg.criteria.push_back(id);
      cfg.directions.push_back(dir);
    }
  } else {
    cfg.criteria.assign(kAllCriteria.begin(), kAllCriteria.end());
    cfg.directions.assign(kAllCriteria.size(), Direction::Cost);
    provenance.push_back(
        "mcdm criteria: defaulted to all six, each minimized (cost)");
  }

  const KvEntry* weights = reader.find(*sec, "weights");
  if (weights) {
    std::vector<double> w;
    for (const std::string& item : split_list(weights->value))
      w.push_back(parse_number(item, origin, "[mcdm] weights", *weights));
    if (w.size() != cfg.criteria.size())
      throw ValidationError(std::string(origin) + ": [mcdm] weights has " +
                            std::to_string(w.size()) + " entries for " +
                            std::to_string(cfg.criteria.size()) + " criteria");
    cfg.weights = std::move(w);
  }

  std::size_t n = cfg.criteria.size();
  bool any_row = false;
  for (std::size_t i = 1; i <= n; ++i)
    if (sec->entries.count("row_" + std::to_string(i))) any_row = true;
  if (any_row) {
    std::vector<std::vector<double>> rows;
    for (std::size_t i = 1; i <= n; ++i) {
      const std::string key = "row_" + std::to_string(i);
      const KvEntry& e = reader.require(*sec, "mcdm", key);
      std::vector<double> row;
      for (const std::string& item : split_list(e.value))
        row.push_back(parse_number(item, origin, "[mcdm] " + key, e));
      if (row.size() != n)
        throw ValidationError(std::string(origin) + ": [mcdm] " + key + " has " +
                              std::to_string(row.size()) + " entries for " +
                              std::to_string(n) + " criteria");
      rows.push_back(std::move(row));
    }
    cfg.pairwise = PairwiseMatrix(rows);
  }
  return cfg;
}

} // namespace

ResolvedScenario load_scenario(std::string_view text, std::string_view origin) {
  auto sections = parse_sections(text, origin);
  SectionReader reader(sections, origin);
  ResolvedScenario sc;
  auto note = [&sc](std::string line) { sc.provenance.push_back(std::move(line)); };

  {
    const Section& links = reader.require("links");
    double wl_len = reader.number(links, "links", "wireless_length_m");
    double wl_spd = reader.number(links, "links", "wireless_speed_m_per_s");
    double lo_len = reader.number(links, "links", "wired_local_length_m");
    double lo_spd = reader.number(links, "links", "wired_local_speed_m_per_s");
    double gl_len = reader.number(links, "links", "wired_global_length_m");
    double gl_spd = reader.number(links, "links", "wired_global_speed_m_per_s");
    sc.params.radio_s = propagation_delay(wl_len, wl_spd);
    sc.params.wired_local_s = propagation_delay(lo_len, lo_spd);
    sc.params.wired_global_s = propagation_delay(gl_len, gl_spd);
    note("radio_s = " + format_g17(sc.params.radio_s) + " s (wireless " +
         format_g17(wl_len) + " m at " + format_g17(wl_spd) + " m/s)");
    note("wired_local_s = " + format_g17(sc.params.wired_local_s) + " s (local wire " +
         format_g17(lo_len) + " m at " + format_g17(lo_spd) + " m/s)");
    note("wired_global_s = " + format_g17(sc.params.wired_global_s) +
         " s (global wire " + format_g17(gl_len) + " m at " + format_g17(gl_spd) +
         " m/s)");
  }

  {
    const Section& delays = reader.require("delays");
    sc.params.processing_s = reader.number(delays, "delays", "processing_T_s");
    auto h = reader.optional_number(delays, "delays", "l2_handover_h_s");
    auto dad = reader.optional_number(delays, "delays", "dad_D_s");
    sc.params.l2_handover_s = h.value_or(0.0);
    sc.params.address_resolution_s = dad.value_or(1.0);
    if (!h) note("l2_handover_h_s: defaulted to 0 s");
    if (!dad) note("dad_D_s: defaulted to 1 s (duplicate address detection)");
  }

  if (const Section* traffic = reader.open("traffic")) {
    sc.params.throughput_pkt_per_s =
        reader.number(*traffic, "traffic", "throughput_pkt_per_s");
  } else {
    sc.params.throughput_pkt_per_s = 0.0;
    note("throughput_pkt_per_s: defaulted to 0 (packet-loss column will be zero)");
  }
  sc.params.validate();

  {
    const Section& cell = reader.require("cell");
    double channels = reader.number(cell, "cell", "channels_total");
    double guard = reader.number(cell, "cell", "guard_channels");
    if (channels < 1.0 || channels != std::floor(channels) || channels > 1e6)
      throw ValidationError(std::string(origin) +
                            ": [cell] channels_total must be a positive integer");
    if (guard < 0.0 || guard != std::floor(guard))
      throw ValidationError(std::string(origin) +
                            ": [cell] guard_channels must be a nonnegative integer");
    sc.channels_total = static_cast<int>(channels);
    sc.guard_channels = static_cast<int>(guard);
    if (sc.guard_channels >= sc.channels_total)
      throw ValidationError(std::string(origin) +
                            ": [cell] guard_channels must be smaller than channels_total");

    double speed_kmh = reader.number(cell, "cell", "speed_kmh");
    double radius_km = reader.number(cell, "cell", "radius_km");
    double holding_s = reader.number(cell, "cell", "holding_time_s");
    MobilityParams mobility{speed_kmh / 3.6, radius_km * 1000.0, holding_s};
    mobility.validate();
    sc.call_completion_rate = completion_rate(mobility);
    sc.dwell_departure_rate = dwell_rate(mobility);
    note("call_completion_rate = " + format_g17(sc.call_completion_rate) +
         " /s (1 / " + format_g17(holding_s) + " s holding time)");
    note("dwell_departure_rate = " + format_g17(sc.dwell_departure_rate) +
         " /s (speed " + format_g17(speed_kmh) + " km/h across radius " +
         format_g17(radius_km) + " km: 2*v / (pi*r))");

    sc.new_call_rate = reader.number(cell, "cell", "new_call_rate_per_s");
    if (!std::isfinite(sc.new_call_rate) || sc.new_call_rate < 0.0)
      throw ValidationError(std::string(origin) +
                            ": [cell] new_call_rate_per_s must be finite and nonnegative");
    sc.handoff_rate = reader.optional_number(cell, "cell", "handoff_rate_per_s");
    if (sc.handoff_rate) {
      if (!std::isfinite(*sc.handoff_rate) || *sc.handoff_rate < 0.0)
        throw ValidationError(std::string(origin) +
                              ": [cell] handoff_rate_per_s must be finite and nonnegative");
      note("handoff_rate = " + format_g17(*sc.handoff_rate) + " /s (from file)");
    } else {
      note("handoff_rate: derived per run by fixed point over the blocking model");
    }
  }

  {
    const Section* costs = reader.open("costs");
    for (std::size_t i = 0; i < kProtocolCount; ++i) {
      ProtocolId id = kAllProtocols[i];
      std::string key(protocol_name(id));
      const KvEntry* e = costs ? reader.find(*costs, key) : nullptr;
      if (e) {
        double price = parse_number(e->value, origin, "[costs] " + key, *e);
        if (!std::isfinite(price) || price < 0.0)
          throw ValidationError(std::string(origin) + ": [costs] " + key +
                                " must be finite and nonnegative");
        sc.prices[i] = price;
      } else {
        sc.prices[i] = timeline(id).price;
        note("price " + key + " = " + format_g17(sc.prices[i]) +
             " (built-in default)");
      }
    }
  }

  sc.mcdm = parse_mcdm(reader, reader.open("mcdm"), origin, sc.provenance);
  reader.reject_unknown(sections);
  return sc;
}

ResolvedScenario load_scenario_file(const std::filesystem::path& path) {
  return load_scenario(read_text_file(path), path.string());
}

WeightVector load_weights_file(const std::filesystem::path& path) {
  std::string origin = path.string();
  auto sections = parse_sections(read_text_file(path), origin);
  SectionReader reader(sections, origin);
  const Section& sec = reader.require("weights");
  const KvEntry& e = reader.require(sec, "weights", "weights");
  std::vector<double> raw;
  for (const std::string& item : split_list(e.value))
    raw.push_back(parse_number(item, origin, "[weights] weights", e));
  reader.reject_unknown(sections);
  return WeightVector::normalized(raw);
}

PairwiseMatrix load_pairwise_file(const std::filesystem::path& path) {
  std::string origin = path.string();
  auto sections = parse_sections(read_text_file(path), origin);
  SectionReader reader(sections, origin);
  const Section& sec = reader.require("pairwise");
  std::size_t n = sec.entries.size();
  if (n == 0) throw ValidationError(origin + ": [pairwise] section is empty");
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 1; i <= n; ++i) {
    const std::string key = "row_" + std::to_string(i);
    const KvEntry& e = reader.require(sec, "pairwise", key);
    std::vector<double> row;
    for (const std::string& item : split_list(e.value))
      row.push_back(parse_number(item, origin, "[pairwise] " + key, e));
    if (row.size() != n)
      throw ValidationError(origin + ": [pairwise] " + key + " has " +
                            std::to_string(row.size()) + " entries for an " +
                            std::to_string(n) + "x" + std::to_string(n) + " matrix");
    rows.push_back(std::move(row));
  }
  reader.reject_unknown(sections);
  return PairwiseMatrix(rows);
}

std::string ResolvedScenario::canonical_dump() const {
  std::ostringstream out;
  auto put = [&out](std::string_view key, double v) {
    out << key << '=' << format_g17(v) << '\n';
  };
  put("processing_s", params.processing_s);
  put("wired_local_s", params.wired_local_s);
  put("wired_global_s", params.wired_global_s);
  put("radio_s", params.radio_s);
  put("l2_handover_s", params.l2_handover_s);
  put("address_resolution_s", params.address_resolution_s);
  put("throughput_pkt_per_s", params.throughput_pkt_per_s);
  out << "channels_total=" << channels_total << '\n';
  out << "guard_channels=" << guard_channels << '\n';
  put("new_call_rate", new_call_rate);
  put("call_completion_rate", call_completion_rate);
  put("dwell_departure_rate", dwell_departure_rate);
  out << "handoff_rate="
      << (handoff_rate ? format_g17(*handoff_rate) : std::string("derived")) << '\n';
  for (std::size_t i = 0; i < kProtocolCount; ++i)
    put("price_" + std::string(protocol_name(kAllProtocols[i])), prices[i]);
  out << "criteria=";
  for (std::size_t i = 0; i < mcdm.criteria.size(); ++i) {
    if (i) out << ',';
    out << criterion_key(mcdm.criteria[i]) << ':'
        << (mcdm.directions[i] == Direction::Cost ? "cost" : "benefit");
  }
  out << '\n';
  out << "weights=";
  if (mcdm.weights) {
    for (std::size_t i = 0; i < mcdm.weights->size(); ++i) {
      if (i) out << ',';
      out << format_g17((*mcdm.weights)[i]);
    }
  } else {
    out << "none";
  }
  out << '\n';
  out << "pairwise=";
  if (mcdm.pairwise) {
    const auto& m = *mcdm.pairwise;
    for (std::size_t i = 0; i < m.size(); ++i)
      for (std::size_t j = 0; j < m.size(); ++j) {
        if (i || j) out << ',';
        out << format_g17(m.at(i, j));
      }
  } else {
    out << "none";
  }
  out << '\n';
  return out.str();
}

std::uint64_t ResolvedScenario::hash() const { return fnv1a64(canonical_dump()); }

} // namespace hoprank
