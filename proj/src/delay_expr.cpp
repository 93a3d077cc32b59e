#include "hoprank/delay_expr.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>

#include "hoprank/errors.hpp"

namespace hoprank {

std::string_view symbol_name(DelaySymbol s) {
  switch (s) {
  case DelaySymbol::NodeProcessing: return "T";
  case DelaySymbol::WiredLocal: return "f";
  case DelaySymbol::WiredGlobal: return "F";
  case DelaySymbol::RadioLink: return "d";
  case DelaySymbol::L2Handover: return "h";
  case DelaySymbol::AddressResolution: return "D";
  }
  return "?";
}

double ScenarioParams::value(DelaySymbol s) const {
  switch (s) {
  case DelaySymbol::NodeProcessing: return processing_s;
  case DelaySymbol::WiredLocal: return wired_local_s;
  case DelaySymbol::WiredGlobal: return wired_global_s;
  case DelaySymbol::RadioLink: return radio_s;
  case DelaySymbol::L2Handover: return l2_handover_s;
  case DelaySymbol::AddressResolution: return address_resolution_s;
  }
  return 0;
}

void ScenarioParams::validate() const {
  auto check = [](double v, const char* name) {
    if (!std::isfinite(v) || v < 0) {
      throw ValidationError(std::string(name) +
                            " must be finite and non-negative");
    }
  };
  check(processing_s, "processing_s");
  check(wired_local_s, "wired_local_s");
  check(wired_global_s, "wired_global_s");
  check(radio_s, "radio_s");
  check(l2_handover_s, "l2_handover_s");
  check(address_resolution_s, "address_resolution_s");
  check(throughput_pkt_per_s, "throughput_pkt_per_s");
}

DelayExpr::DelayExpr() : kind_(Kind::Linear) {}

DelayExpr DelayExpr::zero() { return DelayExpr(); }

DelayExpr DelayExpr::constant(Rational seconds) {
  DelayExpr e;
  e.constant_ = seconds;
  return e;
}

DelayExpr DelayExpr::term(Rational coefficient, DelaySymbol s) {
  DelayExpr e;
  e.coeffs_[static_cast<std::size_t>(s)] = coefficient;
  return e;
}

DelayExpr DelayExpr::linear(std::initializer_list<Term> terms,
                            Rational constant) {
  DelayExpr e;
  for (const auto& [coeff, sym] : terms) {
    auto i = static_cast<std::size_t>(sym);
    e.coeffs_[i] = e.coeffs_[i] + coeff;
  }
  e.constant_ = constant;
  return e;
}

bool DelayExpr::is_zero() const {
  if (kind_ != Kind::Linear) return false;
  if (!constant_.is_zero()) return false;
  return std::all_of(coeffs_.begin(), coeffs_.end(),
                     [](const Rational& c) { return c.is_zero(); });
}

const std::array<Rational, kSymbolCount>& DelayExpr::coefficients() const {
  if (kind_ != Kind::Linear) {
    throw UnsupportedFormError("coefficients() requires a linear form");
  }
  return coeffs_;
}

Rational DelayExpr::constant_term() const {
  if (kind_ != Kind::Linear) {
    throw UnsupportedFormError("constant_term() requires a linear form");
  }
  return constant_;
}

const std::vector<DelayExpr>& DelayExpr::children() const {
  if (kind_ == Kind::Linear) {
    throw UnsupportedFormError("linear forms have no children");
  }
  return children_;
}

DelayExpr DelayExpr::sum_of(std::vector<DelayExpr> children) {
  std::vector<DelayExpr> flat;
  for (auto& c : children) {
    if (c.kind_ == Kind::Sum) {
      for (auto& g : c.children_) flat.push_back(std::move(g));
    } else {
      flat.push_back(std::move(c));
    }
  }
  DelayExpr merged; // accumulates every linear child
  std::vector<DelayExpr> rest;
  bool saw_linear = false;
  for (auto& c : flat) {
    if (c.kind_ == Kind::Linear) {
      saw_linear = true;
      for (std::size_t i = 0; i < kSymbolCount; ++i) {
        merged.coeffs_[i] = merged.coeffs_[i] + c.coeffs_[i];
      }
      merged.constant_ = merged.constant_ + c.constant_;
    } else {
      rest.push_back(std::move(c));
    }
  }
  if (rest.empty()) return merged;
  if (saw_linear && !merged.is_zero()) rest.push_back(merged);
  if (rest.size() == 1) return rest[0];
  DelayExpr e;
  e.kind_ = Kind::Sum;
  e.children_ = std::move(rest);
  return e;
}

DelayExpr DelayExpr::max_of(std::vector<DelayExpr> children) {
  return extremum(Kind::Max, std::move(children));
}

DelayExpr DelayExpr::min_of(std::vector<DelayExpr> children) {
  return extremum(Kind::Min, std::move(children));
}

// Shared by max_of/min_of: flatten same-kind children, drop duplicates
// (first occurrence wins), collapse a single survivor.
DelayExpr DelayExpr::extremum(Kind kind, std::vector<DelayExpr> children) {
  if (children.empty()) {
    throw ValidationError("max/min requires at least one operand");
  }
  std::vector<DelayExpr> flat;
  for (auto& c : children) {
    if (c.kind_ == kind) {
      for (auto& g : c.children_) flat.push_back(std::move(g));
    } else {
      flat.push_back(std::move(c));
    }
  }
  std::vector<DelayExpr> kept;
  std::vector<std::string> seen;
  for (auto& c : flat) {
    std::string s = canonical_form(c);
    if (std::find(seen.begin(), seen.end(), s) == seen.end()) {
      seen.push_back(std::move(s));
      kept.push_back(std::move(c));
    }
  }
  if (kept.size() == 1) return kept[0];
  DelayExpr e;
  e.kind_ = kind;
  e.children_ = std::move(kept);
  return e;
}

DelayExpr DelayExpr::difference(DelayExpr minuend, DelayExpr subtrahend) {
  if (subtrahend.is_zero()) return minuend;
  if (minuend.kind_ == Kind::Linear && subtrahend.kind_ == Kind::Linear) {
    DelayExpr e;
    for (std::size_t i = 0; i < kSymbolCount; ++i) {
      e.coeffs_[i] = minuend.coeffs_[i] - subtrahend.coeffs_[i];
    }
    e.constant_ = minuend.constant_ - subtrahend.constant_;
    return e;
  }
  if (subtrahend.kind_ == Kind::Linear) {
    // A linear subtrahend folds into the additive tail; Diff nodes only
    // ever carry a max/min/sum/diff subtrahend.
    std::vector<DelayExpr> parts;
    parts.push_back(std::move(minuend));
    parts.push_back(difference(DelayExpr::zero(), std::move(subtrahend)));
    return sum_of(std::move(parts));
  }
  DelayExpr e;
  e.kind_ = Kind::Diff;
  e.children_.push_back(std::move(minuend));
  e.children_.push_back(std::move(subtrahend));
  return e;
}

double DelayExpr::evaluate(const ScenarioParams& p) const {
  p.validate();
  switch (kind_) {
  case Kind::Linear: {
    double acc = constant_.to_double();
    for (std::size_t i = 0; i < kSymbolCount; ++i) {
      if (!coeffs_[i].is_zero()) {
        acc += coeffs_[i].to_double() * p.value(kAllSymbols[i]);
      }
    }
    return acc;
  }
  case Kind::Max: {
    double best = children_[0].evaluate(p);
    for (std::size_t i = 1; i < children_.size(); ++i) {
      best = std::max(best, children_[i].evaluate(p));
    }
    return best;
  }
  case Kind::Min: {
    double best = children_[0].evaluate(p);
    for (std::size_t i = 1; i < children_.size(); ++i) {
      best = std::min(best, children_[i].evaluate(p));
    }
    return best;
  }
  case Kind::Sum: {
    double acc = 0;
    for (const auto& c : children_) acc += c.evaluate(p);
    return acc;
  }
  case Kind::Diff:
    return children_[0].evaluate(p) - children_[1].evaluate(p);
  }
  return 0;
}

bool operator==(const DelayExpr& a, const DelayExpr& b) {
  if (a.kind_ != b.kind_) return false;
  if (a.kind_ == DelayExpr::Kind::Linear) {
    return a.coeffs_ == b.coeffs_ && a.constant_ == b.constant_;
  }
  if (a.children_.size() != b.children_.size()) return false;
  for (std::size_t i = 0; i < a.children_.size(); ++i) {
    if (!(a.children_[i] == b.children_[i])) return false;
  }
  return true;
}

DelayExpr operator+(const DelayExpr& a, const DelayExpr& b) {
  return DelayExpr::sum_of({a, b});
}

DelayExpr subtract_linear(const DelayExpr& later, const DelayExpr& earlier) {
  if (!earlier.is_linear()) {
    throw UnsupportedFormError(
        "subtract_linear: earlier timestamp must be a linear form, got \"" +
        canonical_form(earlier) + "\"");
  }
  DelayExpr negated = DelayExpr::difference(DelayExpr::zero(), earlier);
  return distribute_offsets(later + negated);
}

DelayExpr distribute_offsets(const DelayExpr& e) {
  switch (e.kind()) {
  case DelayExpr::Kind::Linear:
    return e;
  case DelayExpr::Kind::Max:
  case DelayExpr::Kind::Min: {
    std::vector<DelayExpr> mapped;
    mapped.reserve(e.children().size());
    for (const auto& c : e.children()) mapped.push_back(distribute_offsets(c));
    return e.kind() == DelayExpr::Kind::Max ? DelayExpr::max_of(mapped)
                                            : DelayExpr::min_of(mapped);
  }
  case DelayExpr::Kind::Sum: {
    DelayExpr linear_part = DelayExpr::zero();
    const DelayExpr* extremum = nullptr;
    std::vector<DelayExpr> mapped;
    for (const auto& c : e.children()) mapped.push_back(distribute_offsets(c));
    for (const auto& c : mapped) {
      if (c.is_linear()) {
        linear_part = linear_part + c;
      } else if (extremum == nullptr) {
        extremum = &c;
      } else {
        throw UnsupportedFormError(
            "cannot distribute a sum of two max/min expressions");
      }
    }
    if (extremum == nullptr) return linear_part;
    std::vector<DelayExpr> shifted;
    for (const auto& branch : extremum->children()) {
      shifted.push_back(branch + linear_part);
    }
    return extremum->kind() == DelayExpr::Kind::Max
               ? DelayExpr::max_of(shifted)
               : DelayExpr::min_of(shifted);
  }
  case DelayExpr::Kind::Diff: {
    DelayExpr lhs = distribute_offsets(e.children()[0]);
    DelayExpr rhs = distribute_offsets(e.children()[1]);
    if (!rhs.is_linear()) {
      throw UnsupportedFormError(
          "cannot distribute subtraction of a max/min expression");
    }
    DelayExpr negated = DelayExpr::difference(DelayExpr::zero(), rhs);
    return distribute_offsets(lhs + negated);
  }
  }
  return e;
}

namespace {

std::string linear_text(const DelayExpr& e) {
  const auto& coeffs = e.coefficients();
  std::string out;
  auto append = [&out](const Rational& c, std::string_view name) {
    Rational mag = c.is_negative() ? -c : c;
    if (out.empty()) {
      if (c.is_negative()) out += '-';
    } else {
      out += c.is_negative() ? '-' : '+';
    }
    if (!mag.is_one() || name.empty()) {
      if (mag.is_integer()) {
        out += mag.str();
      } else {
        out += '(';
        out += mag.str();
        out += ')';
      }
    }
    out += name;
  };
  for (std::size_t i = 0; i < kSymbolCount; ++i) {
    if (!coeffs[i].is_zero()) append(coeffs[i], symbol_name(kAllSymbols[i]));
  }
  if (!e.constant_term().is_zero()) append(e.constant_term(), "");
  if (out.empty()) out = "0";
  return out;
}

std::string joined_children(const DelayExpr& e, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < e.children().size(); ++i) {
    if (i > 0) out += sep;
    out += canonical_form(e.children()[i]);
  }
  return out;
}

} // namespace

std::string canonical_form(const DelayExpr& e) {
  switch (e.kind()) {
  case DelayExpr::Kind::Linear:
    return linear_text(e);
  case DelayExpr::Kind::Max:
    return "max(" + joined_children(e, ", ") + ")";
  case DelayExpr::Kind::Min:
    return "min(" + joined_children(e, ", ") + ")";
  case DelayExpr::Kind::Sum: {
    std::string out;
    for (std::size_t i = 0; i < e.children().size(); ++i) {
      std::string part = canonical_form(e.children()[i]);
      if (i > 0) {
        out += '+';
        if (part.starts_with('-')) part = "(" + part + ")";
      }
      out += part;
    }
    return out;
  }
  case DelayExpr::Kind::Diff:
    return canonical_form(e.children()[0]) + "-(" +
           canonical_form(e.children()[1]) + ")";
  }
  return "0";
}

namespace {

class ExprParser {
public:
  explicit ExprParser(std::string_view text) : text_(text) {}

  DelayExpr parse() {
    DelayExpr e = parse_expression();
    skip_space();
    if (pos_ != text_.size()) {
      fail("unexpected trailing input");
    }
    return e;
  }

private:
  DelayExpr parse_expression() {
    DelayExpr acc = parse_term();
    for (;;) {
      skip_space();
      if (match('+')) {
        acc = acc + parse_term();
      } else if (match('-')) {
        acc = DelayExpr::difference(acc, parse_term());
      } else {
        return acc;
      }
    }
  }

  DelayExpr parse_term() {
    skip_space();
    if (match('-')) {
      return DelayExpr::difference(DelayExpr::zero(), parse_factor());
    }
    return parse_factor();
  }

  DelayExpr parse_factor() {
    skip_space();
    if (pos_ >= text_.size()) fail("expected an expression");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      DelayExpr inner = parse_expression();
      expect(')');
      // "(3/2)T" is a parenthesized coefficient, not a grouped expression.
      if (auto sym = peek_symbol(); sym && is_pure_constant(inner)) {
        ++pos_;
        return DelayExpr::term(inner.constant_term(), *sym);
      }
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      Rational r = parse_rational();
      if (auto sym = peek_symbol()) {
        ++pos_;
        return DelayExpr::term(r, *sym);
      }
      return DelayExpr::constant(r);
    }
    if (text_.compare(pos_, 4, "max(") == 0) return parse_call(true);
    if (text_.compare(pos_, 4, "min(") == 0) return parse_call(false);
    if (auto sym = peek_symbol()) {
      ++pos_;
      return DelayExpr::term(Rational(1), *sym);
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  DelayExpr parse_call(bool is_max) {
    pos_ += 4; // consumes "max(" or "min("
    std::vector<DelayExpr> args;
    args.push_back(parse_expression());
    skip_space();
    while (match(',')) {
      args.push_back(parse_expression());
      skip_space();
    }
    expect(')');
    return is_max ? DelayExpr::max_of(std::move(args))
                  : DelayExpr::min_of(std::move(args));
  }

  Rational parse_rational() {
    std::int64_t num = parse_integer();
    skip_space();
    if (match('/')) {
      std::int64_t den = parse_integer();
      if (den == 0) fail("zero denominator");
      return Rational(num, den);
    }
    return Rational(num);
  }

  std::int64_t parse_integer() {
    skip_space();
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
    if (start == pos_) fail("expected a number");
    std::int64_t v = 0;
    for (std::size_t i = start; i < pos_; ++i) {
      v = v * 10 + (text_[i] - '0');
      if (v < 0) fail("number too large");
    }
    return v;
  }

  std::optional<DelaySymbol> peek_symbol() {
    if (pos_ >= text_.size()) return std::nullopt;
    // "max"/"min" start with symbol-free letters, but guard against a
    // future symbol set colliding with keyword prefixes.
    for (DelaySymbol s : kAllSymbols) {
      if (text_.compare(pos_, 1, symbol_name(s)) == 0) {
        if (text_.compare(pos_, 4, "max(") == 0) return std::nullopt;
        if (text_.compare(pos_, 4, "min(") == 0) return std::nullopt;
        return s;
      }
    }
    return std::nullopt;
  }

  static bool is_pure_constant(const DelayExpr& e) {
    if (!e.is_linear()) return false;
    return std::all_of(e.coefficients().begin(), e.coefficients().end(),
                       [](const Rational& c) { return c.is_zero(); });
  }

  void skip_space() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '\n') {
        ++line_;
        col_base_ = pos_ + 1;
        ++pos_;
      } else if (c == ' ' || c == '\t' || c == '\r') {
        ++pos_;
      } else {
        break;
      }
    }
  }

  bool match(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!match(c)) fail(std::string("expected '") + c + "'");
  }

  [[noreturn]] void fail(const std::string& message) {
    throw ParseError("delay expression: " + message, line_,
                     pos_ - col_base_ + 1);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_base_ = 0;
};

} // namespace

DelayExpr parse_delay_expr(std::string_view text) {
  return ExprParser(text).parse();
}

} // namespace hoprank
