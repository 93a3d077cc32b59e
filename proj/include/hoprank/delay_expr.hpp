#pragma once

#include <array>
#include <initializer_list>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hoprank/rational.hpp"

namespace hoprank {

/// The six elementary delay contributions a handover timeline is built
/// from. Enumerator order fixes the canonical printing order; the printed
/// one-letter names are given by symbol_name().
enum class DelaySymbol {
  NodeProcessing,    // T: per-node processing time
  WiredLocal,        // f: one wired hop inside the local domain
  WiredGlobal,       // F: one wired hop crossing the domain boundary
  RadioLink,         // d: one radio-link traversal
  L2Handover,        // h: link-layer handover interruption
  AddressResolution, // D: duplicate address detection wait
};

inline constexpr std::size_t kSymbolCount = 6;

inline constexpr std::array<DelaySymbol, kSymbolCount> kAllSymbols = {
    DelaySymbol::NodeProcessing, DelaySymbol::WiredLocal,
    DelaySymbol::WiredGlobal,    DelaySymbol::RadioLink,
    DelaySymbol::L2Handover,     DelaySymbol::AddressResolution,
};

std::string_view symbol_name(DelaySymbol s);

/// Numeric values, in seconds, for the six delay symbols, plus the
/// downstream packet rate used to turn a loss window into a packet count.
struct ScenarioParams {
  double processing_s = 0;      // T
  double wired_local_s = 0;     // f
  double wired_global_s = 0;    // F
  double radio_s = 0;           // d
  double l2_handover_s = 0;     // h
  double address_resolution_s = 0; // D
  double throughput_pkt_per_s = 0;

  double value(DelaySymbol s) const;

  /// Throws ValidationError if any field is negative or non-finite.
  void validate() const;
};

/// A symbolic delay or timestamp: either a linear combination of the six
/// symbols with exact rational coefficients plus a rational constant, or
/// max/min/sum/difference nodes over sub-expressions. Instances are
/// immutable and always canonical: sums of linear parts are merged,
/// max/min nodes keep at least two distinct children, and subtracting a
/// linear form folds it into the additive tail, so Diff nodes only ever
/// carry a non-linear subtrahend.
class DelayExpr {
public:
  enum class Kind { Linear, Max, Min, Sum, Diff };

  using Term = std::pair<Rational, DelaySymbol>;

  DelayExpr();

  static DelayExpr zero();
  static DelayExpr constant(Rational seconds);
  static DelayExpr term(Rational coefficient, DelaySymbol s);
  static DelayExpr linear(std::initializer_list<Term> terms,
                          Rational constant = Rational());
  static DelayExpr max_of(std::vector<DelayExpr> children);
  static DelayExpr min_of(std::vector<DelayExpr> children);
  static DelayExpr sum_of(std::vector<DelayExpr> children);
  static DelayExpr difference(DelayExpr minuend, DelayExpr subtrahend);

  Kind kind() const { return kind_; }
  bool is_linear() const { return kind_ == Kind::Linear; }
  bool is_zero() const;

  /// Linear nodes only: coefficient per symbol, indexed by enumerator order.
  const std::array<Rational, kSymbolCount>& coefficients() const;
  Rational constant_term() const;

  /// Max/Min/Sum nodes: at least two children. Diff nodes: exactly two,
  /// minuend first.
  const std::vector<DelayExpr>& children() const;

  double evaluate(const ScenarioParams& p) const;

  friend bool operator==(const DelayExpr& a, const DelayExpr& b);
  friend bool operator!=(const DelayExpr& a, const DelayExpr& b) {
    return !(a == b);
  }

private:
  static DelayExpr extremum(Kind kind, std::vector<DelayExpr> children);

  Kind kind_;
  std::array<Rational, kSymbolCount> coeffs_{};
  Rational constant_{};
  std::vector<DelayExpr> children_;
};

DelayExpr operator+(const DelayExpr& a, const DelayExpr& b);

/// later - earlier for a linear `earlier`. The subtraction distributes
/// through max/min children of `later`, so the result stays in the same
/// shape family. Throws UnsupportedFormError when `earlier` is not linear.
DelayExpr subtract_linear(const DelayExpr& later, const DelayExpr& earlier);

/// Rewrites sums and differences that combine extrema with linear parts by
/// pushing the linear parts into every branch (max(a,b)+c == max(a+c,b+c)),
/// yielding a linear form or a max/min over such rewrites.
DelayExpr distribute_offsets(const DelayExpr& e);

/// Deterministic text form. Linear parts print symbols in enumerator order
/// with zero coefficients omitted ("35T+22f+2F+6d+h"), unit coefficients
/// bare, and non-integer coefficients parenthesized ("(3/2)T"). Extrema
/// print as "max(A, B)" / "min(A, B)". Equal expressions always print
/// identically and distinct canonical expressions never collide.
std::string canonical_form(const DelayExpr& e);

/// Inverse of canonical_form for the grammar it emits. Accepts any
/// whitespace-insensitive combination of linear terms and nested
/// max(...)/min(...) calls. Throws ParseError on malformed input.
DelayExpr parse_delay_expr(std::string_view text);

} // namespace hoprank
