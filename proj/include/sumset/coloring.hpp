#pragma once

#include "sumset/bitset.hpp"
#include "sumset/numeric.hpp"
#include "sumset/poly.hpp"

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace sumset {

/// Palette index, 1-based.
using Color = std::uint8_t;

/// Construction tag plus exact parameters. Canonical text form is
/// `kind=<kind>;key=value;...` with rationals written as `p/q`.
struct Descriptor {
  std::string kind;
  std::vector<std::pair<std::string, std::string>> params;

  std::optional<std::string> get(std::string_view key) const;
  std::string canonical() const;
  static Descriptor parse(std::string_view text);

  friend bool operator==(const Descriptor&, const Descriptor&) = default;
};

class ColoringOracle {
 public:
  virtual ~ColoringOracle() = default;
  virtual Color color(std::uint64_t z) const = 0;
  /// out[i] = color(first + i).
  virtual void paint(std::uint64_t first, std::span<Color> out) const;
};

/// Total, deterministic map from positive integers to {1..palette}.
/// Cheap to copy; the oracle is shared and immutable after construction.
class Coloring {
 public:
  Coloring(std::shared_ptr<const ColoringOracle> oracle, int palette, Descriptor descriptor);

  Color operator()(std::uint64_t z) const;
  int palette_size() const { return palette_; }
  const Descriptor& descriptor() const { return descriptor_; }
  void paint(std::uint64_t first, std::span<Color> out) const;

  template <class T>
  std::shared_ptr<const T> oracle_as() const {
    return std::dynamic_pointer_cast<const T>(oracle_);
  }

 private:
  std::shared_ptr<const ColoringOracle> oracle_;
  int palette_;
  Descriptor descriptor_;
};

/// Per-color bit-vectors over [1, N]; they partition [1, N].
class ColorWindow {
 public:
  ColorWindow(std::uint64_t n, int palette);

  std::uint64_t size() const { return n_; }
  int palette_size() const { return static_cast<int>(layers_.size()); }
  const Bitset& layer(Color color) const { return layers_.at(color - 1U); }
  Bitset& layer(Color color) { return layers_.at(color - 1U); }
  Color at(std::uint64_t n) const;

 private:
  std::uint64_t n_;
  std::vector<Bitset> layers_;
};

/// Window cap: `SUMSET_RAMSEY_NMAX` when set, otherwise 10^7.
std::uint64_t window_cap();

ColorWindow window(const Coloring& c, std::uint64_t n);

/// Colors of 1..n as a flat array (index 0 holds color(1)).
std::vector<Color> color_table(const Coloring& c, std::uint64_t n);

// ---------------------------------------------------------------------------
// Interval colorings over powers of a rational base.

/// For m >= 1 the block [l^m, l^{m+1}) is cut at cut_i * l^m; the piece
/// starting at cut_i gets colors[i]. Everything below l gets `fallback`.
struct IntervalScheme {
  Rational base;
  std::vector<Rational> cuts;  // cuts[0] == 1, strictly increasing, all < base
  std::vector<Color> colors;
  Color fallback = 1;
};

/// Integer boundary table equivalent to an IntervalScheme over the uint64
/// domain: color(z) is decided by exact integer comparison.
class IntervalOracle : public ColoringOracle {
 public:
  explicit IntervalOracle(IntervalScheme scheme);

  Color color(std::uint64_t z) const override;
  void paint(std::uint64_t first, std::span<Color> out) const override;
  const IntervalScheme& scheme() const { return scheme_; }
  /// Smallest integers of each piece, ascending.
  const std::vector<std::uint64_t>& starts() const { return starts_; }

 private:
  IntervalScheme scheme_;
  std::vector<std::uint64_t> starts_;
  std::vector<Color> piece_colors_;
};

Coloring power_2coloring(std::int64_t a, std::int64_t b);

struct GeometricParams {
  Rational l;
  Rational x;
  Rational y;
};

/// Defaults to rational midpoints of the admissible ranges.
GeometricParams default_geometric_params(std::int64_t a, std::int64_t b);
Coloring geometric_3coloring(std::int64_t a, std::int64_t b,
                             std::optional<GeometricParams> params = std::nullopt);

struct TripleParams {
  Rational x;
  Rational l;
};

TripleParams default_triple_params(std::int64_t a, std::int64_t b, std::int64_t c);
Coloring triple_2coloring(std::int64_t a, std::int64_t b, std::int64_t c,
                          std::optional<TripleParams> params = std::nullopt);

// ---------------------------------------------------------------------------
// Case II (equal degree, equal lead) band colorings.

class BandOracle : public ColoringOracle {
 public:
  BandOracle(IntPolynomial p, IntPolynomial q, BandOffset offset);

  Color color(std::uint64_t z) const override;
  const BandOffset& offset() const { return offset_; }
  const IntPolynomial& p() const { return p_; }
  const IntPolynomial& q() const { return q_; }

 private:
  // Largest n >= n0 with poly(n + shift) <= z, or nullopt if none.
  std::optional<std::int64_t> last_at_most(const IntPolynomial& poly, std::int64_t shift,
                                           std::uint64_t z) const;
  Int128 value(const IntPolynomial& poly, std::int64_t n) const;

  IntPolynomial p_;
  IntPolynomial q_;
  BandOffset offset_;
};

Coloring case2_coloring(const IntPolynomial& P, const IntPolynomial& Q);

// ---------------------------------------------------------------------------
// User-defined colorings.

struct ExplicitStream {
  std::vector<Color> colors;  // colors[i] is the color of i + 1
  int palette = 2;
};

struct PeriodicPattern {
  std::vector<Color> pattern;
  int palette = 2;
};

struct SeededRandom {
  std::uint64_t seed = 0;
  int palette = 2;
};

using CustomSpec = std::variant<ExplicitStream, PeriodicPattern, SeededRandom>;

/// Explicit streams are total: positions past the stream get color 1.
Coloring custom_coloring(const CustomSpec& spec);

/// Digits string such as "1121" to colors; palette defaults to max(2, max digit).
std::vector<Color> parse_color_digits(std::string_view digits);

// ---------------------------------------------------------------------------
// Run-length file format: `palette k`, `start 1`, then `color length` lines.

void write_runlength(std::ostream& out, const Coloring& c, std::uint64_t n);
void write_runlength(std::ostream& out, std::span<const Color> colors, int palette);
ExplicitStream read_runlength(std::istream& in);
Coloring load_runlength_file(const std::string& path);

/// Rebuilds a coloring from its canonical descriptor.
Coloring from_descriptor(const Descriptor& d);

}  // namespace sumset
