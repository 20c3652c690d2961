#pragma once

#include "sumset/bitset.hpp"
#include "sumset/coloring.hpp"
#include "sumset/poly.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace sumset {

/// A claimed monochromatic witness: h + P(k) has color `color` for every
/// h in B, k in C and P in polys.
struct Configuration {
  std::vector<std::uint64_t> B;
  std::vector<std::uint64_t> C;
  std::vector<IntPolynomial> polys;
  Color color = 1;
  std::uint64_t N = 0;          // window the search ran on (0 when hand-built)
  std::string strategy;         // "greedy", "exhaustive" or empty
  std::uint64_t survivors = 0;  // size of the full survivor set behind B
};

/// Common color of all |B||C||polys| points, or nullopt.
std::optional<Color> verify_config(const Coloring& c, const Configuration& cfg);

/// Bits b in [1, N] with b + P(c) <= N and b + P(c) of color `color` for
/// all c in C, P in polys. Throws DomainError if some P(c) >= N.
Bitset survivor_set(const ColorWindow& w, std::span<const IntPolynomial> polys,
                    std::span<const std::uint64_t> C, Color color);

/// Shift amounts P(c) for every P in polys; nullopt when some P(c) >= limit.
std::optional<std::vector<std::uint64_t>> shifts_for(std::span<const IntPolynomial> polys,
                                                     std::uint64_t c, std::uint64_t limit);

struct GreedyOptions {
  std::uint64_t stride = 1;          // candidate c = 1, 1 + stride, ...
  std::size_t max_candidates = 0;    // 0 keeps all; otherwise evenly thinned
  unsigned threads = 1;
};

/// Candidate values of c: every c with max_P P(c) < N on the stride grid,
/// thinned to max_candidates evenly spaced entries when requested.
std::vector<std::uint64_t> greedy_candidates(const ColorWindow& w,
                                             std::span<const IntPolynomial> polys,
                                             const GreedyOptions& opts);

/// Throws NoConfiguration when no color admits |C| = 1 with r survivors.
Configuration greedy_search(const ColorWindow& w, std::span<const IntPolynomial> polys,
                            std::uint64_t r, std::uint64_t maxC, const GreedyOptions& opts = {});

/// Best configuration with |C| = sizeC and at least r survivors, maximizing
/// survivor count; ties go to the lexicographically smallest C, then the
/// smaller color.
std::optional<Configuration> exhaustive_search(const ColorWindow& w,
                                               std::span<const IntPolynomial> polys,
                                               std::uint64_t r, std::uint64_t sizeC);

// ---------------------------------------------------------------------------
// Bad-set audits.

struct AuditReport {
  std::uint64_t n = 0;
  Color color = 1;
  std::uint64_t count = 0;
  std::optional<std::uint64_t> max_element;
  std::uint64_t M = 0;
  bool stabilized = true;  // no element in (M/2, M]
};

struct BadSet {
  std::vector<std::uint64_t> elements;
  AuditReport report;
};

/// Report for the elements of a bad set that lie in [1, M].
AuditReport audit_report(std::uint64_t n, Color color, std::span<const std::uint64_t> elements,
                         std::uint64_t M);

/// {m <= M : c(n + P(m)) = color for all P}. Requires M >= 2. Values of m
/// with n + P(m) < 1 fall outside the coloring's domain and are never bad.
BadSet bad_set(const Coloring& c, std::uint64_t n, std::span<const IntPolynomial> polys,
               Color color, std::uint64_t M);

/// One bad set per color, sharing a single evaluation pass.
std::vector<BadSet> bad_sets_all_colors(const Coloring& c, std::uint64_t n,
                                        std::span<const IntPolynomial> polys, std::uint64_t M);

struct GrowthRow {
  std::uint64_t M = 0;
  std::uint64_t count = 0;
  std::optional<std::uint64_t> max_element;
};

/// Bad-set size and maximum at each horizon (computed from one pass at the
/// largest horizon).
std::vector<GrowthRow> bad_set_growth(const Coloring& c, std::uint64_t n,
                                      std::span<const IntPolynomial> polys, Color color,
                                      std::span<const std::uint64_t> horizons);

/// CSV with header `M,count,max_element`; an empty max is an empty field.
void write_growth_csv(std::ostream& out, std::span<const GrowthRow> rows);

// ---------------------------------------------------------------------------
// Arithmetic progressions.

struct ApResult {
  std::int64_t start = 0;
  std::int64_t difference = 0;
  std::int64_t length = 0;

  friend bool operator==(const ApResult&, const ApResult&) = default;
};

/// Longest AP inside S (duplicates ignored). Ties: smallest difference, then
/// smallest start. A singleton gives difference 0. EmptySet on empty input.
ApResult longest_ap(std::span<const std::int64_t> S);

using Real256 = boost::multiprecision::number<
    boost::multiprecision::cpp_bin_float<256, boost::multiprecision::digit_base_2>,
    boost::multiprecision::et_off>;

/// ln of N (ln ln N)^(-2^(-2^(k+9))), kept as ln N minus a dyadic deficit so
/// the tiny exponent never collapses to zero.
struct GowersThreshold {
  int k = 1;
  Real256 log_n;    // ln N
  Real256 deficit;  // 2^(-2^(k+9)) * ln ln ln N, strictly positive

  /// Decimal rendering of ln N - deficit (the deficit is far below the
  /// printed precision).
  std::string str(int digits = 30) const;
  /// Base-2 exponent of the deficit, i.e. floor(log2(deficit)).
  std::int64_t deficit_exponent() const;

  friend bool operator<(const GowersThreshold& x, const GowersThreshold& y);
};

/// DomainError when N <= e^e (that is, N <= 15) or k outside [1, 20].
GowersThreshold gowers_threshold(int k, std::uint64_t N);

}  // namespace sumset
