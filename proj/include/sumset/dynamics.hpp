#pragma once

#include "sumset/coloring.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace sumset {

/// Finite window x(1..N) of a symbolic sequence over {1..palette}.
class Word {
 public:
  Word(std::vector<Color> symbols, int palette);

  /// Window of a coloring on [1, N].
  static Word from_coloring(const Coloring& c, std::uint64_t N);

  std::uint64_t size() const { return symbols_.size(); }
  int palette_size() const { return palette_; }
  /// 1-based access.
  Color operator()(std::uint64_t i) const { return symbols_[static_cast<std::size_t>(i - 1)]; }
  const std::vector<Color>& symbols() const { return symbols_; }

 private:
  std::vector<Color> symbols_;
  int palette_;
};

/// Run-length text format shared with colorings.
void write_word(std::ostream& out, const Word& w);
Word read_word(std::istream& in);

struct ReturnSet {
  std::int64_t a = 0;
  std::int64_t b = 0;
  std::int64_t h = 0;
  std::uint64_t M = 0;
  std::vector<std::uint64_t> elements;
};

/// {n <= M : x(h + an) = x(h + bn)}. Needs 0 <= a < b, h + a >= 1 and
/// h + bM <= N (WindowOverrun otherwise).
ReturnSet return_set(const Word& x, std::int64_t a, std::int64_t b, std::int64_t h,
                     std::uint64_t M);

/// Largest difference between consecutive members of S ∩ [1, M] with the
/// sentinels 0 and M + 1 added.
std::uint64_t max_gap(std::span<const std::uint64_t> S, std::uint64_t M);

/// Smallest d in [1, D] with y(d) != z(d), y(d) = y(d + a(b-a)k) and
/// z(d) = z(d + b(b-a)k) for k = 1..K.
std::optional<std::uint64_t> dichotomy_detect(const Word& y, const Word& z, std::int64_t a,
                                              std::int64_t b, std::uint64_t D, std::uint64_t K);

/// For each W: max over t in [0, M - W] of |S ∩ (t, t + W]| / W.
std::vector<std::pair<std::uint64_t, double>> density_profile(std::span<const std::uint64_t> S,
                                                              std::uint64_t M,
                                                              std::span<const std::uint64_t> windows);

}  // namespace sumset
