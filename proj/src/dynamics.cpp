#include "sumset/dynamics.hpp"

#include "sumset/error.hpp"

#include <algorithm>

namespace sumset {

Word::Word(std::vector<Color> symbols, int palette)
    : symbols_(std::move(symbols)), palette_(palette) {
  if (symbols_.empty()) throw Error(ErrorKind::EmptyPattern, "a word needs at least one symbol");
  if (palette_ < 2 || palette_ > 255) throw Error(ErrorKind::BadParams, "palette must be in [2, 255]");
  for (Color s : symbols_) {
    if (s < 1 || s > palette_) throw Error(ErrorKind::BadParams, "symbol outside palette");
  }
}

Word Word::from_coloring(const Coloring& c, std::uint64_t N) {
  if (N < 1) throw Error(ErrorKind::DomainError, "word length must be >= 1");
  if (N > window_cap()) throw Error(ErrorKind::DomainError, "word length exceeds the window cap");
  return Word(color_table(c, N), c.palette_size());
}

void write_word(std::ostream& out, const Word& w) {
  write_runlength(out, w.symbols(), w.palette_size());
}

Word read_word(std::istream& in) {
  ExplicitStream s = read_runlength(in);
  return Word(std::move(s.colors), s.palette);
}

ReturnSet return_set(const Word& x, std::int64_t a, std::int64_t b, std::int64_t h,
                     std::uint64_t M) {
  if (!(0 <= a && a < b)) throw Error(ErrorKind::BadParams, "return_set needs 0 <= a < b");
  if (h + a < 1) throw Error(ErrorKind::BadParams, "return_set needs h + a >= 1");
  const Int128 last = static_cast<Int128>(h) + static_cast<Int128>(b) * static_cast<Int128>(M);
  if (last > static_cast<Int128>(x.size())) {
    throw Error(ErrorKind::WindowOverrun, "h + bM exceeds the word length");
  }
  ReturnSet out{a, b, h, M, {}};
  for (std::uint64_t n = 1; n <= M; ++n) {
    const auto i = static_cast<std::uint64_t>(h + a * static_cast<std::int64_t>(n));
    const auto j = static_cast<std::uint64_t>(h + b * static_cast<std::int64_t>(n));
    if (x(i) == x(j)) out.elements.push_back(n);
  }
  return out;
}

std::uint64_t max_gap(std::span<const std::uint64_t> S, std::uint64_t M) {
  std::vector<std::uint64_t> v;
  for (std::uint64_t s : S) {
    if (s >= 1 && s <= M) v.push_back(s);
  }
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  std::uint64_t prev = 0;
  std::uint64_t gap = 0;
  for (std::uint64_t s : v) {
    gap = std::max(gap, s - prev);
    prev = s;
  }
  return std::max(gap, M + 1 - prev);
}

std::optional<std::uint64_t> dichotomy_detect(const Word& y, const Word& z, std::int64_t a,
                                              std::int64_t b, std::uint64_t D, std::uint64_t K) {
  if (!(0 <= a && a < b)) throw Error(ErrorKind::BadParams, "dichotomy_detect needs 0 <= a < b");
  const auto step_y = static_cast<std::uint64_t>(a * (b - a));
  const auto step_z = static_cast<std::uint64_t>(b * (b - a));
  if (D + step_y * K > y.size() || D + step_z * K > z.size()) {
    throw Error(ErrorKind::WindowOverrun, "words must cover D + b(b-a)K");
  }
  for (std::uint64_t d = 1; d <= D; ++d) {
    if (y(d) == z(d)) continue;
    bool ok = true;
    for (std::uint64_t k = 1; k <= K && ok; ++k) {
      ok = y(d + step_y * k) == y(d) && z(d + step_z * k) == z(d);
    }
    if (ok) return d;
  }
  return std::nullopt;
}

std::vector<std::pair<std::uint64_t, double>> density_profile(std::span<const std::uint64_t> S,
                                                              std::uint64_t M,
                                                              std::span<const std::uint64_t> windows) {
  std::vector<std::uint64_t> prefix(static_cast<std::size_t>(M + 1), 0);
  for (std::uint64_t s : S) {
    if (s >= 1 && s <= M) prefix[static_cast<std::size_t>(s)] = 1;
  }
  for (std::size_t i = 1; i < prefix.size(); ++i) prefix[i] += prefix[i - 1];
  std::vector<std::pair<std::uint64_t, double>> out;
  for (std::uint64_t W : windows) {
    if (W < 1 || W > M) throw Error(ErrorKind::BadParams, "window sizes must lie in [1, M]");
    std::uint64_t best = 0;
    for (std::uint64_t t = 0; t + W <= M; ++t) {
      best = std::max(best, prefix[static_cast<std::size_t>(t + W)] - prefix[static_cast<std::size_t>(t)]);
    }
    out.emplace_back(W, static_cast<double>(best) / static_cast<double>(W));
  }
  return out;
}

}  // namespace sumset
