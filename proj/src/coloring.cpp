#include "sumset/coloring.hpp"

#include "sumset/error.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

namespace sumset {

namespace {

constexpr std::uint64_t kU64Max = std::numeric_limits<std::uint64_t>::max();
constexpr std::uint64_t kDefaultWindowCap = 10'000'000;

std::string itos(std::int64_t v) { return std::to_string(v); }

}  // namespace

// ---------------------------------------------------------------------------
// Descriptor

std::optional<std::string> Descriptor::get(std::string_view key) const {
  for (const auto& [k, v] : params) {
    if (k == key) return v;
  }
  return std::nullopt;
}

std::string Descriptor::canonical() const {
  std::string out = "kind=" + kind;
  for (const auto& [k, v] : params) out += ";" + k + "=" + v;
  return out;
}

Descriptor Descriptor::parse(std::string_view text) {
  Descriptor d;
  std::size_t pos = 0;
  bool first = true;
  while (pos <= text.size()) {
    const auto end = std::min(text.find(';', pos), text.size());
    const auto item = text.substr(pos, end - pos);
    const auto eq = item.find('=');
    if (eq == std::string_view::npos || eq == 0) {
      throw ParseError(pos, "expected key=value");
    }
    std::string key(item.substr(0, eq));
    std::string value(item.substr(eq + 1));
    if (first) {
      if (key != "kind") throw ParseError(pos, "descriptor must start with kind=");
      d.kind = std::move(value);
      first = false;
    } else {
      d.params.emplace_back(std::move(key), std::move(value));
    }
    if (end == text.size()) break;
    pos = end + 1;
  }
  if (first) throw ParseError(0, "empty descriptor");
  return d;
}

// ---------------------------------------------------------------------------
// Coloring / window

void ColoringOracle::paint(std::uint64_t first, std::span<Color> out) const {
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = color(first + i);
}

Coloring::Coloring(std::shared_ptr<const ColoringOracle> oracle, int palette,
                   Descriptor descriptor)
    : oracle_(std::move(oracle)), palette_(palette), descriptor_(std::move(descriptor)) {
  if (palette_ < 2 || palette_ > 255) {
    throw Error(ErrorKind::BadParams, "palette size must be in [2, 255]");
  }
}

Color Coloring::operator()(std::uint64_t z) const {
  if (z == 0) throw Error(ErrorKind::DomainError, "colorings are defined on n >= 1");
  return oracle_->color(z);
}

void Coloring::paint(std::uint64_t first, std::span<Color> out) const {
  if (first == 0) throw Error(ErrorKind::DomainError, "colorings are defined on n >= 1");
  oracle_->paint(first, out);
}

ColorWindow::ColorWindow(std::uint64_t n, int palette) : n_(n) {
  layers_.reserve(static_cast<std::size_t>(palette));
  for (int i = 0; i < palette; ++i) layers_.emplace_back(n);
}

Color ColorWindow::at(std::uint64_t n) const {
  for (std::size_t i = 0; i < layers_.size(); ++i) {
    if (layers_[i].test(n)) return static_cast<Color>(i + 1);
  }
  return 0;
}

std::uint64_t window_cap() {
  if (const char* env = std::getenv("SUMSET_RAMSEY_NMAX")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return v;
  }
  return kDefaultWindowCap;
}

std::vector<Color> color_table(const Coloring& c, std::uint64_t n) {
  std::vector<Color> table(static_cast<std::size_t>(n));
  if (n > 0) c.paint(1, table);
  return table;
}

ColorWindow window(const Coloring& c, std::uint64_t n) {
  if (n < 1) throw Error(ErrorKind::DomainError, "window length must be >= 1");
  if (n > window_cap()) {
    throw Error(ErrorKind::DomainError,
                "window length exceeds cap " + std::to_string(window_cap()) +
                    " (set SUMSET_RAMSEY_NMAX to raise it)");
  }
  ColorWindow w(n, c.palette_size());
  constexpr std::uint64_t kChunk = 1 << 16;
  std::vector<Color> buf;
  for (std::uint64_t first = 1; first <= n; first += kChunk) {
    const std::uint64_t len = std::min(kChunk, n - first + 1);
    buf.resize(static_cast<std::size_t>(len));
    c.paint(first, buf);
    for (std::uint64_t i = 0; i < len; ++i) {
      const Color col = buf[static_cast<std::size_t>(i)];
      if (col < 1 || col > c.palette_size()) {
        throw Error(ErrorKind::DomainError, "oracle returned a color outside the palette");
      }
      w.layer(col).set(first + i);
    }
  }
  return w;
}

// ---------------------------------------------------------------------------
// Interval colorings

IntervalOracle::IntervalOracle(IntervalScheme scheme) : scheme_(std::move(scheme)) {
  starts_.push_back(1);
  piece_colors_.push_back(scheme_.fallback);
  Rational power = scheme_.base;
  const BigInt limit(kU64Max);
  while (true) {
    bool overflow = false;
    for (std::size_t i = 0; i < scheme_.cuts.size(); ++i) {
      const BigInt start = ceil_of(Rational(scheme_.cuts[i] * power));
      if (start > limit) {
        overflow = true;
        break;
      }
      starts_.push_back(static_cast<std::uint64_t>(start));
      piece_colors_.push_back(scheme_.colors[i]);
    }
    if (overflow) break;
    power *= scheme_.base;
  }
}

Color IntervalOracle::color(std::uint64_t z) const {
  const auto it = std::upper_bound(starts_.begin(), starts_.end(), z);
  return piece_colors_[static_cast<std::size_t>(it - starts_.begin()) - 1];
}

void IntervalOracle::paint(std::uint64_t first, std::span<Color> out) const {
  if (out.empty()) return;
  auto idx = static_cast<std::size_t>(
      std::upper_bound(starts_.begin(), starts_.end(), first) - starts_.begin() - 1);
  std::size_t pos = 0;
  while (pos < out.size()) {
    const std::uint64_t z = first + pos;
    while (idx + 1 < starts_.size() && starts_[idx + 1] <= z) ++idx;
    const std::uint64_t stop = idx + 1 < starts_.size() ? starts_[idx + 1] : kU64Max;
    const std::size_t len =
        static_cast<std::size_t>(std::min<std::uint64_t>(stop - z, out.size() - pos));
    std::fill_n(out.begin() + static_cast<std::ptrdiff_t>(pos), len, piece_colors_[idx]);
    pos += len;
  }
}

namespace {

Coloring make_interval(IntervalScheme scheme, int palette, Descriptor d) {
  return Coloring(std::make_shared<IntervalOracle>(std::move(scheme)), palette, std::move(d));
}

// A rational strictly between lo and sqrt(x), assuming lo < sqrt(x).
Rational rational_below_sqrt(const Rational& lo, const Rational& x) {
  for (int digits = 6; digits <= 60; digits += 6) {
    const BigInt scale = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(digits));
    const BigInt s_num = isqrt(floor_of(Rational(x * scale * scale)));
    const Rational s(s_num, scale);  // s <= sqrt(x)
    if (s > lo) {
      Rational y = (lo + s) / 2;
      if (y * y < x) return y;
    }
  }
  throw Error(ErrorKind::BadParams, "could not place y below sqrt(x)");
}

}  // namespace

Coloring power_2coloring(std::int64_t a, std::int64_t b) {
  if (!(0 < a && a < b)) throw Error(ErrorKind::BadPair, "power2 requires 0 < a < b");
  const Rational ratio(a, b);
  const Rational q = Rational(b, a);
  IntervalScheme scheme{q * q, {Rational(1), q}, {1, 2}, 1};
  Descriptor d{"power2", {{"a", itos(a)}, {"b", itos(b)}}};
  return make_interval(std::move(scheme), 2, std::move(d));
}

GeometricParams default_geometric_params(std::int64_t a, std::int64_t b) {
  if (!(0 < a && a < b)) throw Error(ErrorKind::BadParams, "geo3 requires 0 < a < b");
  const Rational q(b, a);
  GeometricParams p;
  p.l = (q * q + q * q * q) / 2;
  p.x = (p.l / q + q * q) / 2;
  p.y = rational_below_sqrt(p.x / q, p.x);
  return p;
}

Coloring geometric_3coloring(std::int64_t a, std::int64_t b, std::optional<GeometricParams> params) {
  if (!(0 < a && a < b)) throw Error(ErrorKind::BadParams, "geo3 requires 0 < a < b");
  const GeometricParams p = params ? *params : default_geometric_params(a, b);
  const Rational q(b, a);
  if (!(p.l >= q * q && p.l < q * q * q)) {
    throw Error(ErrorKind::BadParams, "geo3 requires l in [b^2/a^2, b^3/a^3)");
  }
  if (!(p.x > p.l / q && p.x < q * q)) {
    throw Error(ErrorKind::BadParams, "geo3 requires x in (l*a/b, b^2/a^2)");
  }
  if (!(p.y > p.x / q && p.y * p.y < p.x)) {
    throw Error(ErrorKind::BadParams, "geo3 requires y in (x*a/b, sqrt(x))");
  }
  IntervalScheme scheme{p.l, {Rational(1), p.y, p.x}, {1, 2, 3}, 1};
  Descriptor d{"geo3",
               {{"a", itos(a)},
                {"b", itos(b)},
                {"l", format_rational(p.l)},
                {"x", format_rational(p.x)},
                {"y", format_rational(p.y)}}};
  return make_interval(std::move(scheme), 3, std::move(d));
}

TripleParams default_triple_params(std::int64_t a, std::int64_t b, std::int64_t c) {
  if (!(0 < a && a < b && b < c)) throw Error(ErrorKind::BadParams, "triple requires 0 < a < b < c");
  const Rational y = std::max(Rational(c, b), Rational(b, a));
  const Rational top(c, a);
  if (y >= top) throw Error(ErrorKind::BadParams, "triple: no x in (y, c/a)");
  TripleParams p;
  p.x = (y + top) / 2;
  p.l = (p.x * y + p.x * top) / 2;
  return p;
}

Coloring triple_2coloring(std::int64_t a, std::int64_t b, std::int64_t c,
                          std::optional<TripleParams> params) {
  if (!(0 < a && a < b && b < c)) throw Error(ErrorKind::BadParams, "triple requires 0 < a < b < c");
  const Rational y = std::max(Rational(c, b), Rational(b, a));
  const Rational top(c, a);
  if (y >= top) throw Error(ErrorKind::BadParams, "triple: no x in (y, c/a)");
  const TripleParams p = params ? *params : default_triple_params(a, b, c);
  if (!(p.x > y && p.x < top)) throw Error(ErrorKind::BadParams, "triple requires x in (y, c/a)");
  if (!(p.l > p.x * y && p.l < p.x * top)) {
    throw Error(ErrorKind::BadParams, "triple requires l in (x*y, x*c/a)");
  }
  IntervalScheme scheme{p.l, {Rational(1), p.x}, {1, 2}, 1};
  Descriptor d{"triple",
               {{"a", itos(a)},
                {"b", itos(b)},
                {"c", itos(c)},
                {"x", format_rational(p.x)},
                {"l", format_rational(p.l)}}};
  return make_interval(std::move(scheme), 2, std::move(d));
}

// ---------------------------------------------------------------------------
// Custom colorings

namespace {

class StreamOracle : public ColoringOracle {
 public:
  explicit StreamOracle(std::vector<Color> colors) : colors_(std::move(colors)) {}
  Color color(std::uint64_t z) const override {
    return z <= colors_.size() ? colors_[static_cast<std::size_t>(z - 1)] : Color{1};
  }

 private:
  std::vector<Color> colors_;
};

class PeriodicOracle : public ColoringOracle {
 public:
  explicit PeriodicOracle(std::vector<Color> pattern) : pattern_(std::move(pattern)) {}
  Color color(std::uint64_t z) const override {
    return pattern_[static_cast<std::size_t>((z - 1) % pattern_.size())];
  }

 private:
  std::vector<Color> pattern_;
};

class RandomOracle : public ColoringOracle {
 public:
  RandomOracle(std::uint64_t seed, int palette) : seed_(seed), palette_(palette) {}
  Color color(std::uint64_t z) const override {
    // SplitMix64 finalizer over (seed, z).
    std::uint64_t x = seed_ * 0x9E3779B97F4A7C15ULL + z;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    x ^= x >> 31;
    return static_cast<Color>(x % static_cast<std::uint64_t>(palette_) + 1);
  }

 private:
  std::uint64_t seed_;
  int palette_;
};

void check_palette(std::span<const Color> colors, int palette) {
  if (palette < 2 || palette > 255) throw Error(ErrorKind::BadParams, "palette must be in [2, 255]");
  for (Color c : colors) {
    if (c < 1 || c > palette) throw Error(ErrorKind::BadParams, "color outside palette");
  }
}

std::string runs_string(std::span<const Color> colors) {
  std::string out;
  std::size_t i = 0;
  while (i < colors.size()) {
    std::size_t j = i;
    while (j < colors.size() && colors[j] == colors[i]) ++j;
    if (!out.empty()) out += ",";
    out += std::to_string(colors[i]) + ":" + std::to_string(j - i);
    i = j;
  }
  return out;
}

std::string digits_string(std::span<const Color> colors) {
  std::string out;
  for (Color c : colors) out += std::to_string(c);
  return out;
}

std::vector<Color> parse_runs(std::string_view text) {
  std::vector<Color> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const auto end = std::min(text.find(',', pos), text.size());
    const auto item = text.substr(pos, end - pos);
    const auto colon = item.find(':');
    if (colon == std::string_view::npos) throw ParseError(pos, "expected color:length");
    const int color = std::stoi(std::string(item.substr(0, colon)));
    const auto len = std::stoull(std::string(item.substr(colon + 1)));
    if (color < 1 || color > 255) throw ParseError(pos, "bad color");
    out.insert(out.end(), static_cast<std::size_t>(len), static_cast<Color>(color));
    pos = end + 1;
  }
  return out;
}

}  // namespace

std::vector<Color> parse_color_digits(std::string_view digits) {
  std::vector<Color> out;
  out.reserve(digits.size());
  for (std::size_t i = 0; i < digits.size(); ++i) {
    const char ch = digits[i];
    if (ch < '1' || ch > '9') throw ParseError(i, "colors are digits 1-9");
    out.push_back(static_cast<Color>(ch - '0'));
  }
  return out;
}

Coloring custom_coloring(const CustomSpec& spec) {
  return std::visit(
      [](const auto& s) -> Coloring {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, ExplicitStream>) {
          if (s.colors.empty()) throw Error(ErrorKind::EmptyPattern, "empty color stream");
          check_palette(s.colors, s.palette);
          Descriptor d{"explicit",
                       {{"palette", std::to_string(s.palette)}, {"runs", runs_string(s.colors)}}};
          return Coloring(std::make_shared<StreamOracle>(s.colors), s.palette, std::move(d));
        } else if constexpr (std::is_same_v<T, PeriodicPattern>) {
          if (s.pattern.empty()) throw Error(ErrorKind::EmptyPattern, "empty periodic pattern");
          check_palette(s.pattern, s.palette);
          Descriptor d{"periodic",
                       {{"palette", std::to_string(s.palette)},
                        {"pattern", s.palette <= 9 ? digits_string(s.pattern) : runs_string(s.pattern)}}};
          return Coloring(std::make_shared<PeriodicOracle>(s.pattern), s.palette, std::move(d));
        } else {
          if (s.palette < 2 || s.palette > 255) {
            throw Error(ErrorKind::BadParams, "palette must be in [2, 255]");
          }
          Descriptor d{"random",
                       {{"palette", std::to_string(s.palette)}, {"seed", std::to_string(s.seed)}}};
          return Coloring(std::make_shared<RandomOracle>(s.seed, s.palette), s.palette, std::move(d));
        }
      },
      spec);
}

// ---------------------------------------------------------------------------
// Run-length files

void write_runlength(std::ostream& out, std::span<const Color> colors, int palette) {
  out << "palette " << palette << "\n";
  out << "start 1\n";
  std::size_t i = 0;
  while (i < colors.size()) {
    std::size_t j = i;
    while (j < colors.size() && colors[j] == colors[i]) ++j;
    out << static_cast<int>(colors[i]) << " " << (j - i) << "\n";
    i = j;
  }
}

void write_runlength(std::ostream& out, const Coloring& c, std::uint64_t n) {
  const auto table = color_table(c, n);
  write_runlength(out, table, c.palette_size());
}

ExplicitStream read_runlength(std::istream& in) {
  ExplicitStream s;
  std::string line;
  std::size_t line_no = 0;
  auto next_line = [&]() -> bool {
    while (std::getline(in, line)) {
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (!line.empty()) return true;
    }
    return false;
  };
  auto fail = [&](const std::string& what) {
    throw ParseError(line_no, "run-length file line " + std::to_string(line_no) + ": " + what);
  };
  if (!next_line()) fail("missing palette header");
  {
    std::istringstream ls(line);
    std::string key;
    int k = 0;
    if (!(ls >> key >> k) || key != "palette") fail("expected 'palette k'");
    s.palette = k;
  }
  if (!next_line()) fail("missing start header");
  {
    std::istringstream ls(line);
    std::string key;
    long long start = 0;
    if (!(ls >> key >> start) || key != "start" || start != 1) fail("expected 'start 1'");
  }
  while (next_line()) {
    std::istringstream ls(line);
    int color = 0;
    long long len = 0;
    std::string extra;
    if (!(ls >> color >> len) || (ls >> extra)) fail("expected 'color length'");
    if (color < 1 || color > s.palette || len < 1) fail("run out of range");
    s.colors.insert(s.colors.end(), static_cast<std::size_t>(len), static_cast<Color>(color));
  }
  if (s.colors.empty()) throw Error(ErrorKind::EmptyPattern, "run-length file has no runs");
  return s;
}

Coloring load_runlength_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::DomainError, "cannot open " + path);
  ExplicitStream s = read_runlength(in);
  const int palette = s.palette;
  auto colors = std::move(s.colors);
  return Coloring(std::make_shared<StreamOracle>(std::move(colors)), palette,
                  Descriptor{"file", {{"path", path}}});
}

// ---------------------------------------------------------------------------
// Descriptor round-trip

namespace {

std::string require(const Descriptor& d, std::string_view key) {
  auto v = d.get(key);
  if (!v) throw Error(ErrorKind::BadParams, "descriptor missing '" + std::string(key) + "'");
  return *v;
}

std::int64_t require_int(const Descriptor& d, std::string_view key) {
  return std::stoll(require(d, key));
}

}  // namespace

Coloring recursive_from_descriptor(const Descriptor& d);  // recursive.cpp

Coloring from_descriptor(const Descriptor& d) {
  if (d.kind == "power2") return power_2coloring(require_int(d, "a"), require_int(d, "b"));
  if (d.kind == "geo3") {
    std::optional<GeometricParams> p;
    if (d.get("l")) {
      p = GeometricParams{parse_rational(require(d, "l")), parse_rational(require(d, "x")),
                          parse_rational(require(d, "y"))};
    }
    return geometric_3coloring(require_int(d, "a"), require_int(d, "b"), p);
  }
  if (d.kind == "triple") {
    std::optional<TripleParams> p;
    if (d.get("x")) p = TripleParams{parse_rational(require(d, "x")), parse_rational(require(d, "l"))};
    return triple_2coloring(require_int(d, "a"), require_int(d, "b"), require_int(d, "c"), p);
  }
  if (d.kind == "case2") {
    return case2_coloring(IntPolynomial::parse(require(d, "P")), IntPolynomial::parse(require(d, "Q")));
  }
  if (d.kind == "recursive") return recursive_from_descriptor(d);
  if (d.kind == "explicit") {
    return custom_coloring(ExplicitStream{parse_runs(require(d, "runs")),
                                          static_cast<int>(require_int(d, "palette"))});
  }
  if (d.kind == "periodic") {
    const int palette = static_cast<int>(require_int(d, "palette"));
    const std::string pattern = require(d, "pattern");
    return custom_coloring(PeriodicPattern{
        pattern.find(':') != std::string::npos ? parse_runs(pattern) : parse_color_digits(pattern), palette});
  }
  if (d.kind == "random") {
    return custom_coloring(SeededRandom{std::stoull(require(d, "seed")),
                                        static_cast<int>(require_int(d, "palette"))});
  }
  if (d.kind == "file") return load_runlength_file(require(d, "path"));
  throw Error(ErrorKind::BadParams, "unknown coloring kind '" + d.kind + "'");
}

}  // namespace sumset
