#include "sumset/coloring.hpp"
#include "sumset/error.hpp"
#include "sumset/spec.hpp"

#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

using namespace sumset;

namespace {

IntPolynomial poly(const char* text) { return IntPolynomial::parse(text); }

template <class Fn>
ErrorKind error_kind(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an exception");
  return ErrorKind::DomainError;
}

// Colors of an interval scheme by exact rational comparisons, m = 1, 2, ...
Color scheme_oracle(const Rational& l, const std::vector<Rational>& cuts,
                    const std::vector<Color>& colors, std::uint64_t z) {
  const Rational zz(z);
  if (zz < l) return 1;
  Rational lm = l;
  while (zz >= lm * l) lm *= l;
  Color out = colors.front();
  for (std::size_t i = 0; i < cuts.size(); ++i) {
    if (zz >= cuts[i] * lm) out = colors[i];
  }
  return out;
}

}  // namespace

TEST_CASE("power_2coloring examples") {
  const Coloring c = power_2coloring(1, 2);
  CHECK(c.palette_size() == 2);
  CHECK(c(3) == 1);
  CHECK(c(5) == 1);
  CHECK(c(9) == 2);
  CHECK(error_kind([] { power_2coloring(2, 2); }) == ErrorKind::BadPair);
  CHECK(error_kind([] { power_2coloring(3, 2); }) == ErrorKind::BadPair);
}

TEST_CASE("power_2coloring agrees with the exact band rule") {
  for (auto [a, b] : {std::pair{1, 2}, std::pair{2, 3}, std::pair{3, 7}}) {
    const Coloring c = power_2coloring(a, b);
    const Rational q(b, a);
    for (std::uint64_t z = 1; z <= 30000; ++z) {
      // Largest j >= 0 with q^j <= z.
      Rational p = 1;
      int j = 0;
      while (p * q <= Rational(z)) {
        p *= q;
        ++j;
      }
      const Color want = j < 2 ? 1 : (j % 2 == 0 ? 1 : 2);
      CHECK_MESSAGE(c(z) == want, "z=" << z);
    }
  }
}

TEST_CASE("geometric_3coloring examples and defaults") {
  const GeometricParams p{Rational(4), Rational(3), Rational(8, 5)};
  const Coloring c = geometric_3coloring(1, 2, p);
  CHECK(c.palette_size() == 3);
  CHECK(c(7) == 2);
  CHECK(c(13) == 3);
  CHECK(c(2) == 1);

  const GeometricParams d = default_geometric_params(1, 2);
  CHECK(d.l >= 4);
  CHECK(d.l < 8);
  CHECK(d.x > d.l / 2);
  CHECK(d.x < 4);
  CHECK(d.y > d.x / 2);
  CHECK(d.y * d.y < d.x);
  CHECK(1 < d.y);

  const Coloring def = geometric_3coloring(1, 2);
  for (std::uint64_t z = 1; z <= 20000; ++z) {
    CHECK(def(z) == scheme_oracle(d.l, {Rational(1), d.y, d.x}, {1, 2, 3}, z));
  }
}

TEST_CASE("geometric_3coloring rejects parameters outside the ranges") {
  auto bad = [](Rational l, Rational x, Rational y) {
    return error_kind([&] { geometric_3coloring(1, 2, GeometricParams{l, x, y}); });
  };
  CHECK(bad(8, 3, Rational(8, 5)) == ErrorKind::BadParams);          // l = b^3/a^3
  CHECK(bad(4, 2, Rational(6, 5)) == ErrorKind::BadParams);          // x = l a / b
  CHECK(bad(4, 3, Rational(3, 2)) == ErrorKind::BadParams);          // y = x a / b
  CHECK(bad(4, 3, Rational(7, 4)) == ErrorKind::BadParams);          // y^2 > x
  CHECK(error_kind([] { geometric_3coloring(2, 1); }) == ErrorKind::BadParams);
}

TEST_CASE("triple_2coloring examples and defaults") {
  const Coloring c = triple_2coloring(1, 2, 3, TripleParams{Rational(5, 2), Rational(25, 4)});
  CHECK(c(10) == 1);
  CHECK(c(20) == 2);
  CHECK(triple_2coloring(1, 2, 3)(3) == 1);

  const TripleParams d = default_triple_params(1, 2, 3);
  CHECK(d.x > 2);
  CHECK(d.x < 3);
  CHECK(d.l > d.x * 2);
  CHECK(d.l < d.x * 3);
  const Coloring def = triple_2coloring(1, 2, 3);
  for (std::uint64_t z = 1; z <= 20000; ++z) {
    CHECK(def(z) == scheme_oracle(d.l, {Rational(1), d.x}, {1, 2}, z));
  }
  CHECK(error_kind([] { triple_2coloring(1, 3, 2); }) == ErrorKind::BadParams);
  CHECK(error_kind([] { triple_2coloring(1, 2, 2); }) == ErrorKind::BadParams);
  CHECK(error_kind([] { triple_2coloring(1, 2, 3, TripleParams{Rational(2), Rational(5)}); }) ==
        ErrorKind::BadParams);
}

TEST_CASE("case2_coloring examples") {
  CHECK(case2_coloring(poly("n^2"), poly("n^2+n"))(4) == 2);
  CHECK(case2_coloring(poly("n^2"), poly("n^2+2n"))(10) == 1);
  CHECK(case2_coloring(poly("n^3 - n"), poly("n^3+3n^2+2n"))(30) == 2);
  CHECK(error_kind([] { case2_coloring(poly("n^2"), poly("n^3")); }) == ErrorKind::NotCaseII);
}

TEST_CASE("case2 Part I coloring matches the integer square root rule") {
  const Coloring c = case2_coloring(poly("n^2"), poly("n^2+n"));
  const auto band = c.oracle_as<BandOracle>();
  REQUIRE(band);
  const std::int64_t n0 = band->offset().n0;
  const std::uint64_t q0 = static_cast<std::uint64_t>(n0 * n0 + n0);
  for (std::uint64_t z = q0; z <= 200000; ++z) {
    const std::uint64_t n = static_cast<std::uint64_t>(isqrt(BigInt(z)));
    const bool in_band = n >= static_cast<std::uint64_t>(n0) && z < n * n + n;
    CHECK((c(z) == 2) == in_band);
  }
}

TEST_CASE("case2 Part II and Part III colorings follow the block parity") {
  {
    const auto P = poly("n^2"), Q = poly("n^2+2n");
    const Coloring c = case2_coloring(P, Q);
    // N0 = 2, l = 1: block k is [Q(2+k), Q(3+k)) with color k % 2 + 1.
    for (std::int64_t k = 0; k < 300; ++k) {
      const auto lo = static_cast<std::uint64_t>(Q(BigInt(2 + k)));
      const auto hi = static_cast<std::uint64_t>(Q(BigInt(3 + k)));
      for (std::uint64_t z = lo; z < hi; ++z) CHECK(c(z) == k % 2 + 1);
    }
  }
  {
    const auto P = poly("n^3 - n"), Q = poly("n^3+3n^2+2n");
    const Coloring c = case2_coloring(P, Q);
    // N0 = 2, l = 2: block k is [P(2+k), P(3+k)).
    for (std::int64_t k = 0; k < 60; ++k) {
      const auto lo = static_cast<std::uint64_t>(P(BigInt(2 + k)));
      const auto hi = static_cast<std::uint64_t>(P(BigInt(3 + k)));
      for (std::uint64_t z = lo; z < hi; ++z) CHECK(c(z) == k % 2 + 1);
    }
  }
}

TEST_CASE("custom colorings") {
  const Coloring per = custom_coloring(PeriodicPattern{{1, 2}, 2});
  CHECK(per(1) == 1);
  CHECK(per(2) == 2);
  CHECK(per(3) == 1);
  const Coloring one = custom_coloring(PeriodicPattern{{1}, 2});
  for (std::uint64_t z = 1; z < 1000; ++z) CHECK(one(z) == 1);
  const Coloring r1 = custom_coloring(SeededRandom{7, 2});
  const Coloring r2 = custom_coloring(SeededRandom{7, 2});
  std::size_t differ = 0;
  const Coloring r3 = custom_coloring(SeededRandom{8, 2});
  for (std::uint64_t z = 1; z < 5000; ++z) {
    CHECK(r1(z) == r2(z));
    CHECK(r1(z) == r1(z));
    differ += r1(z) != r3(z);
  }
  CHECK(differ > 1000);
  CHECK(error_kind([] { custom_coloring(PeriodicPattern{{}, 2}); }) == ErrorKind::EmptyPattern);
  CHECK(error_kind([] { custom_coloring(ExplicitStream{{}, 2}); }) == ErrorKind::EmptyPattern);
  CHECK(error_kind([] { custom_coloring(SeededRandom{1, 1}); }) == ErrorKind::BadParams);
  const Coloring ex = custom_coloring(ExplicitStream{{2, 2, 1}, 2});
  CHECK(ex(1) == 2);
  CHECK(ex(3) == 1);
  CHECK(ex(4) == 1);
}

TEST_CASE("window examples and partition") {
  const ColorWindow w1 = window(custom_coloring(PeriodicPattern{{1}, 2}), 8);
  CHECK(w1.layer(1).count() == 8);
  CHECK(w1.layer(2).none());
  const ColorWindow w2 = window(custom_coloring(PeriodicPattern{{1, 2}, 2}), 4);
  CHECK(w2.layer(1).positions() == std::vector<std::uint64_t>{1, 3});
  CHECK(w2.layer(2).positions() == std::vector<std::uint64_t>{2, 4});
  const ColorWindow w3 = window(power_2coloring(1, 2), 16);
  CHECK(w3.layer(2).positions() == std::vector<std::uint64_t>{8, 9, 10, 11, 12, 13, 14, 15});

  const std::vector<Coloring> all = {power_2coloring(1, 2),
                                     geometric_3coloring(1, 2),
                                     triple_2coloring(1, 2, 3),
                                     case2_coloring(poly("n^2"), poly("n^2+n")),
                                     case2_coloring(poly("n^2"), poly("n^2+2n")),
                                     custom_coloring(SeededRandom{3, 4})};
  for (const Coloring& c : all) {
    const std::uint64_t N = 100000;
    const ColorWindow w = window(c, N);
    for (std::uint64_t n = 1; n <= N; ++n) {
      int set = 0;
      for (int k = 1; k <= c.palette_size(); ++k) set += w.layer(static_cast<Color>(k)).test(n);
      if (set != 1 || !w.layer(c(n)).test(n)) {
        FAIL("partition broken at " << n << " for " << c.descriptor().canonical());
      }
    }
  }
}

TEST_CASE("window respects the cap") {
  CHECK(window_cap() >= 1);
  CHECK(error_kind([] { window(power_2coloring(1, 2), window_cap() + 1); }) == ErrorKind::DomainError);
}

TEST_CASE("run-length format round-trips") {
  const Coloring c = geometric_3coloring(1, 2);
  std::stringstream ss;
  write_runlength(ss, c, 5000);
  const std::string text = ss.str();
  CHECK(text.rfind("palette 3\nstart 1\n", 0) == 0);
  const ExplicitStream back = read_runlength(ss);
  CHECK(back.palette == 3);
  REQUIRE(back.colors.size() == 5000);
  for (std::uint64_t z = 1; z <= 5000; ++z) CHECK(back.colors[z - 1] == c(z));

  std::stringstream again;
  write_runlength(again, back.colors, back.palette);
  CHECK(again.str() == text);

  std::istringstream bad("palette 2\nstart 1\n3 4\n");
  CHECK_THROWS_AS(read_runlength(bad), ParseError);
  std::istringstream bad2("palette 2\nstart 2\n1 4\n");
  CHECK_THROWS_AS(read_runlength(bad2), ParseError);
}

TEST_CASE("descriptors rebuild identical colorings") {
  const std::vector<Coloring> all = {power_2coloring(2, 3),
                                     geometric_3coloring(1, 2, GeometricParams{4, 3, Rational(8, 5)}),
                                     triple_2coloring(1, 2, 3),
                                     case2_coloring(poly("n^3 - n"), poly("n^3+3n^2+2n")),
                                     custom_coloring(PeriodicPattern{{1, 1, 2, 3}, 3}),
                                     custom_coloring(ExplicitStream{{2, 1, 1, 2}, 2}),
                                     custom_coloring(SeededRandom{11, 3})};
  for (const Coloring& c : all) {
    const std::string text = c.descriptor().canonical();
    CAPTURE(text);
    const Descriptor parsed = Descriptor::parse(text);
    CHECK(parsed == c.descriptor());
    const Coloring back = from_descriptor(parsed);
    for (std::uint64_t z = 1; z <= 3000; ++z) CHECK(back(z) == c(z));
  }
}

TEST_CASE("coloring spec grammar") {
  CHECK(parse_coloring_spec("power2:1,2").canonical() == power_2coloring(1, 2).descriptor().canonical());
  const Descriptor g = parse_coloring_spec("geo3:1,2,l=4,x=3,y=8/5");
  CHECK(g.get("y") == std::optional<std::string>("8/5"));
  CHECK(coloring_from_spec("geo3:1,2,l=4,x=3,y=8/5")(7) == 2);
  CHECK(coloring_from_spec("triple:1,2,3,x=5/2,l=25/4")(20) == 2);
  CHECK(coloring_from_spec("case2:n^2,n^2+n")(4) == 2);
  CHECK(coloring_from_spec("periodic:12")(2) == 2);
  CHECK(coloring_from_spec("random:3,seed=5").palette_size() == 3);
  CHECK(parse_coloring_spec("random", SpecDefaults{9, 0}).get("seed") == std::optional<std::string>("9"));

  auto position = [](const char* spec) -> std::size_t {
    try {
      parse_coloring_spec(spec);
    } catch (const ParseError& e) {
      return e.position();
    }
    return static_cast<std::size_t>(-1);
  };
  CHECK(position("") == 0);
  CHECK(position("nope:1,2") == 0);
  CHECK(position("power2:1,x") == 9);
  CHECK(position("power2;1,2") == 6);
  CHECK(position("geo3:1,2,l=4,x=3") == 5);
  CHECK(position("geo3:1,2,l=4,x=3,y=8/") == 19);
  CHECK(position("periodic:1a2") == 10);
  CHECK(position("power2:1,2,q=3") == 11);
  CHECK(position("file@") == 5);
}

TEST_CASE("file colorings load through the spec grammar") {
  const std::string path = "sumset_test_coloring.rl";
  {
    std::ofstream out(path);
    write_runlength(out, power_2coloring(1, 2), 100);
  }
  const Coloring c = coloring_from_spec("file@" + path);
  for (std::uint64_t z = 1; z <= 100; ++z) CHECK(c(z) == power_2coloring(1, 2)(z));
  CHECK(c(101) == 1);
  std::remove(path.c_str());
  CHECK_THROWS_AS(coloring_from_spec("file@/nonexistent/sumset.rl"), Error);
}
