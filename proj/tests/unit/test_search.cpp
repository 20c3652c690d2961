#include "sumset/error.hpp"
#include "sumset/search.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

using namespace sumset;

namespace {

IntPolynomial poly(const char* text) { return IntPolynomial::parse(text); }
std::vector<IntPolynomial> polys(const char* text) { return parse_polynomial_list(text); }

Coloring periodic(std::vector<Color> pattern) { return custom_coloring(PeriodicPattern{std::move(pattern), 2}); }
Coloring constant1() { return periodic({1}); }
Coloring parity() { return periodic({2, 1}); }  // even -> 1, odd -> 2

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

std::uint64_t value(const IntPolynomial& p, std::uint64_t c) {
  return static_cast<std::uint64_t>(p(BigInt(c)));
}

// Definitional survivor predicate.
std::vector<std::uint64_t> survivors_oracle(const ColorWindow& w, const std::vector<IntPolynomial>& ps,
                                            const std::vector<std::uint64_t>& C, Color color) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t b = 1; b <= w.size(); ++b) {
    bool ok = true;
    for (std::uint64_t c : C) {
      for (const auto& p : ps) {
        const std::uint64_t z = b + value(p, c);
        ok = ok && z <= w.size() && w.at(z) == color;
      }
    }
    if (ok) out.push_back(b);
  }
  return out;
}

struct Best {
  std::uint64_t survivors = 0;
  bool found = false;
};

// Nested loops over colors and all pairs c1 < c2 (sizeC = 2) or singletons.
Best exhaustive_oracle(const ColorWindow& w, const std::vector<IntPolynomial>& ps, std::uint64_t r,
                       std::uint64_t sizeC) {
  Best best;
  const std::uint64_t N = w.size();
  auto fits = [&](std::uint64_t c) {
    for (const auto& p : ps) {
      if (value(p, c) >= N) return false;
    }
    return true;
  };
  for (int color = 1; color <= w.palette_size(); ++color) {
    for (std::uint64_t c1 = 1; c1 <= N && fits(c1); ++c1) {
      if (sizeC == 1) {
        const auto s = survivors_oracle(w, ps, {c1}, static_cast<Color>(color)).size();
        if (s >= r) best = {std::max<std::uint64_t>(best.survivors, s), true};
        continue;
      }
      for (std::uint64_t c2 = c1 + 1; c2 <= N && fits(c2); ++c2) {
        const auto s = survivors_oracle(w, ps, {c1, c2}, static_cast<Color>(color)).size();
        if (s >= r) best = {std::max<std::uint64_t>(best.survivors, s), true};
      }
    }
  }
  return best;
}

ApResult ap_oracle(std::vector<std::int64_t> S) {
  std::sort(S.begin(), S.end());
  S.erase(std::unique(S.begin(), S.end()), S.end());
  const std::set<std::int64_t> in(S.begin(), S.end());
  ApResult best{S.front(), 0, 1};
  for (std::size_t i = 0; i < S.size(); ++i) {
    for (std::size_t j = i + 1; j < S.size(); ++j) {
      const std::int64_t d = S[j] - S[i];
      std::int64_t len = 1;
      while (in.count(S[i] + len * d)) ++len;
      const auto key = std::tuple(-len, d, S[i]);
      if (key < std::tuple(-best.length, best.difference, best.start)) best = {S[i], d, len};
    }
  }
  return best;
}

}  // namespace

TEST_CASE("bitset shifted intersections") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const std::uint64_t n = 1 + rng() % 700;
    Bitset a(n), b(n);
    for (std::uint64_t i = 1; i <= n; ++i) {
      if (rng() % 3) a.set(i);
      if (rng() % 2) b.set(i);
    }
    const std::uint64_t s1 = rng() % (n + 5), s2 = rng() % 130;
    Bitset got = a;
    got.and_shifted(b, s1);
    got.and_shifted(b, s2);
    std::uint64_t expect_count = 0;
    for (std::uint64_t i = 1; i <= n; ++i) {
      const bool want = a.test(i) && b.test(i + s1) && b.test(i + s2);
      CHECK(got.test(i) == want);
      expect_count += want;
    }
    const std::vector<std::uint64_t> shifts{s1, s2};
    CHECK(a.count_and_shifted(b, shifts) == expect_count);
    CHECK(got.count() == expect_count);
  }
}

TEST_CASE("verify_config examples") {
  Configuration cfg{{1, 2}, {3}, polys("n,2n"), 1, 0, "", 0};
  CHECK(verify_config(constant1(), cfg) == std::optional<Color>(1));
  cfg = {{2, 4}, {2, 4, 6}, polys("n,3n"), 1, 0, "", 0};
  CHECK(verify_config(parity(), cfg) == std::optional<Color>(1));
  cfg.B = {2, 3};
  CHECK_FALSE(verify_config(parity(), cfg).has_value());
  cfg = {{5}, {1}, polys("n,2n"), 1, 0, "", 0};
  CHECK(verify_config(power_2coloring(1, 2), cfg) == std::optional<Color>(1));
}

TEST_CASE("survivor_set examples") {
  const ColorWindow evens = window(parity(), 20);
  const std::vector<std::uint64_t> C2{2};
  CHECK(survivor_set(evens, polys("n,2n"), C2, 1).positions() ==
        std::vector<std::uint64_t>{2, 4, 6, 8, 10, 12, 14, 16});
  const Bitset all = survivor_set(evens, polys("n,2n"), {}, 1);
  CHECK(all.count() == 20);

  ColorWindow single(20, 2);
  for (std::uint64_t i = 1; i <= 20; ++i) single.layer(i == 10 ? 1 : 2).set(i);
  const std::vector<std::uint64_t> C3{3};
  CHECK(survivor_set(single, polys("n"), C3, 1).positions() == std::vector<std::uint64_t>{7});

  const std::vector<std::uint64_t> too_big{20};
  CHECK(error_kind([&] { survivor_set(evens, polys("n"), too_big, 1); }) == ErrorKind::DomainError);
}

TEST_CASE("survivor_set agrees with the definitional predicate") {
  std::mt19937_64 rng(17);
  const char* families[] = {"n,2n", "n,3n", "n^2,n^3", "n,2n,3n", "n^2,n^2+n", "2n,5n"};
  for (int trial = 0; trial < 50; ++trial) {
    const std::uint64_t N = 20 + rng() % 181;
    const auto ps = polys(families[trial % 6]);
    const Coloring col = custom_coloring(SeededRandom{static_cast<std::uint64_t>(trial), 2 + trial % 2});
    const ColorWindow w = window(col, N);
    std::vector<std::uint64_t> C;
    for (int k = 0; k < 3; ++k) {
      const std::uint64_t c = 1 + rng() % 12;
      bool fits = true;
      for (const auto& p : ps) fits = fits && value(p, c) < N;
      if (fits && std::find(C.begin(), C.end(), c) == C.end()) C.push_back(c);
    }
    std::sort(C.begin(), C.end());
    for (int color = 1; color <= col.palette_size(); ++color) {
      CHECK(survivor_set(w, ps, C, static_cast<Color>(color)).positions() ==
            survivors_oracle(w, ps, C, static_cast<Color>(color)));
    }
  }
}

TEST_CASE("greedy_search examples") {
  auto cfg = greedy_search(window(parity(), 50), polys("n,3n"), 2, 10);
  CHECK(cfg.C.size() >= 5);
  CHECK(verify_config(parity(), cfg).has_value());

  cfg = greedy_search(window(constant1(), 20), polys("n,2n"), 2, 3);
  CHECK(cfg.C.size() == 3);
  CHECK(cfg.color == 1);

  const Coloring alt = periodic({1, 2});
  cfg = greedy_search(window(alt, 40), polys("n,2n"), 1, 2);
  CHECK(cfg.C.size() == 2);
  CHECK(verify_config(alt, cfg) == std::optional<Color>(cfg.color));
  CHECK(exhaustive_search(window(alt, 40), polys("n,2n"), 1, 2).has_value());

  // r larger than the window can hold.
  CHECK(error_kind([&] { greedy_search(window(alt, 10), polys("n,2n"), 11, 2); }) ==
        ErrorKind::NoConfiguration);
}

TEST_CASE("greedy_search is deterministic across thread counts and keeps B sorted") {
  const Coloring col = custom_coloring(SeededRandom{4, 2});
  const ColorWindow w = window(col, 200000);
  const auto ps = polys("n,2n");
  const auto one = greedy_search(w, ps, 3, 8, GreedyOptions{1, 512, 1});
  const auto four = greedy_search(w, ps, 3, 8, GreedyOptions{1, 512, 4});
  CHECK(one.B == four.B);
  CHECK(one.C == four.C);
  CHECK(one.color == four.color);
  CHECK(std::is_sorted(one.B.begin(), one.B.end()));
  CHECK(std::is_sorted(one.C.begin(), one.C.end()));
  CHECK(one.B.size() == 3);
  CHECK(verify_config(col, one) == std::optional<Color>(one.color));
  // B is the first r survivors.
  const Bitset surv = survivor_set(w, ps, one.C, one.color);
  CHECK(surv.first(3) == one.B);
  CHECK(surv.count() == one.survivors);
}

TEST_CASE("greedy_candidates honours stride and thinning") {
  const ColorWindow w = window(constant1(), 100);
  const auto ps = polys("n,2n");
  auto cands = greedy_candidates(w, ps, GreedyOptions{});
  CHECK(cands.size() == 49);  // 2c < 100
  cands = greedy_candidates(w, ps, GreedyOptions{3, 0, 1});
  CHECK(cands.front() == 1);
  CHECK(cands[1] == 4);
  cands = greedy_candidates(w, ps, GreedyOptions{1, 10, 1});
  CHECK(cands.size() == 10);
  CHECK(std::is_sorted(cands.begin(), cands.end()));
}

TEST_CASE("exhaustive_search examples") {
  CHECK(exhaustive_search(window(constant1(), 10), polys("n,2n"), 2, 2).has_value());
  const auto cfg = exhaustive_search(window(custom_coloring(SeededRandom{3, 2}), 40), polys("n,2n"), 2, 2);
  const auto want = exhaustive_oracle(window(custom_coloring(SeededRandom{3, 2}), 40), polys("n,2n"), 2, 2);
  CHECK(cfg.has_value() == want.found);
  if (cfg) CHECK(cfg->survivors == want.survivors);
}

TEST_CASE("exhaustive_search agrees with nested loops and bounds greedy") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    CAPTURE(seed);
    const std::uint64_t N = 20 + seed % 21;
    const Coloring col = custom_coloring(SeededRandom{seed, 2});
    const ColorWindow w = window(col, N);
    const auto ps = polys(seed % 2 ? "n,2n" : "n,3n");
    for (std::uint64_t sizeC : {1, 2}) {
      const auto got = exhaustive_search(w, ps, 2, sizeC);
      const auto want = exhaustive_oracle(w, ps, 2, sizeC);
      REQUIRE(got.has_value() == want.found);
      if (got) {
        CHECK(got->survivors == want.survivors);
        CHECK(got->C.size() == sizeC);
        CHECK(verify_config(col, *got) == std::optional<Color>(got->color));
      }
    }
    // Largest sizeC with any configuration bounds the greedy |C|.
    std::uint64_t optimum = 0;
    while (exhaustive_search(w, ps, 2, optimum + 1)) ++optimum;
    try {
      const auto g = greedy_search(w, ps, 2, 64);
      CHECK(g.C.size() <= optimum);
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::NoConfiguration);
      CHECK(optimum == 0);
    }
  }
}

TEST_CASE("bad_set examples") {
  const auto ps = polys("n,2n");
  auto bs = bad_set(constant1(), 3, ps, 1, 100);
  CHECK(bs.report.count == 100);
  CHECK(bs.elements.front() == 1);
  CHECK(bs.elements.back() == 100);
  CHECK_FALSE(bs.report.stabilized);
  bs = bad_set(constant1(), 3, ps, 2, 100);
  CHECK(bs.elements.empty());
  CHECK_FALSE(bs.report.max_element.has_value());
  CHECK(bs.report.stabilized);

  const Coloring tri = triple_2coloring(1, 2, 3);
  const auto ps3 = polys("n,2n,3n");
  bs = bad_set(tri, 1, ps3, 1, 10000);
  std::vector<std::uint64_t> oracle;
  for (std::uint64_t m = 1; m <= 10000; ++m) {
    if (tri(1 + m) == 1 && tri(1 + 2 * m) == 1 && tri(1 + 3 * m) == 1) oracle.push_back(m);
  }
  CHECK(bs.elements == oracle);
  CHECK(bs.report.stabilized);
  CHECK(bs.report.count == oracle.size());
  CHECK(error_kind([&] { bad_set(tri, 1, ps3, 1, 1); }) == ErrorKind::BadParams);
}

TEST_CASE("per-color bad sets partition the agreement set") {
  const std::vector<Coloring> cols = {power_2coloring(1, 2), triple_2coloring(1, 2, 3),
                                      custom_coloring(SeededRandom{9, 2})};
  const auto ps = polys("n^2,n^2+n");
  for (const Coloring& c : cols) {
    for (std::uint64_t n : {1, 7, 30}) {
      const auto sets = bad_sets_all_colors(c, n, ps, 3000);
      std::vector<std::uint64_t> merged;
      for (const auto& s : sets) merged.insert(merged.end(), s.elements.begin(), s.elements.end());
      std::sort(merged.begin(), merged.end());
      std::vector<std::uint64_t> agree;
      for (std::uint64_t m = 1; m <= 3000; ++m) {
        if (c(n + m * m) == c(n + m * m + m)) agree.push_back(m);
      }
      CHECK(merged == agree);
      for (std::size_t i = 0; i < sets.size(); ++i) {
        CHECK(sets[i].elements == bad_set(c, n, ps, static_cast<Color>(i + 1), 3000).elements);
      }
    }
  }
}

TEST_CASE("audit_report and growth rows") {
  const std::vector<std::uint64_t> elems{3, 10, 40};
  auto rep = audit_report(5, 1, elems, 100);
  CHECK(rep.count == 3);
  CHECK(rep.max_element == std::optional<std::uint64_t>(40));
  CHECK(rep.stabilized);
  rep = audit_report(5, 1, elems, 60);
  CHECK_FALSE(rep.stabilized);
  rep = audit_report(5, 1, elems, 20);
  CHECK(rep.count == 2);
  CHECK(rep.max_element == std::optional<std::uint64_t>(10));

  const Coloring c = power_2coloring(1, 2);
  const auto ps = polys("n,2n");
  const std::vector<std::uint64_t> horizons{100, 1000, 10000};
  const auto rows = bad_set_growth(c, 1, ps, 2, horizons);
  REQUIRE(rows.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    const auto direct = bad_set(c, 1, ps, 2, horizons[i]).report;
    CHECK(rows[i].M == horizons[i]);
    CHECK(rows[i].count == direct.count);
    CHECK(rows[i].max_element == direct.max_element);
  }
  std::ostringstream csv;
  write_growth_csv(csv, rows);
  CHECK(csv.str().rfind("M,count,max_element\n100,", 0) == 0);
}

TEST_CASE("longest_ap examples") {
  const std::vector<std::int64_t> s1{1, 2, 3, 5, 7, 9};
  CHECK(longest_ap(s1) == ApResult{1, 2, 5});
  const std::vector<std::int64_t> s2{4};
  CHECK(longest_ap(s2) == ApResult{4, 0, 1});
  const std::vector<std::int64_t> s3{2, 4, 6, 8};
  CHECK(longest_ap(s3) == ApResult{2, 2, 4});
  const std::vector<std::int64_t> s4{1, 2, 10, 20};
  CHECK(longest_ap(s4) == ApResult{1, 1, 2});
  const std::vector<std::int64_t> unsorted{9, 3, 6, 3};
  CHECK(longest_ap(unsorted) == ApResult{3, 3, 3});
  CHECK(error_kind([] { longest_ap(std::vector<std::int64_t>{}); }) == ErrorKind::EmptySet);
}

TEST_CASE("longest_ap matches cubic brute force") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t size = 1 + rng() % 50;
    std::vector<std::int64_t> S;
    for (std::size_t i = 0; i < size; ++i) S.push_back(static_cast<std::int64_t>(1 + rng() % 500));
    CHECK(longest_ap(S) == ap_oracle(S));
  }
}

TEST_CASE("gowers_threshold examples") {
  const auto g = gowers_threshold(3, 1000000);
  const Real256 lnN = log(Real256(1000000));
  const Real256 deficit = ldexp(log(log(log(Real256(1000000)))), -4096);
  CHECK(abs(g.log_n - lnN) < Real256("1e-70"));
  CHECK(abs(g.deficit - deficit) / deficit < Real256("1e-70"));
  CHECK(g.deficit > 0);
  CHECK(g.deficit_exponent() == -4097);  // ln ln ln 10^6 is about 0.96
  CHECK(g < gowers_threshold(4, 1000000));
  CHECK(error_kind([] { gowers_threshold(1, 10); }) == ErrorKind::DomainError);
  CHECK(error_kind([] { gowers_threshold(1, 15); }) == ErrorKind::DomainError);
  CHECK_NOTHROW(gowers_threshold(1, 16));
  CHECK(error_kind([] { gowers_threshold(0, 1000); }) == ErrorKind::DomainError);
}
