#include "sumset/error.hpp"
#include "sumset/search.hpp"
#include "sumset/witness.hpp"

#include <doctest.h>

#include <random>
#include <set>

using namespace sumset;

namespace {

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

std::int64_t pick(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
  return lo + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

// Random admissible draws; values are chosen large enough that every emitted
// element is positive.
WitnessParams draw(WitnessVariant v, std::mt19937_64& rng) {
  WitnessParams p;
  p.variant = v;
  p.a = pick(rng, 1, 4);
  p.b = p.a + pick(rng, 1, 4);
  p.r = pick(rng, 1, 5);
  p.d_tilde = pick(rng, 0, 20);
  const std::int64_t a = p.a, b = p.b, r = p.r;
  const int count = static_cast<int>(pick(rng, 1, 5));
  switch (v) {
    case WitnessVariant::StepI:
      p.s = pick(rng, 0, 10);
      p.t = a * pick(rng, 1, 4);
      for (int i = 0; i < count; ++i) p.d.push_back(p.s + (r - 1) * p.t + a + pick(rng, 1, 500));
      break;
    case WitnessVariant::CaseI: {
      p.E = b * (b - a) * pick(rng, 0, 6);
      const std::int64_t floor = a * (a * b * (r + 1) + p.E / (b - a) + 1);
      for (int i = 0; i < count; ++i) p.v.push_back(floor + a * pick(rng, 0, 400));
      if (rng() % 2) {
        // Choose (d_i, k_i) first and derive v_i so that the E relation holds:
        // v_i = (a/b) (E + b d_i + 2 b^2 (b-a) k_i) must be a multiple of a.
        p.v.clear();
        for (int i = 0; i < count; ++i) {
          const std::int64_t k = pick(rng, 0, 3);
          std::int64_t d = pick(rng, 1, 300);
          d += floor;  // keep v_i above the positivity floor
          const std::int64_t inner = p.E + b * d + 2 * b * b * (b - a) * k;  // divisible by b
          p.v.push_back(a * inner / b);
          p.dk.emplace_back(d, k);
        }
      }
      break;
    }
    case WitnessVariant::SituationI: {
      p.j = pick(rng, 1, 3);
      p.beta = pick(rng, 1, 3);
      p.L0 = r + 1 + pick(rng, 0, 4);
      std::vector<std::int64_t> pool;
      for (std::int64_t s = 1; s <= p.L0 - 1; ++s) pool.push_back(s);
      std::shuffle(pool.begin(), pool.end(), rng);
      p.offsets.assign(pool.begin(), pool.begin() + r);
      const std::int64_t lead = ((p.j - 1) * p.beta + 1) * p.L0;
      for (int i = 0; i < count; ++i) p.v.push_back(a * (lead * a * b + pick(rng, 1, 500)));
      break;
    }
    case WitnessVariant::SituationII: {
      p.beta = pick(rng, 1, 3);
      p.L0 = pick(rng, 1, 4);
      p.alpha = pick(rng, -5, 5);
      p.xi = p.alpha + (b - a) * pick(rng, 0, 10);
      const std::int64_t span = a * b * (b - a) * p.L0 * p.beta * (r - 1);
      // B elements must stay positive: choose d_tilde to cover the spread.
      p.d_tilde = span + std::abs(p.alpha) + pick(rng, 1, 20);
      const std::int64_t base = (p.xi - p.alpha) / (b - a);
      for (int i = 0; i < count; ++i) p.v.push_back(a * (base + pick(rng, 1, 500)));
      break;
    }
  }
  return p;
}

std::set<std::int64_t> sumset_of(const std::vector<std::int64_t>& B, const std::vector<std::int64_t>& C,
                              std::int64_t m) {
  std::set<std::int64_t> out;
  for (auto h : B) {
    for (auto k : C) out.insert(h + m * k);
  }
  return out;
}

}  // namespace

TEST_CASE("StepI worked example") {
  WitnessParams p;
  p.variant = WitnessVariant::StepI;
  p.a = 1;
  p.b = 2;
  p.r = 2;
  p.s = 1;
  p.t = 1;
  p.d = {10, 20};
  const Witness w = build_witness(p);
  CHECK(w.B == std::vector<std::int64_t>{4, 5});
  CHECK(w.C == std::vector<std::int64_t>{7, 17});
  CHECK(sumset_of(w.B, w.C, 1) == std::set<std::int64_t>{11, 12, 21, 22});
  CHECK(sumset_of(w.B, w.C, 2) == std::set<std::int64_t>{18, 19, 38, 39});
  CHECK(check_sumset_identity(p, w.B, w.C));

  p.r = 1;
  CHECK(build_witness(p).B.size() == 1);
}

TEST_CASE("CaseI worked example") {
  WitnessParams p;
  p.variant = WitnessVariant::CaseI;
  p.a = 1;
  p.b = 2;
  p.r = 2;
  p.E = 2;
  p.v = {100};
  const Witness w = build_witness(p);
  CHECK(w.B == std::vector<std::int64_t>{10, 12});
  CHECK(w.C == std::vector<std::int64_t>{92});
  CHECK(check_sumset_identity(p, w.B, w.C));
  // B + aC = {v + j a b (b-a)} for j = 1, 2.
  CHECK(sumset_of(w.B, w.C, 1) == std::set<std::int64_t>{102, 104});
}

TEST_CASE("SituationI fixture") {
  WitnessParams p;
  p.variant = WitnessVariant::SituationI;
  p.a = 1;
  p.b = 2;
  p.r = 2;
  p.j = 2;
  p.beta = 1;
  p.L0 = 3;
  p.offsets = {1, 2};
  p.v = {50};
  // lead = ((j-1) beta + 1) L0 = 6; B = {6 a^2 b + (L0 - s) a b (b-a)} = {12 + 4, 12 + 2}.
  const Witness w = build_witness(p);
  CHECK(w.B == std::vector<std::int64_t>{14, 16});
  CHECK(w.C == std::vector<std::int64_t>{38});
  CHECK(check_sumset_identity(p, w.B, w.C));
}

TEST_CASE("SituationII uses r elements in B") {
  WitnessParams p;
  p.variant = WitnessVariant::SituationII;
  p.a = 1;
  p.b = 3;
  p.r = 3;
  p.d_tilde = 100;
  p.xi = 9;
  p.alpha = 1;
  p.beta = 1;
  p.L0 = 1;
  p.v = {40};
  const Witness w = build_witness(p);
  // B = {100 + (9-1)/2 - 1 - 6j : j = 0..2} = {103, 97, 91}; C = {40 - 4}.
  CHECK(w.B == std::vector<std::int64_t>{91, 97, 103});
  CHECK(w.C == std::vector<std::int64_t>{36});
  CHECK(check_sumset_identity(p, w.B, w.C));
}

TEST_CASE("random admissible draws satisfy the sumset identities") {
  std::mt19937_64 rng(99);
  for (auto v : {WitnessVariant::StepI, WitnessVariant::CaseI, WitnessVariant::SituationI,
                 WitnessVariant::SituationII}) {
    CAPTURE(to_string(v));
    for (int i = 0; i < 100; ++i) {
      const WitnessParams p = draw(v, rng);
      CAPTURE(p.descriptor().canonical());
      const Witness w = build_witness(p);
      CHECK(check_sumset_identity(p, w.B, w.C));
      if (v != WitnessVariant::SituationII) {
        CHECK(w.B.size() == static_cast<std::size_t>(p.r));
      }
      // Mutating either set breaks the identity.
      auto B2 = w.B;
      B2.back() += 1;
      CHECK_FALSE(check_sumset_identity(p, B2, w.C));
      auto C2 = w.C;
      C2.front() += 1;
      CHECK_FALSE(check_sumset_identity(p, w.B, C2));
      // Descriptor round-trip.
      const WitnessParams back = WitnessParams::from_descriptor(p.descriptor());
      CHECK(back.descriptor() == p.descriptor());
    }
  }
}

TEST_CASE("witness validation errors") {
  WitnessParams p;
  p.variant = WitnessVariant::StepI;
  p.a = 2;
  p.b = 3;
  p.t = 3;
  p.d = {50};
  CHECK(error_kind([&] { build_witness(p); }) == ErrorKind::DivisibilityError);
  p.t = 2;
  p.d = {1};
  CHECK(error_kind([&] { build_witness(p); }) == ErrorKind::NonPositiveElement);

  WitnessParams c;
  c.variant = WitnessVariant::CaseI;
  c.a = 1;
  c.b = 3;
  c.E = 2;  // not divisible by b(b-a) = 6
  c.v = {100};
  CHECK(error_kind([&] { build_witness(c); }) == ErrorKind::DivisibilityError);
  c.E = 6;
  c.dk = {{1, 1}};
  CHECK(error_kind([&] { build_witness(c); }) == ErrorKind::BadParams);

  WitnessParams s;
  s.variant = WitnessVariant::SituationI;
  s.r = 2;
  s.L0 = 3;
  s.offsets = {1, 3};
  s.v = {100};
  CHECK(error_kind([&] { build_witness(s); }) == ErrorKind::BadParams);

  WitnessParams t;
  t.variant = WitnessVariant::SituationII;
  t.a = 1;
  t.b = 3;
  t.xi = 4;
  t.alpha = 1;
  t.v = {100};
  CHECK(error_kind([&] { build_witness(t); }) == ErrorKind::DivisibilityError);

  CHECK(error_kind([] { parse_witness_variant("stepII"); }) == ErrorKind::BadParams);
  CHECK(parse_witness_variant("SITUATIONii") == WitnessVariant::SituationII);
  CHECK(error_kind([] { WitnessParams::from_descriptor(Descriptor::parse("kind=stepI;zz=1")); }) ==
        ErrorKind::BadParams);
}

TEST_CASE("witness composes with a coloring built from its sumsets") {
  std::mt19937_64 rng(5);
  for (auto v : {WitnessVariant::StepI, WitnessVariant::CaseI, WitnessVariant::SituationI}) {
    const WitnessParams p = draw(v, rng);
    const Witness w = build_witness(p);
    const auto [left, right] = expected_sumsets(p);
    // Color 1 exactly on the displayed right-hand sides, color 2 elsewhere.
    std::int64_t top = 0;
    for (auto x : left) top = std::max(top, x);
    for (auto x : right) top = std::max(top, x);
    std::vector<Color> stream(static_cast<std::size_t>(top), 2);
    for (auto x : left) stream[static_cast<std::size_t>(x - 1)] = 1;
    for (auto x : right) stream[static_cast<std::size_t>(x - 1)] = 1;
    const Coloring col = custom_coloring(ExplicitStream{stream, 2});
    Configuration cfg;
    cfg.B.assign(w.B.begin(), w.B.end());
    cfg.C.assign(w.C.begin(), w.C.end());
    cfg.polys = {IntPolynomial({BigInt(0), BigInt(p.a)}), IntPolynomial({BigInt(0), BigInt(p.b)})};
    CHECK(verify_config(col, cfg) == std::optional<Color>(1));
  }
}
