#include "sumset/coloring.hpp"
#include "sumset/error.hpp"

#include <limits>

namespace sumset {

namespace {
constexpr Int128 kInfinity = std::numeric_limits<Int128>::max();
}

BandOracle::BandOracle(IntPolynomial p, IntPolynomial q, BandOffset offset)
    : p_(std::move(p)), q_(std::move(q)), offset_(std::move(offset)) {}

Int128 BandOracle::value(const IntPolynomial& poly, std::int64_t n) const {
  const auto v = poly.eval_i128(static_cast<Int128>(n));
  return v ? *v : kInfinity;
}

std::optional<std::int64_t> BandOracle::last_at_most(const IntPolynomial& poly, std::int64_t shift,
                                                     std::uint64_t z) const {
  const Int128 target = static_cast<Int128>(z);
  const std::int64_t n0 = offset_.n0;
  if (value(poly, n0 + shift) > target) return std::nullopt;
  std::int64_t lo = n0;  // poly(lo + shift) <= z
  std::int64_t step = 1;
  std::int64_t hi = n0 + step;
  while (value(poly, hi + shift) <= target) {
    lo = hi;
    step *= 2;
    hi = n0 + step;
  }
  while (hi - lo > 1) {
    const std::int64_t mid = lo + (hi - lo) / 2;
    if (value(poly, mid + shift) <= target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

Color BandOracle::color(std::uint64_t z) const {
  const std::int64_t l = offset_.l;
  const std::int64_t n0 = offset_.n0;
  switch (offset_.part) {
    case BandPart::PartI: {
      // Bands [P(n+l-1), Q(n)) for n >= N0 get color 2.
      const auto n = last_at_most(p_, l - 1, z);
      if (!n) return 1;
      return static_cast<Int128>(z) < value(q_, *n) ? Color{2} : Color{1};
    }
    case BandPart::PartII: {
      // Blocks [Q(N0+kl), Q(N0+(k+1)l)) get color k mod 2, shifted to {1,2};
      // the initial segment carries the palette's second color.
      const auto n = last_at_most(q_, 0, z);
      if (!n) return 2;
      const std::int64_t k = (*n - n0) / l;
      return static_cast<Color>(k % 2 + 1);
    }
    case BandPart::PartIII: {
      const auto n = last_at_most(p_, 0, z);
      if (!n) return 2;
      const std::int64_t k = (*n - n0) / (l - 1);
      return static_cast<Color>(k % 2 + 1);
    }
  }
  return 1;
}

Coloring case2_coloring(const IntPolynomial& P, const IntPolynomial& Q) {
  BandOffset offset = band_offset(P, Q);
  auto [p, q] = oriented_pair(P, Q);
  Descriptor d{"case2", {{"P", P.str()}, {"Q", Q.str()}}};
  return Coloring(std::make_shared<BandOracle>(std::move(p), std::move(q), std::move(offset)), 2,
                  std::move(d));
}

}  // namespace sumset
