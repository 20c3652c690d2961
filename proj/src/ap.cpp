#include "sumset/search.hpp"

#include "sumset/error.hpp"

#include <algorithm>
#include <tuple>
#include <unordered_set>

namespace sumset {

ApResult longest_ap(std::span<const std::int64_t> S) {
  std::vector<std::int64_t> v(S.begin(), S.end());
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  if (v.empty()) throw Error(ErrorKind::EmptySet, "longest_ap needs a nonempty set");
  if (v.size() == 1) return {v.front(), 0, 1};

  const std::unordered_set<std::int64_t> members(v.begin(), v.end());
  ApResult best{v[0], v[1] - v[0], 0};
  // Each pair (x, x + d) lies in exactly one maximal progression of
  // difference d, so walking only from progression starts costs O(n^2).
  for (std::size_t i = 0; i < v.size(); ++i) {
    for (std::size_t j = i + 1; j < v.size(); ++j) {
      const std::int64_t d = v[j] - v[i];
      if (members.count(v[i] - d)) continue;
      std::int64_t len = 2;
      for (std::int64_t x = v[j] + d; members.count(x); x += d) ++len;
      const auto key = std::make_tuple(-len, d, v[i]);
      if (key < std::make_tuple(-best.length, best.difference, best.start)) best = {v[i], d, len};
    }
  }
  return best;
}

std::string GowersThreshold::str(int digits) const {
  return Real256(log_n - deficit).str(digits, std::ios_base::fixed);
}

std::int64_t GowersThreshold::deficit_exponent() const {
  int e = 0;
  (void)frexp(deficit, &e);
  return static_cast<std::int64_t>(e) - 1;
}

bool operator<(const GowersThreshold& x, const GowersThreshold& y) {
  // Any representable gap between two values of ln N dwarfs the deficits,
  // which sit below 2^-1024.
  if (x.log_n != y.log_n) return x.log_n < y.log_n;
  return x.deficit > y.deficit;
}

GowersThreshold gowers_threshold(int k, std::uint64_t N) {
  if (k < 1 || k > 20) throw Error(ErrorKind::DomainError, "k must lie in [1, 20]");
  if (N <= 15) throw Error(ErrorKind::DomainError, "N must exceed e^e (N >= 16)");
  GowersThreshold g;
  g.k = k;
  g.log_n = log(Real256(N));
  const Real256 lll = log(log(g.log_n));
  g.deficit = ldexp(lll, -(1 << (k + 9)));
  if (!(g.deficit > 0)) throw Error(ErrorKind::DomainError, "deficit underflows the exponent range");
  return g;
}

}  // namespace sumset
