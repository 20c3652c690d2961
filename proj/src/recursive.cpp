#include "sumset/recursive.hpp"

#include "sumset/error.hpp"

#include <algorithm>
#include <limits>

namespace sumset {

namespace {

Real ln(const Real& t) { return log(t); }

constexpr int kGridPoints = 100;

struct Oriented {
  IntPolynomial p;
  IntPolynomial q;
  PsiProfile profile;
};

Oriented orient_case1(const IntPolynomial& P, const IntPolynomial& Q) {
  const PsiProfile profile = psi_profile(P, Q);
  if (profile.growth != GrowthCase::CaseI) {
    throw Error(ErrorKind::DomainError, "recursive coloring requires a Case I pair");
  }
  auto [p, q] = oriented_pair(P, Q);
  if (q.degree() <= 1) {
    throw Error(ErrorKind::InadmissibleA0,
                "uniqueness of representations r + Q(s) needs deg Q > 1");
  }
  return {std::move(p), std::move(q), profile};
}

Real to_real(const Rational& r) {
  return Real(numerator(r)) / Real(denominator(r));
}

// Points lo, ..., hi on a geometric grid (linear when lo <= 0).
std::vector<Real> grid(const Real& lo, const Real& hi, int points) {
  std::vector<Real> out;
  out.reserve(static_cast<std::size_t>(points));
  for (int k = 0; k < points; ++k) {
    const Real frac = Real(k) / Real(points - 1);
    out.push_back(lo > 0 ? lo * pow(hi / lo, frac) : lo + (hi - lo) * frac);
  }
  return out;
}

}  // namespace

AdmissibilityReport check_a0(const IntPolynomial& P, const IntPolynomial& Q, std::int64_t a0) {
  const Oriented o = orient_case1(P, Q);
  const PsiMap psi(o.p, o.q);
  const Real delta = to_real(o.profile.delta);
  const Real c = to_real(o.profile.c);
  const Real floor = psi.domain_floor();

  AdmissibilityReport rep;
  rep.a0 = a0;
  auto fail = [&](std::string why) {
    if (rep.reason.empty()) rep.reason = std::move(why);
    return rep;
  };
  if (a0 < 2) return fail("a0 must be at least 2");
  const Real A = Real(a0);
  const Real fa = ln(A);
  if (!(fa > floor) || !(A / 2 > floor) || !(A - fa > floor)) {
    return fail("a0 too small for the psi branch");
  }

  // Property III.
  Real min_slope = std::numeric_limits<Real>::max();
  for (const Real& t : grid(fa, std::max(Real(4) * A, fa * 2), 4 * kGridPoints)) {
    min_slope = std::min(min_slope, psi.derivative(t));
  }
  if (o.profile.delta == 1) min_slope = std::min(min_slope, c);
  rep.lambda0 = sqrt(min_slope) * (1 - Real(1e-12));
  if (!(rep.lambda0 > delta)) return fail("Property III: no lambda0 > delta");
  rep.eps0 = (rep.lambda0 - delta) / 2;
  const Real rho = rep.lambda0 - rep.eps0;
  rep.u = rho * (rho - 1) / (2 * rep.lambda0 * rep.eps0 - rep.eps0 * rep.eps0);
  for (const Real& t : grid(A / 2, Real(4) * A, kGridPoints)) {
    if (!(ln(psi(t)) < rho * ln(t))) return fail("Property III: f(psi(t)) bound fails");
  }
  if (!(psi(A - fa) - A - ln(psi(A)) >= rep.u * fa)) {
    return fail("Property III: separation margin below u f(a0)");
  }
  rep.property3 = true;

  // Property II: the left side minus the right side decreases in h (psi' > 1),
  // so the supremum of the h-range is the binding case; integer h are checked too.
  const Real h_factor = delta > 1 ? Real(1) / 2 : (2 * c - 2) / (3 * c);
  for (const Real& t : grid(A / 2, Real(4) * A, kGridPoints)) {
    const Real ft = ln(t);
    const Real h_sup = h_factor * ft;
    const Real base = psi(t);
    const Real target = ln(base);
    std::vector<Real> hs;
    for (std::int64_t h = 0; Real(h) < h_sup; ++h) hs.emplace_back(h);
    hs.push_back(h_sup);
    for (const Real& h : hs) {
      const Real arg = t + ft - h;
      if (!(arg > floor)) return fail("Property II: argument leaves the psi branch");
      const Real gap = psi(arg) - base - target + h;
      const bool ok = (h == h_sup) ? gap >= 0 : gap > 0;
      if (!ok) return fail("Property II: psi(t+f(t)-h) - psi(t) > f(psi(t)) - h fails");
    }
  }
  rep.property2 = true;

  // Property I: distinct values Q(s) near the relevant range must be at least
  // ceil(W) apart, W = f(psi(4 a0)), so r + Q(s) = x + Q(y) forces (x, y) = (r, s).
  const Real top = psi(Real(4) * A);
  const Real W = ln(top);
  const BigInt width = ceil_of(W);
  const BigInt lo = floor_of(A / 2 - W);
  const BigInt hi = ceil_of(top + W);
  std::vector<BigInt> values;
  const std::int64_t q_branch = psi.branch_threshold();
  for (std::int64_t s = 0;; ++s) {
    const BigInt v = o.q(BigInt(s));
    if (v > hi && s > q_branch) break;
    if (v >= lo && v <= hi) values.push_back(v);
  }
  std::sort(values.begin(), values.end());
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] - values[i - 1] < width) return fail("Property I: representation not unique");
  }
  rep.property1 = true;
  return rep;
}

std::int64_t find_admissible_a0(const IntPolynomial& P, const IntPolynomial& Q,
                                std::int64_t scan_limit) {
  orient_case1(P, Q);
  for (std::int64_t a0 = 1; a0 <= scan_limit; ++a0) {
    if (check_a0(P, Q, a0).admissible()) return a0;
  }
  throw Error(ErrorKind::NoAdmissibleA0,
              "no admissible a0 up to " + std::to_string(scan_limit));
}

// ---------------------------------------------------------------------------

RecursiveColoringState::RecursiveColoringState(IntPolynomial P, IntPolynomial Q, std::int64_t a0,
                                               std::uint64_t window)
    : p_(P), q_(Q), a0_(a0), window_(window) {
  Oriented o = orient_case1(P, Q);
  p_ = std::move(o.p);
  q_ = std::move(o.q);
  if (window_ < static_cast<std::uint64_t>(std::max<std::int64_t>(a0_, 0))) {
    throw Error(ErrorKind::WindowTooSmall, "window must be at least a0");
  }
  report_ = check_a0(p_, q_, a0_);
  if (!report_.admissible()) {
    throw Error(ErrorKind::InadmissibleA0, "a0 = " + std::to_string(a0_) + ": " + report_.reason);
  }
  branch_ = PsiMap(p_, q_).branch_threshold();
  materialize();
}

std::vector<BigInt> RecursiveColoringState::p_preimages_within(const BigInt& e,
                                                               const Real& width) const {
  std::vector<BigInt> out;
  auto consider = [&](std::int64_t j) {
    const BigInt pj = p_(BigInt(j));
    if (pj <= e && Real(BigInt(e - pj)) < width) out.push_back(BigInt(j));
  };
  for (std::int64_t j = 0; j <= branch_; ++j) consider(j);
  const PsiMap psi(p_, q_);
  if (Real(e) > psi.domain_floor()) {
    BigInt j = floor_of(psi.inverse_p(Real(e)));
    if (j < branch_ + 1) j = branch_ + 1;
    while (p_(j + 1) <= e) ++j;
    while (j > branch_ && p_(j) > e) --j;
    for (; j > branch_; --j) {
      const BigInt pj = p_(j);
      if (!(Real(BigInt(e - pj)) < width)) break;
      out.push_back(j);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

void RecursiveColoringState::materialize() {
  const PsiMap psi(p_, q_);
  const Real u64_top = Real(std::numeric_limits<std::uint64_t>::max());
  const Real stop = std::max(u64_top, Real(window_));

  Real a = Real(a0_);
  bool exact = true;  // a is an integer value reached through exact preimages
  BigInt a_int = a0_;
  while (true) {
    RecursiveLevel level;
    level.a = a;
    level.width = ln(a);
    // Block [a, a + f(a)) intersected with the integers.
    const BigInt first = ceil_of(a);
    const BigInt last = ceil_of(Real(a + level.width)) - 1;
    for (BigInt z = first; z <= last; ++z) level.set.push_back(z);
    if (!levels_.empty()) {
      const RecursiveLevel& prev = levels_.back();
      for (const BigInt& e : prev.set) {
        for (const BigInt& j : p_preimages_within(e, prev.width)) {
          level.set.push_back(e - p_(j) + q_(j));
        }
      }
      std::sort(level.set.begin(), level.set.end());
      level.set.erase(std::unique(level.set.begin(), level.set.end()), level.set.end());
      if (!(level.set.front() > prev.set.back())) {
        throw Error(ErrorKind::InadmissibleA0,
                    "separation inf A_{n+1} > sup A_n fails at level " +
                        std::to_string(levels_.size()));
      }
    }
    levels_.push_back(std::move(level));
    if (a > stop) break;

    // a_{n+1} = psi(a_n); exact when a_n = P(j) for an integer j.
    std::optional<BigInt> next_exact;
    if (exact) {
      BigInt j = floor_of(psi.inverse_p(a) + Real(0.5));
      if (p_(j) == a_int) next_exact = q_(j);
    }
    if (next_exact) {
      a_int = *next_exact;
      a = Real(a_int);
    } else {
      exact = false;
      a = psi(a);
    }
  }

  for (std::size_t n = 0; n < levels_.size(); ++n) {
    thresholds_.push_back(clamp_u64(ceil_of(levels_[n].a)));
    for (const BigInt& z : levels_[n].set) {
      if (const auto v = to_u64(z)) {
        members_.push_back(*v);
        member_level_.push_back(static_cast<std::uint32_t>(n));
      }
    }
  }
}

Color RecursiveColoringState::color(std::uint64_t z) const {
  const auto it = std::lower_bound(members_.begin(), members_.end(), z);
  if (it != members_.end() && *it == z) {
    const auto level = member_level_[static_cast<std::size_t>(it - members_.begin())];
    return level % 2 == 0 ? Color{2} : Color{1};
  }
  const auto t = std::upper_bound(thresholds_.begin(), thresholds_.end(), z);
  if (t == thresholds_.begin()) return 1;
  const auto n = static_cast<std::size_t>(t - thresholds_.begin()) - 1;
  return n % 2 == 0 ? Color{2} : Color{1};
}

Coloring recursive_log_coloring(const IntPolynomial& P, const IntPolynomial& Q,
                                std::optional<std::int64_t> a0, std::uint64_t window) {
  const std::int64_t chosen = a0 ? *a0 : find_admissible_a0(P, Q, 1'000'000);
  auto state = std::make_shared<RecursiveColoringState>(P, Q, chosen, window);
  Descriptor d{"recursive",
               {{"P", P.str()},
                {"Q", Q.str()},
                {"a0", std::to_string(chosen)},
                {"N", std::to_string(window)}}};
  return Coloring(std::move(state), 2, std::move(d));
}

Coloring recursive_from_descriptor(const Descriptor& d) {
  auto need = [&](std::string_view key) {
    auto v = d.get(key);
    if (!v) throw Error(ErrorKind::BadParams, "descriptor missing '" + std::string(key) + "'");
    return *v;
  };
  std::optional<std::int64_t> a0;
  if (auto v = d.get("a0")) a0 = std::stoll(*v);
  return recursive_log_coloring(IntPolynomial::parse(need("P")), IntPolynomial::parse(need("Q")),
                                a0, std::stoull(need("N")));
}

}  // namespace sumset
