#include "sumset/poly.hpp"

#include "sumset/error.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <map>

namespace sumset {

namespace {

constexpr std::int64_t kMaxRootScan = 10'000'000;

void skip_spaces(std::string_view text, std::size_t& i) {
  while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
}

bool read_digits(std::string_view text, std::size_t& i, BigInt& out) {
  const std::size_t start = i;
  out = 0;
  while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
    out = out * 10 + (text[i] - '0');
    ++i;
  }
  return i > start;
}

}  // namespace

IntPolynomial::IntPolynomial(std::vector<BigInt> coeffs) : coeffs_(std::move(coeffs)) {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  if (coeffs_.size() < 2) {
    throw Error(ErrorKind::BadParams, "polynomial must have degree >= 1");
  }
  if (coeffs_.front() != 0) {
    throw Error(ErrorKind::BadParams, "polynomial must have zero constant term");
  }
  if (coeffs_.back() <= 0) {
    throw Error(ErrorKind::BadParams, "polynomial must have positive leading coefficient");
  }
  small_.reserve(coeffs_.size());
  for (const auto& c : coeffs_) {
    auto v = to_i128(c);
    if (!v) {
      small_.clear();
      break;
    }
    small_.push_back(*v);
  }
  real_.reserve(coeffs_.size());
  for (const auto& c : coeffs_) real_.emplace_back(c);
}

IntPolynomial IntPolynomial::parse(std::string_view text) {
  std::map<int, BigInt> terms;
  std::size_t i = 0;
  bool first = true;
  skip_spaces(text, i);
  if (i == text.size()) throw ParseError(i, "empty polynomial");
  while (i < text.size()) {
    int sign = 1;
    skip_spaces(text, i);
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
      sign = text[i] == '-' ? -1 : 1;
      ++i;
      skip_spaces(text, i);
    } else if (!first) {
      throw ParseError(i, "expected '+' or '-' between terms");
    }
    BigInt coef;
    const bool has_coef = read_digits(text, i, coef);
    if (!has_coef) coef = 1;
    skip_spaces(text, i);
    if (i < text.size() && text[i] == '*') {
      if (!has_coef) throw ParseError(i, "'*' without coefficient");
      ++i;
      skip_spaces(text, i);
    }
    int exponent = 0;
    if (i < text.size() && text[i] == 'n') {
      ++i;
      exponent = 1;
      skip_spaces(text, i);
      if (i < text.size() && text[i] == '^') {
        ++i;
        skip_spaces(text, i);
        BigInt e;
        const std::size_t at = i;
        if (!read_digits(text, i, e)) throw ParseError(i, "expected exponent");
        if (e < 1 || e > 64) throw ParseError(at, "exponent out of range [1, 64]");
        exponent = static_cast<int>(e);
      }
    } else if (!has_coef) {
      throw ParseError(i, "expected coefficient or 'n'");
    }
    terms[exponent] += sign * coef;
    first = false;
    skip_spaces(text, i);
  }
  const int degree = terms.empty() ? 0 : terms.rbegin()->first;
  std::vector<BigInt> coeffs(static_cast<std::size_t>(degree) + 1, BigInt(0));
  for (const auto& [e, c] : terms) coeffs[static_cast<std::size_t>(e)] = c;
  return IntPolynomial(std::move(coeffs));
}

std::string IntPolynomial::str() const {
  std::string out;
  bool first = true;
  for (int k = degree(); k >= 1; --k) {
    const BigInt& c = coeffs_[static_cast<std::size_t>(k)];
    if (c == 0) continue;
    const BigInt mag = c < 0 ? BigInt(-c) : c;
    if (first) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    if (mag != 1) out += mag.str();
    out += "n";
    if (k > 1) out += "^" + std::to_string(k);
    first = false;
  }
  return out;
}

BigInt IntPolynomial::operator()(const BigInt& n) const {
  BigInt acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * n + *it;
  return acc;
}

std::optional<Int128> IntPolynomial::eval_i128(Int128 n) const {
  if (small_.empty()) return std::nullopt;
  Int128 acc = 0;
  for (auto it = small_.rbegin(); it != small_.rend(); ++it) {
    Int128 prod;
    if (__builtin_mul_overflow(acc, n, &prod)) return std::nullopt;
    if (__builtin_add_overflow(prod, *it, &acc)) return std::nullopt;
  }
  return acc;
}

Real IntPolynomial::eval_real(const Real& t) const {
  Real acc = 0;
  for (auto it = real_.rbegin(); it != real_.rend(); ++it) acc = acc * t + *it;
  return acc;
}

Real IntPolynomial::derivative_real(const Real& t) const {
  Real acc = 0;
  for (std::size_t k = real_.size() - 1; k >= 1; --k) {
    acc = acc * t + real_[k] * static_cast<int>(k);
  }
  return acc;
}

BigInt eval(const IntPolynomial& p, const BigInt& n) { return p(n); }

std::vector<IntPolynomial> parse_polynomial_list(std::string_view text) {
  std::vector<IntPolynomial> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = text.find(',', start);
    const auto piece = text.substr(start, comma == std::string_view::npos ? text.npos : comma - start);
    try {
      out.push_back(IntPolynomial::parse(piece));
    } catch (const ParseError& e) {
      throw ParseError(start + e.position(), "bad polynomial '" + std::string(piece) + "'");
    }
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

// ---------------------------------------------------------------------------
// ZPoly

ZPoly ZPoly::from(const IntPolynomial& p) {
  ZPoly z{p.coefficients()};
  z.trim();
  return z;
}

ZPoly ZPoly::constant(const BigInt& value) {
  ZPoly z{{value}};
  z.trim();
  return z;
}

void ZPoly::trim() {
  while (!c.empty() && c.back() == 0) c.pop_back();
}

int ZPoly::lead_sign() const {
  if (c.empty()) return 0;
  return c.back() > 0 ? 1 : -1;
}

BigInt ZPoly::eval(const BigInt& n) const {
  BigInt acc = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * n + *it;
  return acc;
}

ZPoly ZPoly::shifted(const BigInt& shift) const {
  // Horner composition with (n + shift).
  std::vector<BigInt> out;
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    std::vector<BigInt> next(out.size() + 1, BigInt(0));
    for (std::size_t k = 0; k < out.size(); ++k) {
      next[k + 1] += out[k];
      next[k] += out[k] * shift;
    }
    next[0] += *it;
    out = std::move(next);
  }
  ZPoly z{std::move(out)};
  z.trim();
  return z;
}

ZPoly ZPoly::derivative() const {
  ZPoly z;
  for (std::size_t k = 1; k < c.size(); ++k) z.c.push_back(c[k] * static_cast<int>(k));
  z.trim();
  return z;
}

BigInt ZPoly::cauchy_bound() const {
  if (c.size() <= 1) return 1;
  const BigInt lead = abs(c.back());
  BigInt worst = 0;
  for (std::size_t k = 0; k + 1 < c.size(); ++k) worst = std::max(worst, BigInt(abs(c[k])));
  return 1 + (worst + lead - 1) / lead;
}

ZPoly operator-(const ZPoly& a, const ZPoly& b) {
  ZPoly z;
  z.c.assign(std::max(a.c.size(), b.c.size()), BigInt(0));
  for (std::size_t k = 0; k < a.c.size(); ++k) z.c[k] += a.c[k];
  for (std::size_t k = 0; k < b.c.size(); ++k) z.c[k] -= b.c[k];
  z.trim();
  return z;
}

ZPoly operator+(const ZPoly& a, const ZPoly& b) {
  ZPoly z;
  z.c.assign(std::max(a.c.size(), b.c.size()), BigInt(0));
  for (std::size_t k = 0; k < a.c.size(); ++k) z.c[k] += a.c[k];
  for (std::size_t k = 0; k < b.c.size(); ++k) z.c[k] += b.c[k];
  z.trim();
  return z;
}

std::int64_t eventually_from(const ZPoly& p, bool strict) {
  if (p.is_zero()) {
    if (strict) throw Error(ErrorKind::DomainError, "zero polynomial is never positive");
    return 1;
  }
  if (p.lead_sign() < 0) {
    throw Error(ErrorKind::DomainError, "polynomial is eventually negative");
  }
  const BigInt bound = p.cauchy_bound();
  if (bound > kMaxRootScan) {
    throw Error(ErrorKind::DomainError, "root bound too large to scan");
  }
  for (auto n = static_cast<std::int64_t>(bound); n >= 1; --n) {
    const BigInt v = p.eval(n);
    if (strict ? v <= 0 : v < 0) return n + 1;
  }
  return 1;
}

// ---------------------------------------------------------------------------
// psi

std::string_view to_string(GrowthCase growth) {
  return growth == GrowthCase::CaseI ? "GrowthCaseI" : "GrowthCaseII";
}

std::string_view to_string(BandPart part) {
  switch (part) {
    case BandPart::PartI: return "PartI";
    case BandPart::PartII: return "PartII";
    case BandPart::PartIII: return "PartIII";
  }
  return "?";
}

namespace {

// True when Q dominates P at infinity.
bool dominates(const IntPolynomial& Q, const IntPolynomial& P) {
  if (Q.degree() != P.degree()) return Q.degree() > P.degree();
  if (Q.leading() != P.leading()) return Q.leading() > P.leading();
  return (ZPoly::from(Q) - ZPoly::from(P)).lead_sign() > 0;
}

}  // namespace

std::pair<IntPolynomial, IntPolynomial> oriented_pair(const IntPolynomial& P,
                                                      const IntPolynomial& Q) {
  if (P == Q) throw Error(ErrorKind::EqualPolynomials, "P and Q must differ");
  if (dominates(Q, P)) return {P, Q};
  return {Q, P};
}

PsiProfile psi_profile(const IntPolynomial& P, const IntPolynomial& Q) {
  if (P == Q) throw Error(ErrorKind::EqualPolynomials, "P and Q must differ");
  PsiProfile out;
  out.swapped = !dominates(Q, P);
  const IntPolynomial& lo = out.swapped ? Q : P;
  const IntPolynomial& hi = out.swapped ? P : Q;
  out.delta = Rational(hi.degree(), lo.degree());
  out.c = Rational(hi.leading(), lo.leading());
  out.growth = (out.delta == 1 && out.c == 1) ? GrowthCase::CaseII : GrowthCase::CaseI;
  return out;
}

std::int64_t branch_threshold(const IntPolynomial& P, const IntPolynomial& Q) {
  const ZPoly zp = ZPoly::from(P);
  const ZPoly zq = ZPoly::from(Q);
  struct Condition {
    ZPoly poly;
    bool strict;
  };
  std::vector<Condition> conditions{
      {zp - ZPoly::constant(1), false},
      {zp.derivative() - ZPoly::constant(1), false},
  };
  if (!(P == Q)) {
    conditions.push_back({zq - zp, true});
    conditions.push_back({zq.derivative() - zp.derivative(), true});
  }
  std::int64_t a_star = 0;
  for (const auto& [poly, strict] : conditions) {
    if (poly.is_zero()) {
      if (strict) throw Error(ErrorKind::DomainError, "psi branch condition never holds");
      continue;
    }
    if (poly.lead_sign() < 0) {
      throw Error(ErrorKind::DomainError, "psi branch condition fails at infinity");
    }
    const BigInt bound = poly.cauchy_bound();
    if (bound > kMaxRootScan / 2) {
      throw Error(ErrorKind::DomainError, "root bound too large to scan");
    }
    // Evaluate 2^d * poly(g / 2) exactly on the half-integer grid.
    const int d = poly.degree();
    for (auto g = 2 * static_cast<std::int64_t>(bound); g >= 0; --g) {
      BigInt acc = 0;
      for (int k = d; k >= 0; --k) {
        acc = acc * g + poly.c[static_cast<std::size_t>(k)] * (BigInt(1) << (d - k));
      }
      if (strict ? acc <= 0 : acc < 0) {
        a_star = std::max<std::int64_t>(a_star, (g + 1) / 2);
        break;
      }
    }
  }
  return a_star;
}

PsiMap::PsiMap(IntPolynomial P, IntPolynomial Q)
    : p_(std::move(P)), q_(std::move(Q)), a_star_(sumset::branch_threshold(p_, q_)) {
  floor_ = p_.eval_real(Real(a_star_));
}

void PsiMap::require_domain(const Real& t) const {
  if (!(t > floor_)) {
    throw Error(ErrorKind::DomainError,
                "psi is defined only for t > P(a*) = " + floor_.str(20));
  }
}

Real PsiMap::inverse_p(const Real& t) const {
  require_domain(t);
  Real lo = Real(a_star_);
  Real hi = lo + 1;
  while (p_.eval_real(hi) < t) {
    lo = hi;
    hi *= 2;
  }
  const Real eps = std::numeric_limits<Real>::epsilon();
  Real s = (lo + hi) / 2;
  for (int it = 0; it < 512; ++it) {
    const Real v = p_.eval_real(s) - t;
    if (v == 0) return s;
    if (v > 0) {
      hi = s;
    } else {
      lo = s;
    }
    Real next = s - v / p_.derivative_real(s);
    if (!(next > lo && next < hi)) next = (lo + hi) / 2;
    const Real step = abs(next - s);
    s = next;
    if (step <= abs(s) * eps * 4) break;
  }
  return s;
}

Real PsiMap::operator()(const Real& t) const { return q_.eval_real(inverse_p(t)); }

Real PsiMap::derivative(const Real& t) const {
  const Real s = inverse_p(t);
  return q_.derivative_real(s) / p_.derivative_real(s);
}

Real psi_eval(const IntPolynomial& P, const IntPolynomial& Q, const Real& t) {
  return PsiMap(P, Q)(t);
}

// ---------------------------------------------------------------------------
// Case II band offset

BandOffset band_offset(const IntPolynomial& P_in, const IntPolynomial& Q_in) {
  const PsiProfile profile = psi_profile(P_in, Q_in);
  if (profile.growth != GrowthCase::CaseII) {
    throw Error(ErrorKind::NotCaseII, "band_offset requires deg P = deg Q and equal leads");
  }
  const auto [P, Q] = oriented_pair(P_in, Q_in);
  const ZPoly zp = ZPoly::from(P);
  const ZPoly zq = ZPoly::from(Q);

  constexpr std::int64_t kMaxOffset = 1'000'000;
  BandOffset out;
  ZPoly below;  // Q(n) - P(n + l - 1)
  ZPoly above;  // P(n + l) - Q(n)
  std::int64_t l = 1;
  for (; l <= kMaxOffset; ++l) {
    above = zp.shifted(l) - zq;
    if (above.lead_sign() >= 0) break;
  }
  if (l > kMaxOffset) throw Error(ErrorKind::DomainError, "band offset exceeds search range");
  below = zq - zp.shifted(l - 1);

  if (above.is_zero()) {
    // Q(n) = P(n + l): both l and l + 1 bracket Q; the l + 1 band has
    // Q(n) - P(n + l) identically zero, which is the Part III situation.
    ++l;
    below = zq - zp.shifted(l - 1);
    above = zp.shifted(l) - zq;
    out.part = BandPart::PartIII;
    out.k2 = 2 * below.constant_term();
  } else if (above.is_constant()) {
    out.part = BandPart::PartII;
    out.k1 = 2 * above.constant_term();
  } else if (below.is_constant()) {
    out.part = BandPart::PartIII;
    out.k2 = 2 * below.constant_term();
  } else {
    out.part = BandPart::PartI;
  }
  out.l = l;

  std::int64_t n0 = 1;
  n0 = std::max(n0, eventually_from(zp - ZPoly::constant(2), false));  // P(n) > 1
  n0 = std::max(n0, eventually_from(below, false));
  n0 = std::max(n0, eventually_from(above, false));
  n0 = std::max(n0, eventually_from(zp.shifted(1) - zp, true));
  n0 = std::max(n0, eventually_from(zq.shifted(1) - zq, true));
  out.n0 = n0;

  for (std::int64_t n = n0; n <= n0 + 1000; ++n) {
    const BigInt q = Q(n);
    if (!(P(BigInt(n + l - 1)) <= q && q <= P(BigInt(n + l))) || !(P(BigInt(n)) < P(BigInt(n + 1))) ||
        !(Q(BigInt(n)) < Q(BigInt(n + 1)))) {
      throw Error(ErrorKind::DomainError, "band inequality failed during verification");
    }
  }
  return out;
}

}  // namespace sumset
