#pragma once

#include "sumset/numeric.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace sumset {

/// Integer polynomial with zero constant term, degree >= 1 and positive
/// leading coefficient. Coefficient k multiplies n^k.
class IntPolynomial {
 public:
  explicit IntPolynomial(std::vector<BigInt> coeffs);

  /// Grammar: `c_d n^d + ... + c_1 n`, integer coefficients, optional `*`,
  /// like terms merged. Example: `n^3 - n`, `2n^2+n`.
  static IntPolynomial parse(std::string_view text);

  /// Canonical form accepted by parse(); parse(p.str()) == p.
  std::string str() const;

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const BigInt& leading() const { return coeffs_.back(); }
  const std::vector<BigInt>& coefficients() const { return coeffs_; }

  BigInt operator()(const BigInt& n) const;

  /// Exact evaluation in 128-bit arithmetic; nullopt when any intermediate
  /// overflows.
  std::optional<Int128> eval_i128(Int128 n) const;

  Real eval_real(const Real& t) const;
  Real derivative_real(const Real& t) const;

  friend bool operator==(const IntPolynomial& a, const IntPolynomial& b) {
    return a.coeffs_ == b.coeffs_;
  }

 private:
  std::vector<BigInt> coeffs_;
  std::vector<Int128> small_;  // empty when a coefficient does not fit
  std::vector<Real> real_;
};

BigInt eval(const IntPolynomial& p, const BigInt& n);

/// Parses a comma separated list of polynomials (`n,2n,3n`).
std::vector<IntPolynomial> parse_polynomial_list(std::string_view text);

/// Unrestricted integer polynomial used for differences such as
/// Q(n) - P(n+l-1). Coefficients are trimmed; the zero polynomial is empty.
struct ZPoly {
  std::vector<BigInt> c;

  static ZPoly from(const IntPolynomial& p);
  static ZPoly constant(const BigInt& value);

  void trim();
  bool is_zero() const { return c.empty(); }
  bool is_constant() const { return c.size() <= 1; }
  int degree() const { return static_cast<int>(c.size()) - 1; }
  int lead_sign() const;
  BigInt constant_term() const { return c.empty() ? BigInt(0) : c.front(); }

  BigInt eval(const BigInt& n) const;
  /// p(n + shift).
  ZPoly shifted(const BigInt& shift) const;
  ZPoly derivative() const;
  /// An integer R with every real root of a nonzero polynomial below R.
  BigInt cauchy_bound() const;

  friend ZPoly operator-(const ZPoly& a, const ZPoly& b);
  friend ZPoly operator+(const ZPoly& a, const ZPoly& b);
};

/// Smallest integer n0 >= 1 such that p(n) > 0 (strict) or p(n) >= 0 holds
/// for every integer n >= n0. Throws DomainError if the polynomial is
/// eventually negative.
std::int64_t eventually_from(const ZPoly& p, bool strict);

enum class GrowthCase { CaseI, CaseII };

std::string_view to_string(GrowthCase growth);

/// Growth comparison of psi = Q o P^{-1}. The pair is oriented so that the
/// second polynomial dominates; `swapped` records that the caller's (P, Q)
/// were exchanged to reach that orientation.
struct PsiProfile {
  Rational delta;
  Rational c;
  GrowthCase growth;
  bool swapped = false;
};

PsiProfile psi_profile(const IntPolynomial& P, const IntPolynomial& Q);

/// Returns (P, Q) in the orientation psi_profile uses.
std::pair<IntPolynomial, IntPolynomial> oriented_pair(const IntPolynomial& P,
                                                      const IntPolynomial& Q);

/// psi(t) = Q(P^{-1}(t)) on the branch t > P(a*), where a* is the smallest
/// integer beyond which P >= 1, P' >= 1 and (for P != Q) Q > P, Q' > P'.
class PsiMap {
 public:
  PsiMap(IntPolynomial P, IntPolynomial Q);

  const IntPolynomial& p() const { return p_; }
  const IntPolynomial& q() const { return q_; }
  std::int64_t branch_threshold() const { return a_star_; }
  /// P(a*); psi is defined strictly above it.
  const Real& domain_floor() const { return floor_; }

  Real inverse_p(const Real& t) const;
  Real operator()(const Real& t) const;
  /// psi'(t) = Q'(s) / P'(s) with s = P^{-1}(t).
  Real derivative(const Real& t) const;

 private:
  void require_domain(const Real& t) const;

  IntPolynomial p_;
  IntPolynomial q_;
  std::int64_t a_star_ = 0;
  Real floor_;
};

/// Smallest integer a >= 0 such that the psi branch conditions hold for all
/// real t > a (checked on the half-integer grid up to the Cauchy root bound).
std::int64_t branch_threshold(const IntPolynomial& P, const IntPolynomial& Q);

Real psi_eval(const IntPolynomial& P, const IntPolynomial& Q, const Real& t);

enum class BandPart { PartI, PartII, PartIII };

std::string_view to_string(BandPart part);

/// Equal-degree, equal-lead pair: P(n+l-1) <= Q(n) <= P(n+l) for n >= N0.
struct BandOffset {
  std::int64_t l = 1;
  std::int64_t n0 = 1;
  BandPart part = BandPart::PartI;
  std::optional<BigInt> k1;  // PartII: 2 * (P(n+l) - Q(n))
  std::optional<BigInt> k2;  // PartIII: 2 * (Q(n) - P(n+l-1))
};

BandOffset band_offset(const IntPolynomial& P, const IntPolynomial& Q);

}  // namespace sumset
