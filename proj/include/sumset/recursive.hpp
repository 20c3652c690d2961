#pragma once

#include "sumset/coloring.hpp"
#include "sumset/poly.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace sumset {

/// Outcome of the three admissibility properties for a candidate a0.
struct AdmissibilityReport {
  std::int64_t a0 = 0;
  bool property1 = false;
  bool property2 = false;
  bool property3 = false;
  Real lambda0;
  Real eps0;
  Real u;
  std::string reason;  // first failing check, empty when admissible

  bool admissible() const { return property1 && property2 && property3; }
};

/// Checks Properties I-III for a0 with f = ln. The pair must be Case I with
/// deg Q > 1 (after orientation); otherwise InadmissibleA0 is thrown.
AdmissibilityReport check_a0(const IntPolynomial& P, const IntPolynomial& Q, std::int64_t a0);

/// Smallest a0 in [1, scan_limit] passing check_a0; NoAdmissibleA0 otherwise.
std::int64_t find_admissible_a0(const IntPolynomial& P, const IntPolynomial& Q,
                                std::int64_t scan_limit);

struct RecursiveLevel {
  Real a;                    // a_n
  Real width;                // f(a_n)
  std::vector<BigInt> set;   // A_n, ascending
};

/// Levels a_0..a_L and the sets A_0..A_L. Levels are materialized until a_L
/// exceeds both the requested window and the uint64 range, so the oracle is
/// total on the uint64 domain without any later mutation.
class RecursiveColoringState : public ColoringOracle {
 public:
  RecursiveColoringState(IntPolynomial P, IntPolynomial Q, std::int64_t a0, std::uint64_t window);

  Color color(std::uint64_t z) const override;

  const IntPolynomial& p() const { return p_; }
  const IntPolynomial& q() const { return q_; }
  std::int64_t a0() const { return a0_; }
  std::uint64_t window() const { return window_; }
  const std::vector<RecursiveLevel>& levels() const { return levels_; }
  const AdmissibilityReport& admissibility() const { return report_; }

  /// All j >= 0 with 0 <= e - P(j) < width, ascending.
  std::vector<BigInt> p_preimages_within(const BigInt& e, const Real& width) const;

 private:
  void materialize();

  IntPolynomial p_;
  IntPolynomial q_;
  std::int64_t a0_;
  std::uint64_t window_;
  std::int64_t branch_ = 0;
  AdmissibilityReport report_;
  std::vector<RecursiveLevel> levels_;
  std::vector<std::uint64_t> thresholds_;  // ceil(a_n) clamped to uint64
  std::vector<std::uint64_t> members_;     // union of A_n inside uint64, ascending
  std::vector<std::uint32_t> member_level_;
};

/// The Case I 2-coloring. When a0 is absent, find_admissible_a0 with scan
/// limit 10^6 chooses it. WindowTooSmall if window < a0.
Coloring recursive_log_coloring(const IntPolynomial& P, const IntPolynomial& Q,
                                std::optional<std::int64_t> a0, std::uint64_t window);

}  // namespace sumset
