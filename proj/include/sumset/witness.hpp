#pragma once

#include "sumset/coloring.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace sumset {

enum class WitnessVariant { StepI, CaseI, SituationI, SituationII };

std::string_view to_string(WitnessVariant v);
WitnessVariant parse_witness_variant(std::string_view name);

/// Parameters for the four closed-form witness families. Only the fields of
/// the selected variant are read.
struct WitnessParams {
  WitnessVariant variant = WitnessVariant::StepI;
  std::int64_t a = 1;
  std::int64_t b = 2;
  std::int64_t r = 1;
  std::int64_t d_tilde = 0;

  // StepI
  std::int64_t s = 0;
  std::int64_t t = 0;
  std::vector<std::int64_t> d;

  // CaseI (E), SituationI and SituationII share the values v_i.
  std::int64_t E = 0;
  std::vector<std::int64_t> v;
  /// Optional (d_i, k_i) pairs, one per v_i; when present they fix the
  /// relation E = (b/a) v_i - b d_i - 2 b^2 (b-a) k_i.
  std::vector<std::pair<std::int64_t, std::int64_t>> dk;

  // SituationI / SituationII
  std::int64_t j = 1;
  std::int64_t beta = 1;
  std::int64_t L0 = 2;
  std::vector<std::int64_t> offsets;  // SituationI: s_1..s_r in [1, L0-1]
  std::int64_t xi = 0;
  std::int64_t alpha = 0;

  /// Key-value form `kind=stepI;a=1;b=2;...` with lists comma separated and
  /// pairs as `d:k`.
  Descriptor descriptor() const;
  static WitnessParams from_descriptor(const Descriptor& d);
};

struct Witness {
  std::vector<std::int64_t> B;
  std::vector<std::int64_t> C;
};

/// Throws BadParams, DivisibilityError or NonPositiveElement.
Witness build_witness(const WitnessParams& p);

/// Right-hand sides of the two sumset identities, shifted by d_tilde.
std::pair<std::vector<std::int64_t>, std::vector<std::int64_t>> expected_sumsets(
    const WitnessParams& p);

/// Compares B + aC and B + bC (as sets) with expected_sumsets(p).
bool check_sumset_identity(const WitnessParams& p, const std::vector<std::int64_t>& B,
                           const std::vector<std::int64_t>& C);

}  // namespace sumset
