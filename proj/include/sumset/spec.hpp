#pragma once

#include "sumset/coloring.hpp"

#include <cstdint>
#include <string_view>

namespace sumset {

/// Defaults filled into short coloring specs.
struct SpecDefaults {
  std::uint64_t seed = 0;        // random kinds without an explicit seed
  std::uint64_t window = 0;      // recursive kinds without N=; 0 means window_cap()
};

/// Grammar `kind[:params][@file]`. Params are comma separated, positional
/// first, then `key=value`; rationals are written `p/q`.
///
///   power2:1,2            geo3:1,2,l=4,x=3,y=8/5     triple:1,2,3[,x=..,l=..]
///   case2:n^2,n^2+n       recursive:n^2,n^3[,a0=15][,N=10000000]
///   periodic:112[,palette=3]   random:2[,seed=7]     file@coloring.rl
///
/// Throws ParseError carrying the byte offset of the offending token.
Descriptor parse_coloring_spec(std::string_view spec, const SpecDefaults& defaults = {});

/// parse_coloring_spec followed by from_descriptor.
Coloring coloring_from_spec(std::string_view spec, const SpecDefaults& defaults = {});

}  // namespace sumset
