#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace sumset {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// 128-bit significand; the a_n level sequence grows doubly exponentially so
/// double precision loses the integer part after a handful of levels.
using Real = boost::multiprecision::number<
    boost::multiprecision::cpp_bin_float<128, boost::multiprecision::digit_base_2>,
    boost::multiprecision::et_off>;

using Int128 = __int128;

/// Parses `p`, `-p` or `p/q`; throws ParseError on malformed input or q == 0.
Rational parse_rational(std::string_view text);

/// Canonical `p/q` form, or `p` when the denominator is one.
std::string format_rational(const Rational& value);

BigInt floor_div(const BigInt& num, const BigInt& den);
BigInt ceil_of(const Rational& value);
BigInt floor_of(const Rational& value);
BigInt floor_of(const Real& value);
BigInt ceil_of(const Real& value);

std::optional<std::uint64_t> to_u64(const BigInt& value);
std::optional<Int128> to_i128(const BigInt& value);

/// Saturating conversion used for boundary tables over the uint64 domain.
std::uint64_t clamp_u64(const BigInt& value);

BigInt isqrt(const BigInt& value);

}  // namespace sumset
