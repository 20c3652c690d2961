#include "sumset/numeric.hpp"

#include "sumset/error.hpp"

#include <cctype>
#include <limits>

namespace sumset {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::EqualPolynomials: return "EqualPolynomials";
    case ErrorKind::NotCaseII: return "NotCaseII";
    case ErrorKind::BadPair: return "BadPair";
    case ErrorKind::BadParams: return "BadParams";
    case ErrorKind::WindowTooSmall: return "WindowTooSmall";
    case ErrorKind::InadmissibleA0: return "InadmissibleA0";
    case ErrorKind::NoAdmissibleA0: return "NoAdmissibleA0";
    case ErrorKind::EmptyPattern: return "EmptyPattern";
    case ErrorKind::NoConfiguration: return "NoConfiguration";
    case ErrorKind::EmptySet: return "EmptySet";
    case ErrorKind::WindowOverrun: return "WindowOverrun";
    case ErrorKind::DivisibilityError: return "DivisibilityError";
    case ErrorKind::NonPositiveElement: return "NonPositiveElement";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

namespace {

BigInt parse_integer(std::string_view text, std::size_t offset) {
  std::size_t i = 0;
  bool negative = false;
  if (i < text.size() && (text[i] == '-' || text[i] == '+')) {
    negative = text[i] == '-';
    ++i;
  }
  if (i == text.size()) throw ParseError(offset + i, "expected digits");
  BigInt value = 0;
  for (; i < text.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(text[i]))) {
      throw ParseError(offset + i, "unexpected character in integer");
    }
    value = value * 10 + (text[i] - '0');
  }
  return negative ? BigInt(-value) : value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text, 0));
  const BigInt num = parse_integer(text.substr(0, slash), 0);
  const BigInt den = parse_integer(text.substr(slash + 1), slash + 1);
  if (den == 0) throw ParseError(slash + 1, "zero denominator");
  return Rational(num, den);
}

std::string format_rational(const Rational& value) {
  const BigInt num = boost::multiprecision::numerator(value);
  const BigInt den = boost::multiprecision::denominator(value);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

BigInt floor_div(const BigInt& num, const BigInt& den) {
  BigInt q = num / den;
  if ((num % den != 0) && ((num < 0) != (den < 0))) --q;
  return q;
}

BigInt floor_of(const Rational& value) {
  return floor_div(boost::multiprecision::numerator(value),
                   boost::multiprecision::denominator(value));
}

BigInt ceil_of(const Rational& value) {
  return -floor_of(Rational(-value));
}

BigInt floor_of(const Real& value) {
  return static_cast<BigInt>(floor(value));
}

BigInt ceil_of(const Real& value) {
  return static_cast<BigInt>(ceil(value));
}

std::optional<std::uint64_t> to_u64(const BigInt& value) {
  if (value < 0 || value > std::numeric_limits<std::uint64_t>::max()) return std::nullopt;
  return static_cast<std::uint64_t>(value);
}

std::optional<Int128> to_i128(const BigInt& value) {
  static const BigInt kMax = (BigInt(1) << 126);
  if (value >= kMax || value <= -kMax) return std::nullopt;
  const bool negative = value < 0;
  const BigInt mag = negative ? BigInt(-value) : value;
  const auto lo = static_cast<std::uint64_t>(mag & std::numeric_limits<std::uint64_t>::max());
  const auto hi = static_cast<std::uint64_t>(mag >> 64);
  Int128 out = (static_cast<Int128>(hi) << 64) | static_cast<Int128>(lo);
  return negative ? -out : out;
}

std::uint64_t clamp_u64(const BigInt& value) {
  if (value <= 0) return 0;
  if (value >= std::numeric_limits<std::uint64_t>::max()) {
    return std::numeric_limits<std::uint64_t>::max();
  }
  return static_cast<std::uint64_t>(value);
}

BigInt isqrt(const BigInt& value) {
  if (value < 0) throw Error(ErrorKind::DomainError, "isqrt of negative value");
  return boost::multiprecision::sqrt(value);
}

}  // namespace sumset
