#include "sumset/witness.hpp"

#include "sumset/error.hpp"
#include "sumset/numeric.hpp"

#include <algorithm>
#include <set>

namespace sumset {

namespace {

using Set = std::set<BigInt>;

std::int64_t narrow(const BigInt& x) {
  const auto v = to_i128(x);
  if (!v || *v > INT64_MAX || *v < INT64_MIN) {
    throw Error(ErrorKind::DomainError, "witness element exceeds the 64-bit range");
  }
  return static_cast<std::int64_t>(*v);
}

std::vector<std::int64_t> finish(const Set& s) {
  std::vector<std::int64_t> out;
  for (const BigInt& x : s) {
    if (x < 1) throw Error(ErrorKind::NonPositiveElement, "witness element " + x.str() + " < 1");
    out.push_back(narrow(x));
  }
  return out;
}

std::vector<std::int64_t> to_vector(const Set& s) {
  std::vector<std::int64_t> out;
  for (const BigInt& x : s) out.push_back(narrow(x));
  return out;
}

void require(bool ok, ErrorKind kind, const std::string& what) {
  if (!ok) throw Error(kind, what);
}

bool divides(const BigInt& d, const BigInt& x) { return d != 0 && x % d == 0; }

void validate(const WitnessParams& p) {
  require(0 < p.a && p.a < p.b, ErrorKind::BadParams, "witness needs 0 < a < b");
  require(p.r >= 1, ErrorKind::BadParams, "witness needs r >= 1");
  require(p.d_tilde >= 0, ErrorKind::BadParams, "witness needs d_tilde >= 0");
  const BigInt a = p.a;
  const BigInt b = p.b;
  auto check_values = [&] {
    require(!p.v.empty(), ErrorKind::BadParams, "at least one value v_i is required");
    for (std::int64_t v : p.v) require(divides(a, v), ErrorKind::DivisibilityError, "a must divide every v_i");
  };
  switch (p.variant) {
    case WitnessVariant::StepI:
      require(!p.d.empty(), ErrorKind::BadParams, "at least one index d_i is required");
      require(p.t >= 1, ErrorKind::BadParams, "StepI needs t >= 1");
      require(divides(a, p.t), ErrorKind::DivisibilityError, "StepI needs a | t");
      break;
    case WitnessVariant::CaseI:
      check_values();
      require(divides(b - a, p.E), ErrorKind::DivisibilityError, "CaseI needs (b-a) | E");
      require(divides(b * (b - a), p.E), ErrorKind::DivisibilityError, "CaseI needs b(b-a) | E");
      if (!p.dk.empty()) {
        require(p.dk.size() == p.v.size(), ErrorKind::BadParams, "one (d_i, k_i) pair per v_i");
        for (std::size_t i = 0; i < p.v.size(); ++i) {
          const BigInt rhs = b * BigInt(p.v[i]) / a - b * BigInt(p.dk[i].first) -
                             2 * b * b * (b - a) * BigInt(p.dk[i].second);
          require(rhs == p.E, ErrorKind::BadParams,
                  "E must equal (b/a) v_i - b d_i - 2 b^2 (b-a) k_i");
        }
      }
      break;
    case WitnessVariant::SituationI: {
      check_values();
      require(p.L0 >= 2 && p.beta >= 1 && p.j >= 1, ErrorKind::BadParams,
              "SituationI needs L0 >= 2, beta >= 1, j >= 1");
      require(static_cast<std::int64_t>(p.offsets.size()) == p.r, ErrorKind::BadParams,
              "SituationI needs r offsets");
      std::set<std::int64_t> seen;
      for (std::int64_t s : p.offsets) {
        require(s >= 1 && s <= p.L0 - 1, ErrorKind::BadParams, "offsets must lie in [1, L0-1]");
        require(seen.insert(s).second, ErrorKind::BadParams, "offsets must be distinct");
      }
      break;
    }
    case WitnessVariant::SituationII:
      check_values();
      require(p.L0 >= 1 && p.beta >= 1, ErrorKind::BadParams, "SituationII needs L0, beta >= 1");
      require(divides(b - a, BigInt(p.xi) - p.alpha), ErrorKind::DivisibilityError,
              "SituationII needs (b-a) | (xi - alpha)");
      break;
  }
}

}  // namespace

std::string_view to_string(WitnessVariant v) {
  switch (v) {
    case WitnessVariant::StepI: return "stepI";
    case WitnessVariant::CaseI: return "caseI";
    case WitnessVariant::SituationI: return "situationI";
    case WitnessVariant::SituationII: return "situationII";
  }
  return "?";
}

WitnessVariant parse_witness_variant(std::string_view name) {
  for (auto v : {WitnessVariant::StepI, WitnessVariant::CaseI, WitnessVariant::SituationI,
                 WitnessVariant::SituationII}) {
    std::string a(to_string(v));
    std::string b(name);
    std::transform(a.begin(), a.end(), a.begin(), ::tolower);
    std::transform(b.begin(), b.end(), b.begin(), ::tolower);
    if (a == b) return v;
  }
  throw Error(ErrorKind::BadParams, "unknown witness variant '" + std::string(name) + "'");
}

Witness build_witness(const WitnessParams& p) {
  validate(p);
  const BigInt a = p.a, b = p.b, r = p.r, dt = p.d_tilde;
  Set B, C;
  switch (p.variant) {
    case WitnessVariant::StepI: {
      const BigInt s = p.s, t = p.t;
      for (BigInt j = 0; j < r; ++j) B.insert(dt + a * (s + (r - 1) * t + b) + j * (b - a) * t);
      for (std::int64_t d : p.d) C.insert(BigInt(d) - s - (r - 1) * t - a);
      break;
    }
    case WitnessVariant::CaseI: {
      const BigInt E = p.E;
      for (BigInt j = 1; j <= r; ++j) {
        B.insert(dt + a * a * b * (r + 1) + a * E / (b - a) + j * a * b * (b - a));
      }
      for (std::int64_t v : p.v) C.insert(BigInt(v) / a - a * b * (r + 1) - E / (b - a));
      break;
    }
    case WitnessVariant::SituationI: {
      const BigInt lead = ((BigInt(p.j) - 1) * p.beta + 1) * p.L0;
      for (std::int64_t st : p.offsets) {
        B.insert(dt + lead * a * a * b + (BigInt(p.L0) - st) * a * b * (b - a));
      }
      for (std::int64_t v : p.v) C.insert(BigInt(v) / a - lead * a * b);
      break;
    }
    case WitnessVariant::SituationII: {
      const BigInt diff = BigInt(p.xi) - p.alpha;
      for (BigInt j = 0; j < r; ++j) {
        B.insert(dt + a * diff / (b - a) - p.alpha - j * a * b * (b - a) * p.L0 * p.beta);
      }
      for (std::int64_t v : p.v) C.insert(BigInt(v) / a - diff / (b - a));
      break;
    }
  }
  return {finish(B), finish(C)};
}

std::pair<std::vector<std::int64_t>, std::vector<std::int64_t>> expected_sumsets(
    const WitnessParams& p) {
  validate(p);
  const BigInt a = p.a, b = p.b, r = p.r, dt = p.d_tilde;
  Set left, right;  // B + aC and B + bC
  switch (p.variant) {
    case WitnessVariant::StepI:
      for (std::int64_t d : p.d) {
        for (BigInt j = 0; j < r; ++j) {
          left.insert(dt + a * d + a * (b - a) + j * (b - a) * p.t);
          right.insert(dt + b * d - (p.s + j * p.t) * (b - a));
        }
      }
      break;
    case WitnessVariant::CaseI:
      for (std::size_t i = 0; i < p.v.size(); ++i) {
        for (BigInt j = 1; j <= r; ++j) {
          left.insert(dt + p.v[i] + j * a * b * (b - a));
          if (!p.dk.empty()) {
            const auto [d, k] = p.dk[i];
            right.insert(dt + b * d + (2 * b * k - j * a) * b * (b - a));
          } else {
            right.insert(dt + b * BigInt(p.v[i]) / a - p.E - j * a * b * (b - a));
          }
        }
      }
      break;
    case WitnessVariant::SituationI:
      for (std::int64_t v : p.v) {
        for (std::int64_t st : p.offsets) {
          left.insert(dt + v + (BigInt(p.L0) - st) * a * b * (b - a));
          right.insert(dt + b * BigInt(v) / a -
                       ((BigInt(p.j) - 1) * p.beta * p.L0 + st) * a * b * (b - a));
        }
      }
      break;
    case WitnessVariant::SituationII:
      for (std::int64_t v : p.v) {
        for (BigInt j = 0; j < r; ++j) {
          left.insert(dt + v - p.alpha - j * a * b * (b - a) * p.L0 * p.beta);
          right.insert(dt + b * BigInt(v) / a - p.xi - j * a * b * (b - a) * p.beta * p.L0);
        }
      }
      break;
  }
  return {to_vector(left), to_vector(right)};
}

bool check_sumset_identity(const WitnessParams& p, const std::vector<std::int64_t>& B,
                           const std::vector<std::int64_t>& C) {
  const auto [left, right] = expected_sumsets(p);
  Set got_a, got_b;
  for (std::int64_t h : B) {
    for (std::int64_t k : C) {
      got_a.insert(BigInt(h) + BigInt(p.a) * k);
      got_b.insert(BigInt(h) + BigInt(p.b) * k);
    }
  }
  return to_vector(got_a) == left && to_vector(got_b) == right;
}

// ---------------------------------------------------------------------------
// Descriptor form

namespace {

std::string join(const std::vector<std::int64_t>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? "," : "") + std::to_string(xs[i]);
  return out;
}

std::vector<std::int64_t> split_ints(const std::string& text) {
  std::vector<std::int64_t> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const auto end = std::min(text.find(',', pos), text.size());
    std::size_t used = 0;
    const std::string item = text.substr(pos, end - pos);
    std::int64_t value = 0;
    try {
      value = std::stoll(item, &used);
    } catch (const std::exception&) {
      throw ParseError(pos, "expected an integer");
    }
    if (used != item.size()) throw ParseError(pos + used, "expected an integer");
    out.push_back(value);
    pos = end + 1;
  }
  return out;
}

std::int64_t to_int(const std::string& text) {
  const auto xs = split_ints(text);
  if (xs.size() != 1) throw ParseError(0, "expected a single integer");
  return xs.front();
}

}  // namespace

Descriptor WitnessParams::descriptor() const {
  Descriptor d{std::string(to_string(variant)),
               {{"a", std::to_string(a)},
                {"b", std::to_string(b)},
                {"r", std::to_string(r)},
                {"dt", std::to_string(d_tilde)}}};
  auto put = [&](const char* key, const std::string& value) { d.params.emplace_back(key, value); };
  switch (variant) {
    case WitnessVariant::StepI:
      put("s", std::to_string(s));
      put("t", std::to_string(t));
      put("d", join(this->d));
      break;
    case WitnessVariant::CaseI:
      put("E", std::to_string(E));
      put("v", join(v));
      if (!dk.empty()) {
        std::string text;
        for (std::size_t i = 0; i < dk.size(); ++i) {
          text += (i ? "," : "") + std::to_string(dk[i].first) + ":" + std::to_string(dk[i].second);
        }
        put("dk", text);
      }
      break;
    case WitnessVariant::SituationI:
      put("j", std::to_string(j));
      put("beta", std::to_string(beta));
      put("L0", std::to_string(L0));
      put("offsets", join(offsets));
      put("v", join(v));
      break;
    case WitnessVariant::SituationII:
      put("xi", std::to_string(xi));
      put("alpha", std::to_string(alpha));
      put("beta", std::to_string(beta));
      put("L0", std::to_string(L0));
      put("v", join(v));
      break;
  }
  return d;
}

WitnessParams WitnessParams::from_descriptor(const Descriptor& d) {
  WitnessParams p;
  p.variant = parse_witness_variant(d.kind);
  for (const auto& [key, value] : d.params) {
    if (key == "a") p.a = to_int(value);
    else if (key == "b") p.b = to_int(value);
    else if (key == "r") p.r = to_int(value);
    else if (key == "dt") p.d_tilde = to_int(value);
    else if (key == "s") p.s = to_int(value);
    else if (key == "t") p.t = to_int(value);
    else if (key == "d") p.d = split_ints(value);
    else if (key == "E") p.E = to_int(value);
    else if (key == "v") p.v = split_ints(value);
    else if (key == "j") p.j = to_int(value);
    else if (key == "beta") p.beta = to_int(value);
    else if (key == "L0") p.L0 = to_int(value);
    else if (key == "offsets") p.offsets = split_ints(value);
    else if (key == "xi") p.xi = to_int(value);
    else if (key == "alpha") p.alpha = to_int(value);
    else if (key == "dk") {
      p.dk.clear();
      std::size_t pos = 0;
      while (pos < value.size()) {
        const auto end = std::min(value.find(',', pos), value.size());
        const std::string item = value.substr(pos, end - pos);
        const auto colon = item.find(':');
        if (colon == std::string::npos) throw ParseError(pos, "expected d:k");
        p.dk.emplace_back(to_int(item.substr(0, colon)), to_int(item.substr(colon + 1)));
        pos = end + 1;
      }
    } else {
      throw Error(ErrorKind::BadParams, "unknown witness key '" + key + "'");
    }
  }
  return p;
}

}  // namespace sumset
