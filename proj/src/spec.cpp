#include "sumset/spec.hpp"

#include "sumset/error.hpp"

#include <algorithm>
#include <cctype>

namespace sumset {

namespace {

struct Item {
  std::size_t pos;
  std::string key;  // empty for positional items
  std::string value;
};

struct Parsed {
  std::string kind;
  std::vector<Item> positional;
  std::vector<Item> named;
};

Parsed split(std::string_view spec, std::size_t params_begin, std::size_t params_end) {
  Parsed out;
  std::size_t pos = params_begin;
  while (pos < params_end) {
    const std::size_t end = std::min(spec.find(',', pos), params_end);
    const std::string_view item = spec.substr(pos, end - pos);
    if (item.empty()) throw ParseError(pos, "empty parameter");
    const auto eq = item.find('=');
    if (eq == std::string_view::npos) {
      if (!out.named.empty()) throw ParseError(pos, "positional parameter after key=value");
      out.positional.push_back({pos, "", std::string(item)});
    } else {
      if (eq == 0) throw ParseError(pos, "missing key before '='");
      out.named.push_back({pos, std::string(item.substr(0, eq)), std::string(item.substr(eq + 1))});
    }
    pos = end + 1;
  }
  return out;
}

std::string check_int(const Item& item) {
  std::size_t i = 0;
  const std::string& v = item.value;
  if (i < v.size() && (v[i] == '-' || v[i] == '+')) ++i;
  if (i == v.size()) throw ParseError(item.pos, "expected an integer");
  for (; i < v.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(v[i]))) throw ParseError(item.pos + i, "expected an integer");
  }
  return v;
}

std::string check_rational(const Item& item) {
  try {
    return format_rational(parse_rational(item.value));
  } catch (const ParseError& e) {
    throw ParseError(item.pos + e.position(), "expected a rational p/q");
  }
}

std::string check_poly(const Item& item) {
  try {
    return IntPolynomial::parse(item.value).str();
  } catch (const ParseError& e) {
    throw ParseError(item.pos + e.position(), "malformed polynomial");
  }
}

void expect_positional(const Parsed& p, std::size_t count, std::size_t at) {
  if (p.positional.size() != count) {
    throw ParseError(at, p.kind + " expects " + std::to_string(count) + " positional parameters");
  }
}

const Item* find(const Parsed& p, std::string_view key) {
  for (const auto& item : p.named) {
    if (item.key == key) return &item;
  }
  return nullptr;
}

void allow_only(const Parsed& p, std::initializer_list<std::string_view> keys) {
  for (const auto& item : p.named) {
    if (std::find(keys.begin(), keys.end(), item.key) == keys.end()) {
      throw ParseError(item.pos, "unknown key '" + item.key + "' for " + p.kind);
    }
  }
}

}  // namespace

Descriptor parse_coloring_spec(std::string_view spec, const SpecDefaults& defaults) {
  std::size_t i = 0;
  while (i < spec.size() && (std::isalnum(static_cast<unsigned char>(spec[i])) || spec[i] == '_')) ++i;
  if (i == 0) throw ParseError(0, "expected a coloring kind");
  std::string kind(spec.substr(0, i));
  std::transform(kind.begin(), kind.end(), kind.begin(), ::tolower);

  std::size_t params_begin = i;
  std::size_t params_end = i;
  std::optional<std::string> file;
  if (i < spec.size() && spec[i] == ':') {
    params_begin = i + 1;
    params_end = std::min(spec.find('@', params_begin), spec.size());
  } else if (i < spec.size() && spec[i] != '@') {
    throw ParseError(i, "expected ':' or '@' after the kind");
  }
  if (params_end < spec.size()) {
    if (spec[params_end] != '@') throw ParseError(params_end, "unexpected character");
    file = std::string(spec.substr(params_end + 1));
    if (file->empty()) throw ParseError(params_end + 1, "missing file name after '@'");
  }

  Parsed p = split(spec, params_begin, params_end);
  p.kind = kind;
  const std::size_t at = params_begin;
  if (file && kind != "file") throw ParseError(params_end, "only the file kind takes '@path'");

  Descriptor d;
  d.kind = kind;
  auto put = [&](const std::string& key, const std::string& value) { d.params.emplace_back(key, value); };

  if (kind == "power2") {
    expect_positional(p, 2, at);
    allow_only(p, {});
    put("a", check_int(p.positional[0]));
    put("b", check_int(p.positional[1]));
  } else if (kind == "geo3") {
    expect_positional(p, 2, at);
    allow_only(p, {"l", "x", "y"});
    put("a", check_int(p.positional[0]));
    put("b", check_int(p.positional[1]));
    if (!p.named.empty()) {
      for (const char* key : {"l", "x", "y"}) {
        const Item* item = find(p, key);
        if (!item) throw ParseError(at, "geo3 needs all of l, x, y or none");
        put(key, check_rational(*item));
      }
    }
  } else if (kind == "triple") {
    expect_positional(p, 3, at);
    allow_only(p, {"x", "l"});
    put("a", check_int(p.positional[0]));
    put("b", check_int(p.positional[1]));
    put("c", check_int(p.positional[2]));
    if (!p.named.empty()) {
      for (const char* key : {"x", "l"}) {
        const Item* item = find(p, key);
        if (!item) throw ParseError(at, "triple needs both x and l or neither");
        put(key, check_rational(*item));
      }
    }
  } else if (kind == "case2") {
    expect_positional(p, 2, at);
    allow_only(p, {});
    put("P", check_poly(p.positional[0]));
    put("Q", check_poly(p.positional[1]));
  } else if (kind == "recursive") {
    expect_positional(p, 2, at);
    allow_only(p, {"a0", "N"});
    put("P", check_poly(p.positional[0]));
    put("Q", check_poly(p.positional[1]));
    if (const Item* a0 = find(p, "a0")) put("a0", check_int(*a0));
    if (const Item* n = find(p, "N")) {
      put("N", check_int(*n));
    } else {
      put("N", std::to_string(defaults.window ? defaults.window : window_cap()));
    }
  } else if (kind == "periodic") {
    expect_positional(p, 1, at);
    allow_only(p, {"palette"});
    const Item& pat = p.positional[0];
    std::vector<Color> colors;
    try {
      colors = parse_color_digits(pat.value);
    } catch (const ParseError& e) {
      throw ParseError(pat.pos + e.position(), "pattern digits must be 1-9");
    }
    int palette = 2;
    for (Color c : colors) palette = std::max(palette, static_cast<int>(c));
    if (const Item* k = find(p, "palette")) palette = std::stoi(check_int(*k));
    put("palette", std::to_string(palette));
    put("pattern", pat.value);
  } else if (kind == "random") {
    if (p.positional.size() > 1) throw ParseError(at, "random takes at most one positional parameter");
    allow_only(p, {"seed", "palette"});
    std::string palette = "2";
    if (!p.positional.empty()) palette = check_int(p.positional[0]);
    if (const Item* k = find(p, "palette")) palette = check_int(*k);
    std::string seed = std::to_string(defaults.seed);
    if (const Item* s = find(p, "seed")) seed = check_int(*s);
    put("palette", palette);
    put("seed", seed);
  } else if (kind == "file") {
    if (!file) throw ParseError(i, "file kind needs '@path'");
    if (!p.positional.empty() || !p.named.empty()) throw ParseError(at, "file takes no parameters");
    put("path", *file);
  } else {
    throw ParseError(0, "unknown coloring kind '" + kind + "'");
  }
  return d;
}

Coloring coloring_from_spec(std::string_view spec, const SpecDefaults& defaults) {
  return from_descriptor(parse_coloring_spec(spec, defaults));
}

}  // namespace sumset
