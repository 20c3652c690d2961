#include "cli.hpp"

#include "sumset/dynamics.hpp"
#include "sumset/error.hpp"
#include "sumset/parallel.hpp"
#include "sumset/recursive.hpp"
#include "sumset/report.hpp"
#include "sumset/search.hpp"
#include "sumset/spec.hpp"
#include "sumset/witness.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iterator>
#include <ostream>
#include <sstream>

namespace sumset::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<IntPolynomial> polys_from(const std::string& text) {
  auto polys = parse_polynomial_list(text);
  if (polys.empty()) throw UsageError("--polys must list at least one polynomial");
  return polys;
}

void emit(std::ostream& out, const Json& j) { out << j.dump(2) << "\n"; }

Word word_from(const std::string& spec, const std::string& file, std::uint64_t length,
               std::uint64_t seed) {
  if (!file.empty()) {
    std::ifstream in(file);
    if (!in) throw Error(ErrorKind::DomainError, "cannot open " + file);
    return read_word(in);
  }
  if (spec.empty()) throw UsageError("a coloring spec or a word file is required");
  return Word::from_coloring(coloring_from_spec(spec, {seed, length}), length);
}

// ---------------------------------------------------------------------------

struct ColorOpts {
  std::string coloring, kind, l, x, y, P, Q, pattern, file, out = "json";
  std::int64_t a = 0, b = 0, c = 0;
  std::optional<std::int64_t> a0;
  int palette = 0;
  std::uint64_t seed = 0, N = 0;
  std::vector<std::uint64_t> query;
};

std::string spec_from_kind(const ColorOpts& o) {
  const std::string& k = o.kind;
  auto ints = [](std::initializer_list<std::int64_t> xs) {
    std::string s;
    for (auto x : xs) s += (s.empty() ? "" : ",") + std::to_string(x);
    return s;
  };
  if (k == "power2") return "power2:" + ints({o.a, o.b});
  if (k == "geo3") {
    std::string s = "geo3:" + ints({o.a, o.b});
    if (!o.l.empty() || !o.x.empty() || !o.y.empty()) s += ",l=" + o.l + ",x=" + o.x + ",y=" + o.y;
    return s;
  }
  if (k == "triple") {
    std::string s = "triple:" + ints({o.a, o.b, o.c});
    if (!o.x.empty() || !o.l.empty()) s += ",x=" + o.x + ",l=" + o.l;
    return s;
  }
  if (k == "case2") return "case2:" + o.P + "," + o.Q;
  if (k == "recursive") {
    std::string s = "recursive:" + o.P + "," + o.Q;
    if (o.a0) s += ",a0=" + std::to_string(*o.a0);
    if (o.N) s += ",N=" + std::to_string(o.N);
    return s;
  }
  if (k == "periodic") {
    return "periodic:" + o.pattern + (o.palette ? ",palette=" + std::to_string(o.palette) : "");
  }
  if (k == "random") {
    return "random:" + std::to_string(o.palette ? o.palette : 2) + ",seed=" + std::to_string(o.seed);
  }
  if (k == "file") return "file@" + o.file;
  throw UsageError("unknown --kind '" + k + "'");
}

int cmd_color(const ColorOpts& o, std::ostream& out) {
  if (o.coloring.empty() == o.kind.empty()) throw UsageError("give exactly one of --coloring, --kind");
  if (o.N == 0 && o.query.empty()) throw UsageError("--N or --query is required");
  const std::string spec = o.coloring.empty() ? spec_from_kind(o) : o.coloring;
  const Coloring col = coloring_from_spec(spec, {o.seed, o.N});
  if (o.out == "runlength") {
    if (o.N == 0) throw UsageError("--out runlength needs --N");
    write_runlength(out, col, o.N);
    return 0;
  }
  std::vector<Color> table;
  if (o.N) {
    if (o.N > window_cap()) throw Error(ErrorKind::DomainError, "--N exceeds the window cap");
    table = color_table(col, o.N);
  }
  if (o.out == "text") {
    for (std::size_t i = 0; i < table.size(); ++i) {
      if (col.palette_size() > 9 && i) out << ' ';
      out << static_cast<int>(table[i]);
    }
    out << "\n";
    for (std::uint64_t z : o.query) out << z << " " << static_cast<int>(col(z)) << "\n";
    return 0;
  }
  Json j;
  j["descriptor"] = col.descriptor().canonical();
  j["palette"] = col.palette_size();
  if (o.N) {
    j["N"] = o.N;
    j["runs"] = runs_json(table);
  }
  if (!o.query.empty()) {
    Json q = Json::array();
    for (std::uint64_t z : o.query) q.push_back({{"z", z}, {"color", static_cast<int>(col(z))}});
    j["queries"] = q;
  }
  emit(out, j);
  return 0;
}

// ---------------------------------------------------------------------------

struct SearchOpts {
  std::string coloring, polys = "n,2n", strategy = "greedy";
  std::uint64_t N = 0, r = 2, maxC = 10, sizeC = 2, stride = 1, seed = 0;
  std::size_t max_candidates = 0;
  unsigned threads = 1;
};

int cmd_search(const SearchOpts& o, std::ostream& out) {
  const auto polys = polys_from(o.polys);
  const Coloring col = coloring_from_spec(o.coloring, {o.seed, o.N});
  const ColorWindow w = window(col, o.N);
  Configuration cfg;
  if (o.strategy == "greedy") {
    cfg = greedy_search(w, polys, o.r, o.maxC, GreedyOptions{o.stride, o.max_candidates, o.threads});
  } else {
    auto found = exhaustive_search(w, polys, o.r, o.sizeC);
    if (!found) {
      throw Error(ErrorKind::NoConfiguration,
                  "no configuration with |C| = " + std::to_string(o.sizeC));
    }
    cfg = *found;
  }
  Json j = to_json(cfg);
  const auto verified = verify_config(col, cfg);
  j["verified_color"] = verified ? Json(static_cast<int>(*verified)) : Json(nullptr);
  j["coloring"] = col.descriptor().canonical();
  emit(out, j);
  return verified ? 0 : 1;
}

// ---------------------------------------------------------------------------

struct AuditOpts {
  std::string coloring, polys = "n,2n", out = "json";
  std::uint64_t n_min = 1, n_max = 0, M = 0, seed = 0;
  std::vector<int> colors;
  std::vector<std::uint64_t> horizons;
  unsigned threads = 1;
};

int cmd_audit(const AuditOpts& o, std::ostream& out) {
  const auto polys = polys_from(o.polys);
  const Coloring col = coloring_from_spec(o.coloring, {o.seed, 0});
  const std::uint64_t n_max = o.n_max ? o.n_max : o.n_min;
  if (n_max < o.n_min) throw UsageError("--n-max must be at least --n-min");
  std::vector<Color> colors;
  for (int c : o.colors) {
    if (c < 1 || c > col.palette_size()) throw UsageError("--colors outside the palette");
    colors.push_back(static_cast<Color>(c));
  }
  if (colors.empty()) {
    for (int c = 1; c <= col.palette_size(); ++c) colors.push_back(static_cast<Color>(c));
  }

  if (!o.horizons.empty()) {
    if (n_max != o.n_min || colors.size() != 1) {
      throw UsageError("--horizons needs a single n and a single color");
    }
    write_growth_csv(out, bad_set_growth(col, o.n_min, polys, colors.front(), o.horizons));
    return 0;
  }
  if (o.M < 2) throw UsageError("--M must be at least 2");

  const std::size_t count = static_cast<std::size_t>(n_max - o.n_min + 1);
  std::vector<std::vector<BadSet>> per_n(count);
  parallel_chunks(count, o.threads, [&](std::size_t begin, std::size_t end, unsigned) {
    for (std::size_t i = begin; i < end; ++i) {
      per_n[i] = bad_sets_all_colors(col, o.n_min + i, polys, o.M);
    }
  });
  if (o.out == "csv") {
    out << "n,color,M,count,max_element,stabilized\n";
    for (const auto& sets : per_n) {
      for (Color c : colors) {
        const AuditReport& r = sets[c - 1U].report;
        out << r.n << "," << static_cast<int>(r.color) << "," << r.M << "," << r.count << ",";
        if (r.max_element) out << *r.max_element;
        out << "," << (r.stabilized ? "true" : "false") << "\n";
      }
    }
    return 0;
  }
  Json arr = Json::array();
  for (const auto& sets : per_n) {
    for (Color c : colors) arr.push_back(to_json(sets[c - 1U].report));
  }
  emit(out, arr);
  return 0;
}

// ---------------------------------------------------------------------------

struct ApOpts {
  std::vector<std::int64_t> set;
  std::string set_file;
  int k = 0;
  std::uint64_t N = 0;
};

int cmd_ap(const ApOpts& o, std::ostream& out) {
  const bool gowers = o.k != 0 || o.N != 0;
  const bool ap = !o.set.empty() || !o.set_file.empty();
  if (gowers == ap) throw UsageError("give either --set/--set-file or --k with --N");
  if (gowers) {
    emit(out, to_json(gowers_threshold(o.k, o.N), o.N));
    return 0;
  }
  std::vector<std::int64_t> values = o.set;
  if (!o.set_file.empty()) {
    std::ifstream in(o.set_file);
    if (!in) throw Error(ErrorKind::DomainError, "cannot open " + o.set_file);
    values.assign(std::istream_iterator<std::int64_t>(in), std::istream_iterator<std::int64_t>());
  }
  emit(out, to_json(longest_ap(values)));
  return 0;
}

// ---------------------------------------------------------------------------

struct DynOpts {
  std::string action = "return-set", coloring, word, y, z, y_word, z_word;
  std::int64_t a = 1, b = 2, h = 0;
  std::uint64_t M = 0, N = 0, D = 0, K = 0, seed = 0;
  std::vector<std::uint64_t> set, windows;
};

Json density_json(std::span<const std::uint64_t> S, std::uint64_t M,
                  std::span<const std::uint64_t> windows) {
  Json arr = Json::array();
  for (const auto& [W, d] : density_profile(S, M, windows)) {
    arr.push_back({{"window", W}, {"density", d}});
  }
  return arr;
}

int cmd_dynamics(const DynOpts& o, std::ostream& out) {
  if (o.action == "return-set") {
    if (o.M < 1) throw UsageError("--M is required");
    const std::uint64_t need = static_cast<std::uint64_t>(o.h + o.b * static_cast<std::int64_t>(o.M));
    const Word x = word_from(o.coloring, o.word, o.N ? o.N : need, o.seed);
    const ReturnSet rs = return_set(x, o.a, o.b, o.h, o.M);
    Json j = to_json(rs);
    j["max_gap"] = max_gap(rs.elements, rs.M);
    if (!o.windows.empty()) j["density"] = density_json(rs.elements, rs.M, o.windows);
    emit(out, j);
    return 0;
  }
  if (o.action == "stats") {
    if (o.M < 1) throw UsageError("--M is required");
    Json j;
    j["M"] = o.M;
    j["max_gap"] = max_gap(o.set, o.M);
    if (!o.windows.empty()) j["density"] = density_json(o.set, o.M, o.windows);
    emit(out, j);
    return 0;
  }
  if (o.action == "dichotomy") {
    if (o.D < 1) throw UsageError("--D is required");
    const std::uint64_t need = o.D + static_cast<std::uint64_t>(o.b * (o.b - o.a)) * o.K;
    const Word y = word_from(o.y, o.y_word, need, o.seed);
    const Word z = word_from(o.z, o.z_word, need, o.seed);
    const auto d = dichotomy_detect(y, z, o.a, o.b, o.D, o.K);
    Json j;
    j["a"] = o.a;
    j["b"] = o.b;
    j["D"] = o.D;
    j["K"] = o.K;
    j["d"] = d ? Json(*d) : Json(nullptr);
    emit(out, j);
    return 0;
  }
  throw UsageError("unknown --action '" + o.action + "'");
}

// ---------------------------------------------------------------------------

struct WitnessOpts {
  std::string variant, params, coloring, dk;
  WitnessParams p;
  bool check = false;
  std::uint64_t seed = 0;
};

int cmd_witness(WitnessOpts o, std::ostream& out) {
  WitnessParams p = o.p;
  if (!o.params.empty()) {
    p = WitnessParams::from_descriptor(Descriptor::parse(o.params));
  } else {
    if (o.variant.empty()) throw UsageError("--variant or --params is required");
    p.variant = parse_witness_variant(o.variant);
    if (!o.dk.empty()) {
      p.dk = WitnessParams::from_descriptor(Descriptor::parse("kind=caseI;dk=" + o.dk)).dk;
    }
  }
  const Witness w = build_witness(p);
  Json j = to_json(w, p);
  bool ok = true;
  if (o.check) {
    ok = check_sumset_identity(p, w.B, w.C);
    j["identity"] = ok;
  }
  if (!o.coloring.empty()) {
    const Coloring col = coloring_from_spec(o.coloring, {o.seed, 0});
    Configuration cfg;
    for (std::int64_t x : w.B) cfg.B.push_back(static_cast<std::uint64_t>(x));
    for (std::int64_t x : w.C) cfg.C.push_back(static_cast<std::uint64_t>(x));
    cfg.polys = {IntPolynomial({BigInt(0), BigInt(p.a)}), IntPolynomial({BigInt(0), BigInt(p.b)})};
    const auto color = verify_config(col, cfg);
    j["coloring"] = col.descriptor().canonical();
    j["monochromatic_color"] = color ? Json(static_cast<int>(*color)) : Json(nullptr);
  }
  emit(out, j);
  return ok ? 0 : 1;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Colorings of the naturals, monochromatic sumset search and audits", "sumset-ramsey"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");

  ColorOpts co;
  auto* color = app.add_subcommand("color", "Evaluate or export a coloring");
  color->add_option("--coloring", co.coloring, "Coloring spec kind[:params][@file]");
  color->add_option("--kind", co.kind, "Built-in kind (alternative to --coloring)")
      ->check(CLI::IsMember({"power2", "geo3", "triple", "case2", "recursive", "periodic", "random", "file"}));
  color->add_option("--a", co.a);
  color->add_option("--b", co.b);
  color->add_option("--c", co.c);
  color->add_option("--l", co.l, "Rational base l");
  color->add_option("--x", co.x, "Rational cut x");
  color->add_option("--y", co.y, "Rational cut y");
  color->add_option("--P", co.P, "Polynomial P");
  color->add_option("--Q", co.Q, "Polynomial Q");
  color->add_option("--a0", co.a0, "Starting level for the recursive coloring");
  color->add_option("--pattern", co.pattern, "Digits of a periodic pattern");
  color->add_option("--palette", co.palette);
  color->add_option("--file", co.file, "Run-length coloring file");
  color->add_option("--seed", co.seed, "Seed for random colorings")->capture_default_str();
  color->add_option("--N", co.N, "Window length");
  color->add_option("--out", co.out, "Output format")
      ->check(CLI::IsMember({"json", "runlength", "text"}))
      ->capture_default_str();
  color->add_option("--query", co.query, "Points to evaluate")->delimiter(',');

  SearchOpts so;
  auto* search = app.add_subcommand("search", "Search a window for a monochromatic configuration");
  search->add_option("--coloring", so.coloring, "Coloring spec")->required();
  search->add_option("--polys", so.polys, "Comma separated polynomials")->capture_default_str();
  search->add_option("--N", so.N, "Window length")->required();
  search->add_option("--r", so.r, "Size of B")->capture_default_str();
  search->add_option("--maxC", so.maxC, "Greedy cap on |C|")->capture_default_str();
  search->add_option("--strategy", so.strategy)
      ->check(CLI::IsMember({"greedy", "exhaustive"}))
      ->capture_default_str();
  search->add_option("--sizeC", so.sizeC, "Exhaustive |C|")->capture_default_str();
  search->add_option("--stride", so.stride, "Greedy candidate stride")->capture_default_str();
  search->add_option("--max-candidates", so.max_candidates, "Thin candidates to this many (0 = all)")
      ->capture_default_str();
  search->add_option("--threads", so.threads)->capture_default_str();
  search->add_option("--seed", so.seed)->capture_default_str();

  AuditOpts ao;
  auto* audit = app.add_subcommand("audit", "Bad-set audit of a coloring");
  audit->add_option("--coloring", ao.coloring, "Coloring spec")->required();
  audit->add_option("--polys", ao.polys)->capture_default_str();
  audit->add_option("--n-min", ao.n_min)->capture_default_str();
  audit->add_option("--n-max", ao.n_max, "Defaults to --n-min");
  audit->add_option("--M", ao.M, "Horizon");
  audit->add_option("--colors", ao.colors, "Colors to report (default all)")->delimiter(',');
  audit->add_option("--horizons", ao.horizons, "Growth-curve horizons (CSV output)")->delimiter(',');
  audit->add_option("--out", ao.out)->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  audit->add_option("--threads", ao.threads)->capture_default_str();
  audit->add_option("--seed", ao.seed)->capture_default_str();

  ApOpts po;
  auto* ap = app.add_subcommand("ap", "Longest arithmetic progression, or the Gowers threshold");
  ap->add_option("--set", po.set, "Comma separated integers")->delimiter(',');
  ap->add_option("--set-file", po.set_file, "Whitespace separated integers");
  ap->add_option("--k", po.k, "Progression length for the threshold");
  ap->add_option("--N", po.N, "N for the threshold");

  DynOpts dy;
  auto* dyn = app.add_subcommand("dynamics", "Return sets, gap and density statistics, dichotomy test");
  dyn->set_help_flag("--help", "Print this help message and exit");  // frees -h for the shift
  dyn->add_option("--action", dy.action)
      ->check(CLI::IsMember({"return-set", "stats", "dichotomy"}))
      ->capture_default_str();
  dyn->add_option("--coloring", dy.coloring, "Word source as a coloring spec");
  dyn->add_option("--word", dy.word, "Word source as a run-length file");
  dyn->add_option("--y", dy.y);
  dyn->add_option("--z", dy.z);
  dyn->add_option("--y-word", dy.y_word);
  dyn->add_option("--z-word", dy.z_word);
  dyn->add_option("--a", dy.a)->capture_default_str();
  dyn->add_option("--b", dy.b)->capture_default_str();
  dyn->add_option("--h", dy.h)->capture_default_str();
  dyn->add_option("--M", dy.M);
  dyn->add_option("--N", dy.N, "Word length (default h + bM)");
  dyn->add_option("--D", dy.D);
  dyn->add_option("--K", dy.K);
  dyn->add_option("--set", dy.set)->delimiter(',');
  dyn->add_option("--windows", dy.windows)->delimiter(',');
  dyn->add_option("--seed", dy.seed)->capture_default_str();

  WitnessOpts wo;
  auto* wit = app.add_subcommand("witness", "Build a closed-form witness and check its identities");
  wit->add_option("--variant", wo.variant)
      ->check(CLI::IsMember({"stepI", "caseI", "situationI", "situationII"}, CLI::ignore_case));
  wit->add_option("--params", wo.params, "Key-value descriptor kind=stepI;a=1;...");
  wit->add_option("--a", wo.p.a);
  wit->add_option("--b", wo.p.b);
  wit->add_option("--r", wo.p.r);
  wit->add_option("--dt", wo.p.d_tilde, "Base shift");
  wit->add_option("--s", wo.p.s);
  wit->add_option("--t", wo.p.t);
  wit->add_option("--d", wo.p.d)->delimiter(',');
  wit->add_option("--E", wo.p.E);
  wit->add_option("--v", wo.p.v)->delimiter(',');
  wit->add_option("--dk", wo.dk, "Pairs d:k,d:k");
  wit->add_option("--j", wo.p.j);
  wit->add_option("--beta", wo.p.beta);
  wit->add_option("--L0", wo.p.L0);
  wit->add_option("--offsets", wo.p.offsets)->delimiter(',');
  wit->add_option("--xi", wo.p.xi);
  wit->add_option("--alpha", wo.p.alpha);
  wit->add_flag("--check", wo.check, "Verify the sumset identities (exit 1 when false)");
  wit->add_option("--coloring", wo.coloring, "Also verify monochromaticity under this coloring");
  wit->add_option("--seed", wo.seed);

  std::vector<std::string> argv_store;
  argv_store.reserve(args.size() + 1);
  argv_store.push_back("sumset-ramsey");
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& s : argv_store) argv.push_back(s.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*color) return cmd_color(co, out);
    if (*search) return cmd_search(so, out);
    if (*audit) return cmd_audit(ao, out);
    if (*ap) return cmd_ap(po, out);
    if (*dyn) return cmd_dynamics(dy, out);
    if (*wit) return cmd_witness(wo, out);
  } catch (const UsageError& e) {
    err << error_json("UsageError", e.what()).dump() << "\n";
    return 2;
  } catch (const Error& e) {
    err << error_json(to_string(e.kind()), e.what()).dump() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << error_json("InternalError", e.what()).dump() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace sumset::cli
