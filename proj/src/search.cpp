#include "sumset/search.hpp"

#include "sumset/error.hpp"
#include "sumset/parallel.hpp"

#include <algorithm>
#include <functional>

namespace sumset {

std::optional<Color> verify_config(const Coloring& c, const Configuration& cfg) {
  if (cfg.B.empty() || cfg.C.empty() || cfg.polys.empty()) return std::nullopt;
  std::optional<Color> common;
  for (const auto& P : cfg.polys) {
    for (std::uint64_t k : cfg.C) {
      const BigInt pk = P(BigInt(k));
      for (std::uint64_t h : cfg.B) {
        const auto z = to_u64(BigInt(h) + pk);
        if (!z || *z == 0) {
          throw Error(ErrorKind::DomainError, "configuration point outside [1, 2^64)");
        }
        const Color col = c(*z);
        if (!common) {
          common = col;
        } else if (*common != col) {
          return std::nullopt;
        }
      }
    }
  }
  return common;
}

std::optional<std::vector<std::uint64_t>> shifts_for(std::span<const IntPolynomial> polys,
                                                     std::uint64_t c, std::uint64_t limit) {
  std::vector<std::uint64_t> out;
  out.reserve(polys.size());
  for (const auto& P : polys) {
    const auto v = P.eval_i128(static_cast<Int128>(c));
    if (!v || *v < 0 || *v >= static_cast<Int128>(limit)) return std::nullopt;
    out.push_back(static_cast<std::uint64_t>(*v));
  }
  return out;
}

Bitset survivor_set(const ColorWindow& w, std::span<const IntPolynomial> polys,
                    std::span<const std::uint64_t> C, Color color) {
  Bitset out(w.size(), true);
  const Bitset& layer = w.layer(color);
  for (std::uint64_t c : C) {
    const auto shifts = shifts_for(polys, c, w.size());
    if (!shifts) throw Error(ErrorKind::DomainError, "P(c) must lie in [0, N)");
    for (std::uint64_t s : *shifts) out.and_shifted(layer, s);
  }
  return out;
}

std::vector<std::uint64_t> greedy_candidates(const ColorWindow& w,
                                             std::span<const IntPolynomial> polys,
                                             const GreedyOptions& opts) {
  const std::uint64_t stride = std::max<std::uint64_t>(1, opts.stride);
  std::vector<std::uint64_t> all;
  for (std::uint64_t c = 1; c <= w.size(); c += stride) {
    if (shifts_for(polys, c, w.size())) all.push_back(c);
  }
  if (opts.max_candidates == 0 || all.size() <= opts.max_candidates) return all;
  std::vector<std::uint64_t> thinned;
  thinned.reserve(opts.max_candidates);
  for (std::size_t i = 0; i < opts.max_candidates; ++i) {
    thinned.push_back(all[i * all.size() / opts.max_candidates]);
  }
  return thinned;
}

namespace {

struct Pick {
  std::uint64_t count = 0;
  std::uint64_t c = 0;
  bool valid = false;

  bool better_than(const Pick& o) const {
    if (!valid) return false;
    if (!o.valid) return true;
    if (count != o.count) return count > o.count;
    return c < o.c;
  }
};

struct ColorResult {
  std::vector<std::uint64_t> C;
  Bitset survivors;
  std::uint64_t survivor_count = 0;
};

ColorResult greedy_one_color(const ColorWindow& w, std::uint64_t r, std::uint64_t maxC, Color color,
                             const std::vector<std::uint64_t>& candidates,
                             const std::vector<std::vector<std::uint64_t>>& shifts,
                             unsigned threads) {
  const Bitset& layer = w.layer(color);
  ColorResult res;
  res.survivors = Bitset(w.size(), true);
  res.survivor_count = w.size();
  std::vector<char> used(candidates.size(), 0);

  while (res.C.size() < maxC) {
    // Sparse evaluation pays off once the survivors are fewer than the words
    // a dense pass would touch.
    const bool sparse = res.survivor_count < res.survivors.word_count();
    std::vector<std::uint64_t> members;
    if (sparse) members = res.survivors.positions();

    std::vector<Pick> local(std::max(1U, threads));
    parallel_chunks(candidates.size(), threads, [&](std::size_t begin, std::size_t end, unsigned id) {
      Pick best;
      for (std::size_t i = begin; i < end; ++i) {
        if (used[i]) continue;
        const auto& sh = shifts[i];
        std::uint64_t count = 0;
        if (sparse) {
          for (std::uint64_t b : members) {
            bool ok = true;
            for (std::uint64_t s : sh) {
              if (!layer.test(b + s)) {
                ok = false;
                break;
              }
            }
            count += ok ? 1 : 0;
          }
        } else {
          count = res.survivors.count_and_shifted(layer, sh);
        }
        const Pick p{count, candidates[i], true};
        if (p.better_than(best)) best = p;
      }
      local[id] = best;
    });
    Pick best;
    for (const Pick& p : local) {
      if (p.better_than(best)) best = p;
    }
    if (!best.valid || best.count < r) break;

    const auto idx = static_cast<std::size_t>(
        std::lower_bound(candidates.begin(), candidates.end(), best.c) - candidates.begin());
    used[idx] = 1;
    for (std::uint64_t s : shifts[idx]) res.survivors.and_shifted(layer, s);
    res.survivor_count = best.count;
    res.C.push_back(best.c);
  }
  std::sort(res.C.begin(), res.C.end());
  return res;
}

}  // namespace

Configuration greedy_search(const ColorWindow& w, std::span<const IntPolynomial> polys,
                            std::uint64_t r, std::uint64_t maxC, const GreedyOptions& opts) {
  if (r < 1 || maxC < 1) throw Error(ErrorKind::BadParams, "greedy search needs r >= 1 and maxC >= 1");
  if (polys.empty()) throw Error(ErrorKind::BadParams, "at least one polynomial is required");
  const auto candidates = greedy_candidates(w, polys, opts);
  std::vector<std::vector<std::uint64_t>> shifts;
  shifts.reserve(candidates.size());
  for (std::uint64_t c : candidates) shifts.push_back(*shifts_for(polys, c, w.size()));

  std::optional<Configuration> best;
  for (int col = 1; col <= w.palette_size(); ++col) {
    const Color color = static_cast<Color>(col);
    ColorResult res = greedy_one_color(w, r, maxC, color, candidates, shifts, opts.threads);
    if (res.C.empty()) continue;
    const bool better = !best || res.C.size() > best->C.size() ||
                        (res.C.size() == best->C.size() && res.survivor_count > best->survivors);
    if (!better) continue;
    Configuration cfg;
    cfg.C = std::move(res.C);
    cfg.B = res.survivors.first(static_cast<std::size_t>(r));
    cfg.polys.assign(polys.begin(), polys.end());
    cfg.color = color;
    cfg.N = w.size();
    cfg.strategy = "greedy";
    cfg.survivors = res.survivor_count;
    best = std::move(cfg);
  }
  if (!best) {
    throw Error(ErrorKind::NoConfiguration,
                "no color admits |C| = 1 with " + std::to_string(r) + " survivors");
  }
  return *best;
}

std::optional<Configuration> exhaustive_search(const ColorWindow& w,
                                               std::span<const IntPolynomial> polys,
                                               std::uint64_t r, std::uint64_t sizeC) {
  if (r < 1 || sizeC < 1) throw Error(ErrorKind::BadParams, "exhaustive search needs r, sizeC >= 1");
  if (polys.empty()) throw Error(ErrorKind::BadParams, "at least one polynomial is required");
  const auto candidates = greedy_candidates(w, polys, GreedyOptions{});
  if (candidates.size() < sizeC) return std::nullopt;

  std::optional<Configuration> best;
  for (int col = 1; col <= w.palette_size(); ++col) {
    const Color color = static_cast<Color>(col);
    const Bitset& layer = w.layer(color);
    std::vector<std::uint64_t> chosen;
    std::optional<Configuration> local;

    std::function<void(std::size_t, const Bitset&)> rec = [&](std::size_t from, const Bitset& cur) {
      if (chosen.size() == sizeC) {
        const std::uint64_t count = cur.count();
        if (count >= r && (!local || count > local->survivors)) {
          Configuration cfg;
          cfg.C = chosen;
          cfg.B = cur.first(static_cast<std::size_t>(r));
          cfg.polys.assign(polys.begin(), polys.end());
          cfg.color = color;
          cfg.N = w.size();
          cfg.strategy = "exhaustive";
          cfg.survivors = count;
          local = std::move(cfg);
        }
        return;
      }
      for (std::size_t i = from; i + (sizeC - chosen.size()) <= candidates.size(); ++i) {
        Bitset next = cur;
        const auto shifts = shifts_for(polys, candidates[i], w.size());
        for (std::uint64_t s : *shifts) next.and_shifted(layer, s);
        // Survivor sets only shrink as C grows.
        if (next.count() < r) continue;
        chosen.push_back(candidates[i]);
        rec(i + 1, next);
        chosen.pop_back();
      }
    };
    rec(0, Bitset(w.size(), true));
    if (local && (!best || local->survivors > best->survivors)) best = std::move(local);
  }
  return best;
}

}  // namespace sumset
