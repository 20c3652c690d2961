#include "sumset/search.hpp"

#include "sumset/error.hpp"

#include <algorithm>
#include <limits>
#include <ostream>

namespace sumset {

namespace {

// Largest point painted into a lookup table; beyond it the oracle is queried
// point by point.
constexpr std::uint64_t kTableCap = std::uint64_t{1} << 26;

// Calls visit(m, color) for every m <= M whose points n + P(m) all share one color.
template <class Visit>
void scan_monochromatic(const Coloring& c, std::uint64_t n, std::span<const IntPolynomial> polys,
                        std::uint64_t M, Visit&& visit) {
  if (M < 2) throw Error(ErrorKind::BadParams, "bad-set horizon M must be at least 2");
  if (polys.empty()) throw Error(ErrorKind::BadParams, "at least one polynomial is required");
  const Int128 base = static_cast<Int128>(n);
  constexpr Int128 kU64 = static_cast<Int128>(std::numeric_limits<std::uint64_t>::max());

  Int128 top = 0;
  for (std::uint64_t m = 1; m <= M; ++m) {
    for (const auto& P : polys) {
      const auto v = P.eval_i128(static_cast<Int128>(m));
      if (!v || base + *v > kU64) {
        top = kU64;
        break;
      }
      top = std::max(top, base + *v);
    }
    if (top == kU64) break;
  }

  std::vector<Color> table;
  const bool use_table = top <= static_cast<Int128>(kTableCap);
  if (use_table && top >= 1) table = color_table(c, static_cast<std::uint64_t>(top));

  for (std::uint64_t m = 1; m <= M; ++m) {
    Color common = 0;
    bool ok = true;
    for (const auto& P : polys) {
      const auto v = P.eval_i128(static_cast<Int128>(m));
      if (!v || base + *v > kU64) {
        throw Error(ErrorKind::DomainError, "audit point exceeds the 64-bit domain");
      }
      const Int128 z = base + *v;
      if (z < 1) {
        ok = false;
        break;
      }
      const auto zu = static_cast<std::uint64_t>(z);
      const Color col = use_table ? table[static_cast<std::size_t>(zu - 1)] : c(zu);
      if (common == 0) {
        common = col;
      } else if (col != common) {
        ok = false;
        break;
      }
    }
    if (ok) visit(m, common);
  }
}

}  // namespace

AuditReport audit_report(std::uint64_t n, Color color, std::span<const std::uint64_t> elements,
                         std::uint64_t M) {
  AuditReport rep;
  rep.n = n;
  rep.color = color;
  rep.M = M;
  for (std::uint64_t m : elements) {
    if (m < 1 || m > M) continue;
    ++rep.count;
    rep.max_element = std::max(rep.max_element.value_or(0), m);
  }
  rep.stabilized = !rep.max_element || 2 * *rep.max_element <= M;
  return rep;
}

BadSet bad_set(const Coloring& c, std::uint64_t n, std::span<const IntPolynomial> polys,
               Color color, std::uint64_t M) {
  BadSet out;
  scan_monochromatic(c, n, polys, M, [&](std::uint64_t m, Color col) {
    if (col == color) out.elements.push_back(m);
  });
  out.report = audit_report(n, color, out.elements, M);
  return out;
}

std::vector<BadSet> bad_sets_all_colors(const Coloring& c, std::uint64_t n,
                                        std::span<const IntPolynomial> polys, std::uint64_t M) {
  std::vector<BadSet> out(static_cast<std::size_t>(c.palette_size()));
  scan_monochromatic(c, n, polys, M, [&](std::uint64_t m, Color col) {
    out[col - 1U].elements.push_back(m);
  });
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i].report = audit_report(n, static_cast<Color>(i + 1), out[i].elements, M);
  }
  return out;
}

std::vector<GrowthRow> bad_set_growth(const Coloring& c, std::uint64_t n,
                                      std::span<const IntPolynomial> polys, Color color,
                                      std::span<const std::uint64_t> horizons) {
  if (horizons.empty()) return {};
  const std::uint64_t top = *std::max_element(horizons.begin(), horizons.end());
  const BadSet all = bad_set(c, n, polys, color, top);
  std::vector<GrowthRow> rows;
  for (std::uint64_t M : horizons) {
    const AuditReport rep = audit_report(n, color, all.elements, M);
    rows.push_back({M, rep.count, rep.max_element});
  }
  return rows;
}

void write_growth_csv(std::ostream& out, std::span<const GrowthRow> rows) {
  out << "M,count,max_element\n";
  for (const auto& row : rows) {
    out << row.M << "," << row.count << ",";
    if (row.max_element) out << *row.max_element;
    out << "\n";
  }
}

}  // namespace sumset
