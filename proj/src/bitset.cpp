#include "sumset/bitset.hpp"

#include <algorithm>

namespace sumset {

Bitset::Bitset(std::uint64_t size, bool value)
    : size_(size), words_(static_cast<std::size_t>(size / kWordBits + 1), Word{0}) {
  if (value) fill(true);
}

void Bitset::fill(bool value) {
  std::fill(words_.begin(), words_.end(), value ? ~Word{0} : Word{0});
  if (value) clear_tail();
}

void Bitset::clear_tail() {
  // Storage bit 0 and everything past size_ stay zero.
  words_.front() &= ~Word{1};
  const std::uint64_t used = (size_ + 1) % kWordBits;
  if (used != 0) words_.back() &= (Word{1} << used) - 1;
}

std::uint64_t Bitset::count() const {
  std::uint64_t total = 0;
  for (Word w : words_) total += static_cast<std::uint64_t>(std::popcount(w));
  return total;
}

bool Bitset::none() const {
  return std::all_of(words_.begin(), words_.end(), [](Word w) { return w == 0; });
}

Bitset::Word Bitset::window(std::size_t word, std::uint64_t shift) const {
  const std::uint64_t q = shift / kWordBits;
  const unsigned r = static_cast<unsigned>(shift % kWordBits);
  const std::uint64_t base = word + q;
  if (base >= words_.size()) return 0;
  Word out = words_[base] >> r;
  if (r != 0 && base + 1 < words_.size()) out |= words_[base + 1] << (kWordBits - r);
  return out;
}

void Bitset::and_shifted(const Bitset& src, std::uint64_t shift) {
  for (std::size_t w = 0; w < words_.size(); ++w) {
    if (words_[w] != 0) words_[w] &= src.window(w, shift);
  }
}

Bitset& Bitset::operator&=(const Bitset& other) {
  const std::size_t n = std::min(words_.size(), other.words_.size());
  for (std::size_t w = 0; w < n; ++w) words_[w] &= other.words_[w];
  for (std::size_t w = n; w < words_.size(); ++w) words_[w] = 0;
  return *this;
}

std::vector<std::uint64_t> Bitset::first(std::size_t limit) const {
  std::vector<std::uint64_t> out;
  for (std::size_t w = 0; w < words_.size() && out.size() < limit; ++w) {
    Word bits = words_[w];
    while (bits != 0 && out.size() < limit) {
      const int b = std::countr_zero(bits);
      out.push_back(static_cast<std::uint64_t>(w) * kWordBits + static_cast<unsigned>(b));
      bits &= bits - 1;
    }
  }
  return out;
}

std::uint64_t Bitset::count_and_shifted(const Bitset& src,
                                        std::span<const std::uint64_t> shifts) const {
  std::size_t lo = 0;
  std::size_t hi = words_.size();
  while (lo < hi && words_[lo] == 0) ++lo;
  while (hi > lo && words_[hi - 1] == 0) --hi;
  std::uint64_t total = 0;
  for (std::size_t w = lo; w < hi; ++w) {
    Word acc = words_[w];
    for (std::uint64_t s : shifts) {
      if (acc == 0) break;
      acc &= src.window(w, s);
    }
    total += static_cast<std::uint64_t>(std::popcount(acc));
  }
  return total;
}

}  // namespace sumset
