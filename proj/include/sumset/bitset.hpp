#pragma once

#include <bit>
#include <cstdint>
#include <span>
#include <vector>

namespace sumset {

/// Word-packed bit-vector over the logical positions 1..size(). Logical
/// position i lives at storage bit i, so bit 0 of word 0 is never set.
class Bitset {
 public:
  using Word = std::uint64_t;
  static constexpr unsigned kWordBits = 64;

  Bitset() = default;
  explicit Bitset(std::uint64_t size, bool value = false);

  std::uint64_t size() const { return size_; }
  std::size_t word_count() const { return words_.size(); }
  std::span<const Word> words() const { return words_; }

  bool test(std::uint64_t i) const {
    return i >= 1 && i <= size_ && ((words_[i / kWordBits] >> (i % kWordBits)) & 1U);
  }
  void set(std::uint64_t i) { words_[i / kWordBits] |= Word{1} << (i % kWordBits); }
  void reset(std::uint64_t i) { words_[i / kWordBits] &= ~(Word{1} << (i % kWordBits)); }

  void fill(bool value);
  std::uint64_t count() const;
  bool none() const;

  /// this[b] &= src[b + shift] for every b; positions whose partner falls
  /// past src.size() are cleared.
  void and_shifted(const Bitset& src, std::uint64_t shift);
  Bitset& operator&=(const Bitset& other);

  /// Smallest set positions, at most `limit` of them.
  std::vector<std::uint64_t> first(std::size_t limit) const;
  std::vector<std::uint64_t> positions() const { return first(static_cast<std::size_t>(-1)); }

  /// Popcount of (*this & src>>s_1 & ... & src>>s_k) without materializing.
  std::uint64_t count_and_shifted(const Bitset& src, std::span<const std::uint64_t> shifts) const;

  friend bool operator==(const Bitset& a, const Bitset& b) {
    return a.size_ == b.size_ && a.words_ == b.words_;
  }

 private:
  // 64 bits of src starting at storage bit (word * 64 + shift).
  Word window(std::size_t word, std::uint64_t shift) const;
  void clear_tail();

  std::uint64_t size_ = 0;
  std::vector<Word> words_;
};

}  // namespace sumset
