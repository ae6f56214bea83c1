#pragma once

#include <array>
#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iterator>
#include <string>
#include <vector>

#include "joinopt/error.hpp"

#ifdef __BMI2__
#include <immintrin.h>
#endif

namespace joinopt {

/// Forward iterator over the set bits of a word sequence, yielding indices in
/// ascending order.
class BitIterator {
 public:
  using iterator_category = std::forward_iterator_tag;
  using value_type = std::size_t;
  using difference_type = std::ptrdiff_t;
  using pointer = const std::size_t*;
  using reference = std::size_t;

  BitIterator() = default;
  BitIterator(const std::uint64_t* words, std::size_t word_count, std::size_t word_index)
      : words_(words), word_count_(word_count), word_index_(word_index) {
    if (word_index_ < word_count_) current_ = words_[word_index_];
    skip_empty();
  }

  std::size_t operator*() const {
    return word_index_ * 64 + static_cast<std::size_t>(std::countr_zero(current_));
  }
  BitIterator& operator++() {
    current_ &= current_ - 1;
    skip_empty();
    return *this;
  }
  BitIterator operator++(int) {
    BitIterator copy = *this;
    ++*this;
    return copy;
  }
  friend bool operator==(const BitIterator& a, const BitIterator& b) {
    return a.word_index_ == b.word_index_ && a.current_ == b.current_;
  }

 private:
  void skip_empty() {
    while (current_ == 0 && word_index_ < word_count_) {
      ++word_index_;
      current_ = word_index_ < word_count_ ? words_[word_index_] : 0;
    }
  }

  const std::uint64_t* words_ = nullptr;
  std::size_t word_count_ = 0;
  std::size_t word_index_ = 0;
  std::uint64_t current_ = 0;
};

/// Relation set over indices 0..63 held in one machine word. Used by the exact
/// optimizers, which never see more than 64 relations.
class SmallRelSet {
 public:
  static constexpr std::size_t kCapacity = 64;

  constexpr SmallRelSet() = default;
  constexpr explicit SmallRelSet(std::uint64_t bits) : bits_(bits) {}

  static constexpr SmallRelSet singleton(std::size_t i) { return SmallRelSet(std::uint64_t{1} << i); }
  /// {0, ..., n-1}
  static constexpr SmallRelSet prefix(std::size_t n) {
    return SmallRelSet(n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1);
  }
  static SmallRelSet of(std::initializer_list<std::size_t> members) {
    SmallRelSet s;
    for (auto m : members) s.insert(m);
    return s;
  }

  constexpr std::uint64_t bits() const { return bits_; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr std::size_t count() const { return static_cast<std::size_t>(std::popcount(bits_)); }
  constexpr bool contains(std::size_t i) const { return (bits_ >> i) & 1U; }
  constexpr void insert(std::size_t i) { bits_ |= std::uint64_t{1} << i; }
  constexpr void erase(std::size_t i) { bits_ &= ~(std::uint64_t{1} << i); }
  /// Smallest member; undefined on the empty set.
  constexpr std::size_t lowest() const { return static_cast<std::size_t>(std::countr_zero(bits_)); }
  constexpr SmallRelSet lowest_singleton() const { return SmallRelSet(bits_ & (~bits_ + 1)); }
  constexpr bool is_subset_of(SmallRelSet other) const { return (bits_ & ~other.bits_) == 0; }
  constexpr bool intersects(SmallRelSet other) const { return (bits_ & other.bits_) != 0; }

  constexpr SmallRelSet operator|(SmallRelSet o) const { return SmallRelSet(bits_ | o.bits_); }
  constexpr SmallRelSet operator&(SmallRelSet o) const { return SmallRelSet(bits_ & o.bits_); }
  /// Set difference.
  constexpr SmallRelSet operator-(SmallRelSet o) const { return SmallRelSet(bits_ & ~o.bits_); }
  constexpr SmallRelSet& operator|=(SmallRelSet o) { bits_ |= o.bits_; return *this; }
  constexpr SmallRelSet& operator&=(SmallRelSet o) { bits_ &= o.bits_; return *this; }
  constexpr SmallRelSet& operator-=(SmallRelSet o) { bits_ &= ~o.bits_; return *this; }

  constexpr bool operator==(const SmallRelSet&) const = default;
  constexpr std::strong_ordering operator<=>(const SmallRelSet& o) const { return bits_ <=> o.bits_; }

  BitIterator begin() const { return BitIterator(&bits_, 1, 0); }
  BitIterator end() const { return BitIterator(&bits_, 1, 1); }

 private:
  std::uint64_t bits_ = 0;
};

/// Relation set with a capacity fixed at construction. Binary operations
/// require both operands to share the capacity.
class RelSet {
 public:
  RelSet() = default;
  explicit RelSet(std::size_t capacity) : capacity_(capacity), words_((capacity + 63) / 64, 0) {}

  static RelSet singleton(std::size_t capacity, std::size_t i) {
    RelSet s(capacity);
    s.insert(i);
    return s;
  }
  static RelSet of(std::size_t capacity, std::initializer_list<std::size_t> members) {
    RelSet s(capacity);
    for (auto m : members) s.insert(m);
    return s;
  }
  static RelSet full(std::size_t capacity) {
    RelSet s(capacity);
    for (std::size_t i = 0; i < capacity; ++i) s.insert(i);
    return s;
  }
  static RelSet from_small(SmallRelSet small, std::size_t capacity) {
    require(capacity >= 64 || (small.bits() >> capacity) == 0, "RelSet::from_small: member beyond capacity");
    RelSet s(capacity);
    if (!s.words_.empty()) s.words_[0] = small.bits();
    return s;
  }

  std::size_t capacity() const { return capacity_; }
  const std::vector<std::uint64_t>& words() const { return words_; }

  bool empty() const {
    for (auto w : words_)
      if (w != 0) return false;
    return true;
  }
  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }
  bool contains(std::size_t i) const { return i < capacity_ && ((words_[i / 64] >> (i % 64)) & 1U); }
  void insert(std::size_t i) {
    require(i < capacity_, "RelSet::insert: index " + std::to_string(i) + " beyond capacity");
    words_[i / 64] |= std::uint64_t{1} << (i % 64);
  }
  void erase(std::size_t i) {
    if (i < capacity_) words_[i / 64] &= ~(std::uint64_t{1} << (i % 64));
  }
  std::size_t lowest() const {
    for (std::size_t w = 0; w < words_.size(); ++w)
      if (words_[w] != 0) return w * 64 + static_cast<std::size_t>(std::countr_zero(words_[w]));
    return capacity_;
  }
  RelSet lowest_singleton() const {
    RelSet s(capacity_);
    if (auto low = lowest(); low < capacity_) s.insert(low);
    return s;
  }
  bool is_subset_of(const RelSet& o) const {
    check_same(o);
    for (std::size_t w = 0; w < words_.size(); ++w)
      if (words_[w] & ~o.words_[w]) return false;
    return true;
  }
  bool intersects(const RelSet& o) const {
    check_same(o);
    for (std::size_t w = 0; w < words_.size(); ++w)
      if (words_[w] & o.words_[w]) return true;
    return false;
  }
  /// Narrows to a single word; every member must be below 64.
  SmallRelSet to_small() const {
    for (std::size_t w = 1; w < words_.size(); ++w) require(words_[w] == 0, "RelSet::to_small: member beyond 63");
    return SmallRelSet(words_.empty() ? 0 : words_[0]);
  }

  RelSet& operator|=(const RelSet& o) {
    check_same(o);
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] |= o.words_[w];
    return *this;
  }
  RelSet& operator&=(const RelSet& o) {
    check_same(o);
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] &= o.words_[w];
    return *this;
  }
  RelSet& operator-=(const RelSet& o) {
    check_same(o);
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] &= ~o.words_[w];
    return *this;
  }
  friend RelSet operator|(RelSet a, const RelSet& b) { return a |= b; }
  friend RelSet operator&(RelSet a, const RelSet& b) { return a &= b; }
  friend RelSet operator-(RelSet a, const RelSet& b) { return a -= b; }

  bool operator==(const RelSet& o) const { return capacity_ == o.capacity_ && words_ == o.words_; }
  /// Numeric order of the bitmask (most significant word first); capacity
  /// breaks ties between otherwise equal sets.
  std::strong_ordering operator<=>(const RelSet& o) const {
    const std::size_t n = std::max(words_.size(), o.words_.size());
    for (std::size_t i = n; i-- > 0;) {
      const std::uint64_t a = i < words_.size() ? words_[i] : 0;
      const std::uint64_t b = i < o.words_.size() ? o.words_[i] : 0;
      if (a != b) return a <=> b;
    }
    return capacity_ <=> o.capacity_;
  }

  BitIterator begin() const { return BitIterator(words_.data(), words_.size(), 0); }
  BitIterator end() const { return BitIterator(words_.data(), words_.size(), words_.size()); }

  std::string to_string() const;

 private:
  void check_same(const RelSet& o) const {
    require(capacity_ == o.capacity_, "RelSet: capacity mismatch");
  }

  std::size_t capacity_ = 0;
  std::vector<std::uint64_t> words_;
};

std::string to_string(SmallRelSet s);

// ---------------------------------------------------------------------------
// Combinatorics

/// C(n, k) for n <= 64, 0 when k > n.
std::uint64_t binomial(std::size_t n, std::size_t k);

/// The rank-th k-subset of {0..n-1} in colexicographic order (which equals
/// ascending order of the bitmask value).
SmallRelSet unrank_combination(std::uint64_t rank, std::size_t k, std::size_t n);

/// Inverse of unrank_combination: colex rank of s among |s|-subsets.
std::uint64_t combination_rank(SmallRelSet s);

/// Next larger bitmask with the same popcount (next k-subset in colex order).
constexpr std::uint64_t next_combination(std::uint64_t v) {
  const std::uint64_t t = v | (v - 1);
  return (t + 1) | (((~t & -(~t)) - 1) >> (std::countr_zero(v) + 1));
}

/// Scatters the low bits of mask onto the set bits of superset (bit j of mask
/// lands on the j-th lowest member). No range checking.
inline std::uint64_t deposit_bits(std::uint64_t mask, std::uint64_t superset) {
#ifdef __BMI2__
  return _pdep_u64(mask, superset);
#else
  std::uint64_t result = 0;
  for (; superset != 0 && mask != 0; mask >>= 1) {
    const std::uint64_t low = superset & (~superset + 1);
    if (mask & 1U) result |= low;
    superset ^= low;
  }
  return result;
#endif
}

/// Subset of superset selected by mask, for mask in [1, 2^|superset| - 1].
SmallRelSet deposit_subset(std::uint64_t mask, SmallRelSet superset);

}  // namespace joinopt
