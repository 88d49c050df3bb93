#pragma once

#include <algorithm>
#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/container/small_vector.hpp>

#include "sga/errors.hpp"

namespace sga {

/// A basis blade e_{i1} e_{i2} ... e_{ik} (i1 < i2 < ... < ik) stored as a
/// variable-width bitmask. The empty mask is the scalar blade 1.
///
/// Storage is little-endian 64-bit words with trailing zero words trimmed, so
/// two blades are equal exactly when their word sequences are equal and
/// ordering by (word count, words from the top) is ordering by numeric mask
/// value.
class Blade {
 public:
  using word_type = std::uint64_t;
  static constexpr std::size_t word_bits = 64;

  Blade() = default;

  Blade(std::initializer_list<std::size_t> indices) {
    for (auto i : indices) set(i);
  }

  template <typename Range>
  static Blade from_indices(const Range& indices) {
    Blade b;
    for (auto i : indices) b.set(static_cast<std::size_t>(i));
    return b;
  }

  /// Blade from the low bits of a single machine word.
  static Blade from_word(word_type w) {
    Blade b;
    if (w != 0) b.words_.push_back(w);
    return b;
  }

  bool is_scalar() const noexcept { return words_.empty(); }

  bool test(std::size_t i) const noexcept {
    const auto w = i / word_bits;
    return w < words_.size() && ((words_[w] >> (i % word_bits)) & 1U) != 0;
  }

  void set(std::size_t i) {
    grow(i / word_bits + 1);
    words_[i / word_bits] |= word_type{1} << (i % word_bits);
  }

  void reset(std::size_t i) noexcept {
    const auto w = i / word_bits;
    if (w >= words_.size()) return;
    words_[w] &= ~(word_type{1} << (i % word_bits));
    trim();
  }

  void flip(std::size_t i) {
    if (test(i)) {
      reset(i);
    } else {
      set(i);
    }
  }

  /// Number of basis vectors in the product.
  std::size_t grade() const noexcept {
    std::size_t g = 0;
    for (auto w : words_) g += static_cast<std::size_t>(std::popcount(w));
    return g;
  }

  /// One past the highest set index; 0 for the scalar blade.
  std::size_t span() const noexcept {
    if (words_.empty()) return 0;
    return (words_.size() - 1) * word_bits + static_cast<std::size_t>(std::bit_width(words_.back()));
  }

  /// Number of set indices strictly below i.
  std::size_t count_below(std::size_t i) const noexcept {
    const auto w = i / word_bits;
    std::size_t n = 0;
    for (std::size_t k = 0; k < std::min(w, words_.size()); ++k) {
      n += static_cast<std::size_t>(std::popcount(words_[k]));
    }
    if (w < words_.size()) {
      const auto bit = i % word_bits;
      if (bit != 0) n += static_cast<std::size_t>(std::popcount(words_[w] & ((word_type{1} << bit) - 1)));
    }
    return n;
  }

  /// Bits [offset, offset + width) as an integer, bit `offset` least significant. width <= 64.
  word_type extract(std::size_t offset, std::size_t width) const noexcept {
    if (width == 0) return 0;
    const auto w = offset / word_bits;
    const auto shift = offset % word_bits;
    word_type lo = w < words_.size() ? words_[w] >> shift : 0;
    if (shift != 0 && w + 1 < words_.size()) lo |= words_[w + 1] << (word_bits - shift);
    return width >= word_bits ? lo : lo & ((word_type{1} << width) - 1);
  }

  /// ORs `value` (width <= 64 bits) into bits [offset, offset + width).
  void deposit(std::size_t offset, std::size_t width, word_type value) {
    if (width < word_bits) value &= (word_type{1} << width) - 1;
    if (value == 0) return;
    const auto w = offset / word_bits;
    const auto shift = offset % word_bits;
    grow(w + 2);
    words_[w] |= value << shift;
    if (shift != 0) words_[w + 1] |= value >> (word_bits - shift);
    trim();
  }

  /// Clears bits [offset, offset + width).
  void clear_range(std::size_t offset, std::size_t width) noexcept {
    for (std::size_t i = offset; i < offset + width && i / word_bits < words_.size(); ++i) {
      words_[i / word_bits] &= ~(word_type{1} << (i % word_bits));
    }
    trim();
  }

  std::span<const word_type> words() const noexcept { return {words_.data(), words_.size()}; }

  std::vector<std::size_t> indices() const {
    std::vector<std::size_t> out;
    for_each_index([&](std::size_t i) { out.push_back(i); });
    return out;
  }

  template <typename F>
  void for_each_index(F&& f) const {
    for (std::size_t k = 0; k < words_.size(); ++k) {
      auto w = words_[k];
      while (w != 0) {
        f(k * word_bits + static_cast<std::size_t>(std::countr_zero(w)));
        w &= w - 1;
      }
    }
  }

  Blade& operator^=(const Blade& o) { return combine(o, [](word_type a, word_type b) { return a ^ b; }); }
  Blade& operator|=(const Blade& o) { return combine(o, [](word_type a, word_type b) { return a | b; }); }
  Blade& operator&=(const Blade& o) { return combine(o, [](word_type a, word_type b) { return a & b; }); }

  friend Blade operator^(Blade a, const Blade& b) { return a ^= b; }
  friend Blade operator|(Blade a, const Blade& b) { return a |= b; }
  friend Blade operator&(Blade a, const Blade& b) { return a &= b; }

  bool intersects(const Blade& o) const noexcept {
    const auto n = std::min(words_.size(), o.words_.size());
    for (std::size_t k = 0; k < n; ++k) {
      if ((words_[k] & o.words_[k]) != 0) return true;
    }
    return false;
  }

  friend bool operator==(const Blade& a, const Blade& b) noexcept {
    return std::ranges::equal(a.words_, b.words_);
  }

  friend std::strong_ordering operator<=>(const Blade& a, const Blade& b) noexcept {
    if (a.words_.size() != b.words_.size()) return a.words_.size() <=> b.words_.size();
    for (auto k = a.words_.size(); k-- > 0;) {
      if (a.words_[k] != b.words_[k]) return a.words_[k] <=> b.words_[k];
    }
    return std::strong_ordering::equal;
  }

  /// Lowercase hex of the mask value without leading zeros; "0" for the scalar blade.
  std::string to_hex() const {
    if (words_.empty()) return "0";
    static constexpr char digits[] = "0123456789abcdef";
    std::string out;
    for (auto k = words_.size(); k-- > 0;) {
      for (int nib = 15; nib >= 0; --nib) {
        const auto d = static_cast<unsigned>((words_[k] >> (nib * 4)) & 0xFU);
        if (out.empty() && d == 0) continue;
        out.push_back(digits[d]);
      }
    }
    return out;
  }

  /// Inverse of to_hex; rejects uppercase, empty input and non-canonical leading zeros.
  static Blade from_hex(std::string_view hex) {
    if (hex.empty()) throw parse_error("empty blade mask");
    if (hex.size() > 1 && hex.front() == '0') throw parse_error("blade mask has leading zeros");
    Blade b;
    std::size_t bit = 0;
    for (auto it = hex.rbegin(); it != hex.rend(); ++it, bit += 4) {
      word_type d = 0;
      if (*it >= '0' && *it <= '9') {
        d = static_cast<word_type>(*it - '0');
      } else if (*it >= 'a' && *it <= 'f') {
        d = static_cast<word_type>(*it - 'a' + 10);
      } else {
        throw parse_error("invalid hex digit in blade mask");
      }
      b.deposit(bit, 4, d);
    }
    return b;
  }

  std::size_t hash() const noexcept {
    std::size_t h = 0x9e3779b97f4a7c15ULL;
    for (auto w : words_) h ^= std::hash<word_type>{}(w) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }

 private:
  void grow(std::size_t n) {
    if (words_.size() < n) words_.resize(n, 0);
  }

  void trim() noexcept {
    while (!words_.empty() && words_.back() == 0) words_.pop_back();
  }

  template <typename Op>
  Blade& combine(const Blade& o, Op op) {
    grow(o.words_.size());
    for (std::size_t k = 0; k < words_.size(); ++k) {
      words_[k] = op(words_[k], k < o.words_.size() ? o.words_[k] : 0);
    }
    trim();
    return *this;
  }

  boost::container::small_vector<word_type, 4> words_;
};

/// Sign picked up by reordering the concatenation a·b into canonical
/// ascending order under e_i e_j = -e_j e_i (i != j) and e_i^2 = +1.
///
/// Every factor e_j of b must move left past each factor e_i of a with i > j;
/// the sign is the parity of that count.
inline int reorder_sign(const Blade& a, const Blade& b) noexcept {
  const auto aw = a.words();
  const auto bw = b.words();
  const auto n = std::min(aw.size(), bw.size());
  // Parity of set bits of a in words strictly above k, maintained top-down.
  unsigned above = 0;
  for (auto k = aw.size(); k-- > n;) above ^= static_cast<unsigned>(std::popcount(aw[k])) & 1U;
  unsigned parity = 0;
  for (auto k = n; k-- > 0;) {
    auto bits = bw[k];
    while (bits != 0) {
      const auto j = static_cast<unsigned>(std::countr_zero(bits));
      bits &= bits - 1;
      const auto higher = j == 63 ? Blade::word_type{0} : aw[k] & (~Blade::word_type{0} << (j + 1));
      parity ^= above ^ (static_cast<unsigned>(std::popcount(higher)) & 1U);
    }
    above ^= static_cast<unsigned>(std::popcount(aw[k])) & 1U;
  }
  return parity == 0 ? 1 : -1;
}

/// Product of two basis blades: a signed basis blade.
struct SignedBlade {
  Blade blade;
  int sign = 1;

  friend bool operator==(const SignedBlade&, const SignedBlade&) = default;
};

inline SignedBlade blade_mul(const Blade& a, const Blade& b) {
  return {a ^ b, reorder_sign(a, b)};
}

}  // namespace sga

template <>
struct std::hash<sga::Blade> {
  std::size_t operator()(const sga::Blade& b) const noexcept { return b.hash(); }
};
