#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "sga/blade.hpp"
#include "sga/errors.hpp"

namespace sga {

/// A contiguous block of global dimensions [offset, offset + width) that holds one coded number.
struct Subspace {
  std::string name;
  std::size_t width = 0;
  std::size_t offset = 0;

  std::uint64_t capacity_mask() const noexcept {
    return width >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << width) - 1;
  }
};

/// Partition of the global dimensions into named, disjoint, contiguous
/// subspaces, optionally followed by a tail of extra dimensions.
/// Offsets are assigned cumulatively in declaration order.
class SubspaceLayout {
 public:
  SubspaceLayout() = default;

  SubspaceLayout& add(std::string name, std::size_t width) {
    if (tail_ != 0) throw error("cannot add subspace '" + name + "' after the tail");
    if (width == 0 || width > 64) {
      throw error("subspace '" + name + "' width must be in [1, 64], got " + std::to_string(width));
    }
    if (index_.contains(name)) throw error("duplicate subspace name '" + name + "'");
    index_.emplace(name, subspaces_.size());
    subspaces_.push_back({std::move(name), width, total_});
    total_ += width;
    return *this;
  }

  /// Declares `count` extra dimensions above every subspace.
  SubspaceLayout& add_tail(std::size_t count) {
    tail_ += count;
    return *this;
  }

  std::size_t total_dim() const noexcept { return total_ + tail_; }
  std::size_t tail_offset() const noexcept { return total_; }
  std::size_t tail_size() const noexcept { return tail_; }
  std::size_t count() const noexcept { return subspaces_.size(); }

  const Subspace& operator[](std::size_t i) const { return subspaces_.at(i); }

  const Subspace& at(const std::string& name) const {
    const auto it = index_.find(name);
    if (it == index_.end()) throw error("unknown subspace '" + name + "'");
    return subspaces_[it->second];
  }

  const std::vector<Subspace>& subspaces() const noexcept { return subspaces_; }

  /// Mask with every dimension of the subspace set (the pseudoscalar I_m of that subspace).
  Blade full_mask(const Subspace& s) const {
    Blade b;
    b.deposit(s.offset, s.width, s.capacity_mask());
    return b;
  }

 private:
  std::vector<Subspace> subspaces_;
  std::map<std::string, std::size_t> index_;
  std::size_t total_ = 0;
  std::size_t tail_ = 0;
};

/// Codes x as the blade whose factors mark its 1-bits, least significant bit
/// at the subspace's lowest dimension. x = 0 gives the scalar blade.
inline Blade encode(std::uint64_t x, const Subspace& s) {
  if ((x & ~s.capacity_mask()) != 0) {
    throw encoding_range_error("value " + std::to_string(x) + " does not fit " + std::to_string(s.width) +
                               "-bit subspace '" + s.name + "'");
  }
  Blade b;
  b.deposit(s.offset, s.width, x);
  return b;
}

inline Blade encode(std::uint64_t x, const std::string& subspace, const SubspaceLayout& layout) {
  return encode(x, layout.at(subspace));
}

/// Reads the number coded in subspace s; bits outside s are ignored.
inline std::uint64_t decode(const Blade& b, const Subspace& s) noexcept { return b.extract(s.offset, s.width); }

inline std::uint64_t decode(const Blade& b, const std::string& subspace, const SubspaceLayout& layout) {
  return decode(b, layout.at(subspace));
}

/// True if any bit of subspace s is set.
inline bool occupied(const Blade& b, const Subspace& s) noexcept { return decode(b, s) != 0; }

/// Codes a 2n-bit number across two n-bit subspaces: low half in `lo`, high half in `hi`.
inline Blade encode_wide(std::uint64_t x, const Subspace& lo, const Subspace& hi) {
  if (lo.width != hi.width) throw error("wide coding needs equal subspace widths");
  const auto n = lo.width;
  if (2 * n < 64 && (x >> (2 * n)) != 0) {
    throw encoding_range_error("value " + std::to_string(x) + " does not fit " + std::to_string(2 * n) +
                               " bits across '" + lo.name + "' and '" + hi.name + "'");
  }
  const auto high = n >= 64 ? std::uint64_t{0} : x >> n;
  return encode(x & lo.capacity_mask(), lo) | encode(high, hi);
}

inline Blade encode_wide(std::uint64_t x, const std::string& lo, const std::string& hi,
                         const SubspaceLayout& layout) {
  return encode_wide(x, layout.at(lo), layout.at(hi));
}

inline std::uint64_t decode_wide(const Blade& b, const Subspace& lo, const Subspace& hi) noexcept {
  return decode(b, lo) | (lo.width >= 64 ? 0 : decode(b, hi) << lo.width);
}

}  // namespace sga
