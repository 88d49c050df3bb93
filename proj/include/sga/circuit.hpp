#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "sga/blade.hpp"
#include "sga/errors.hpp"
#include "sga/multivector.hpp"

namespace sga {

/// Index of one bit of the blade memory (one basis dimension).
using Place = std::size_t;

/// A blade read as a bit memory: place k holds 1 iff e_k is a factor.
/// The sign accumulates reordering signs and is never consulted by bit semantics.
struct MemoryBlade {
  Blade mask;
  int sign = 1;

  friend bool operator==(const MemoryBlade&, const MemoryBlade&) = default;
};

inline bool bit_read(const MemoryBlade& m, Place k) noexcept { return m.mask.test(k); }

/// Writes NAND(p, q) into the empty place r.
struct NandGate {
  Place p = 0;
  Place q = 0;
  Place r = 0;

  friend bool operator==(const NandGate&, const NandGate&) = default;
};

/// (bp·bq + e_r(1 - bp·bq)) M: if both inputs are 1 the memory is returned
/// as is, otherwise e_r is multiplied in from the left.
inline MemoryBlade nand_apply(const NandGate& g, MemoryBlade m) {
  if (bit_read(m, g.r)) {
    throw target_occupied("NAND target place " + std::to_string(g.r) + " already holds 1");
  }
  if (bit_read(m, g.p) && bit_read(m, g.q)) return m;
  // e_r M: e_r moves right past every factor of M below r.
  if (m.mask.count_below(g.r) % 2 != 0) m.sign = -m.sign;
  m.mask.set(g.r);
  return m;
}

/// Ordered NAND gates over a write-once place memory.
class Netlist {
 public:
  Netlist() = default;

  /// Throws validation_error naming the first offending gate.
  Netlist(std::vector<Place> inputs, std::vector<Place> outputs, std::vector<NandGate> gates)
      : inputs_(std::move(inputs)), outputs_(std::move(outputs)), gates_(std::move(gates)) {
    validate();
  }

  const std::vector<Place>& inputs() const noexcept { return inputs_; }
  const std::vector<Place>& outputs() const noexcept { return outputs_; }
  const std::vector<NandGate>& gates() const noexcept { return gates_; }

  /// Gate targets that are not declared outputs.
  std::vector<Place> ancillas() const {
    const std::set<Place> outs(outputs_.begin(), outputs_.end());
    std::vector<Place> out;
    for (const auto& g : gates_) {
      if (!outs.contains(g.r)) out.push_back(g.r);
    }
    return out;
  }

  /// One past the highest place mentioned anywhere.
  Place place_count() const noexcept {
    Place n = 0;
    for (auto p : inputs_) n = std::max(n, p + 1);
    for (auto p : outputs_) n = std::max(n, p + 1);
    for (const auto& g : gates_) n = std::max({n, g.p + 1, g.q + 1, g.r + 1});
    return n;
  }

  /// Copy with every place renamed through `f`, which must be injective.
  template <typename F>
  Netlist relocated(F&& f) const {
    std::vector<Place> in;
    std::vector<Place> out;
    std::vector<NandGate> gs;
    for (auto p : inputs_) in.push_back(f(p));
    for (auto p : outputs_) out.push_back(f(p));
    for (const auto& g : gates_) gs.push_back({f(g.p), f(g.q), f(g.r)});
    return {std::move(in), std::move(out), std::move(gs)};
  }

 private:
  void validate() const {
    std::set<Place> defined(inputs_.begin(), inputs_.end());
    if (defined.size() != inputs_.size()) throw validation_error("duplicate INPUT place");
    std::set<Place> written;
    for (std::size_t i = 0; i < gates_.size(); ++i) {
      const auto& g = gates_[i];
      const auto where = "gate " + std::to_string(i) + " (NAND " + std::to_string(g.p) + " " + std::to_string(g.q) +
                         " " + std::to_string(g.r) + "): ";
      if (g.p == g.r || g.q == g.r) throw validation_error(where + "reads its own output place");
      if (defined.contains(g.r)) {
        throw validation_error(where + (written.contains(g.r) ? "place " + std::to_string(g.r) + " written twice"
                                                              : "writes input place " + std::to_string(g.r)));
      }
      if (!defined.contains(g.p) || !defined.contains(g.q)) {
        throw validation_error(where + "reads a place that is neither an input nor an earlier gate output");
      }
      defined.insert(g.r);
      written.insert(g.r);
    }
  }

  std::vector<Place> inputs_;
  std::vector<Place> outputs_;
  std::vector<NandGate> gates_;
};

/// Applies the gates in order. Every gate target must start empty.
inline MemoryBlade run_netlist(const Netlist& nl, MemoryBlade m) {
  for (const auto& g : nl.gates()) {
    if (bit_read(m, g.r)) {
      throw target_occupied("place " + std::to_string(g.r) + " is not empty before the circuit runs");
    }
  }
  for (const auto& g : nl.gates()) m = nand_apply(g, std::move(m));
  return m;
}

/// Reads the declared outputs of a memory as an integer, first output least significant.
inline std::uint64_t read_outputs(const Netlist& nl, const MemoryBlade& m) {
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < nl.outputs().size() && i < 64; ++i) {
    if (bit_read(m, nl.outputs()[i])) v |= std::uint64_t{1} << i;
  }
  return v;
}

namespace detail {

// Allocates fresh places and emits NAND-only cells. Absent operands
// (std::nullopt) stand for constant 0 and are folded away.
class NandBuilder {
 public:
  explicit NandBuilder(Place first_free) : next_(first_free) {}

  Place fresh() { return next_++; }

  Place nand(Place a, Place b) {
    const auto r = fresh();
    gates_.push_back({a, b, r});
    return r;
  }

  Place inv(Place a) { return nand(a, a); }
  Place and2(Place a, Place b) { return inv(nand(a, b)); }

  /// (sum, carry) of a + b.
  std::pair<Place, Place> half_adder(Place a, Place b) {
    const auto t = nand(a, b);
    const auto sum = nand(nand(a, t), nand(b, t));
    return {sum, inv(t)};
  }

  /// (sum, carry) of a + b + c, nine gates.
  std::pair<Place, Place> full_adder(Place a, Place b, Place c) {
    const auto t1 = nand(a, b);
    const auto axb = nand(nand(a, t1), nand(b, t1));
    const auto t4 = nand(axb, c);
    const auto sum = nand(nand(axb, t4), nand(c, t4));
    return {sum, nand(t4, t1)};
  }

  /// Sum and carry of up to three optional bits.
  std::pair<std::optional<Place>, std::optional<Place>> add_bits(std::optional<Place> a, std::optional<Place> b,
                                                                 std::optional<Place> c) {
    std::vector<Place> present;
    for (auto x : {a, b, c}) {
      if (x) present.push_back(*x);
    }
    switch (present.size()) {
      case 0:
        return {std::nullopt, std::nullopt};
      case 1:
        return {present[0], std::nullopt};
      case 2: {
        const auto [s, k] = half_adder(present[0], present[1]);
        return {s, k};
      }
      default: {
        const auto [s, k] = full_adder(present[0], present[1], present[2]);
        return {s, k};
      }
    }
  }

  std::vector<NandGate> take_gates() { return std::move(gates_); }

 private:
  Place next_;
  std::vector<NandGate> gates_;
};

}  // namespace detail

/// Shift-and-add array multiplier built only from NAND gates.
///
/// Inputs: a on places [0, n), b on places [n, 2n), least significant bit
/// first. Outputs: the 2n product bits, least significant first. Every gate
/// writes a fresh place starting at 2n.
inline Netlist build_nand_multiplier(std::size_t n) {
  if (n == 0) throw error("multiplier width must be at least 1");
  std::vector<Place> inputs;
  for (Place i = 0; i < 2 * n; ++i) inputs.push_back(i);
  const auto a = [](std::size_t i) { return static_cast<Place>(i); };
  const auto b = [n](std::size_t i) { return static_cast<Place>(n + i); };

  detail::NandBuilder nb(2 * n);
  // acc[k] is bit k of the running sum; nullopt means constant 0.
  std::vector<std::optional<Place>> acc(2 * n);
  for (std::size_t j = 0; j < n; ++j) acc[j] = nb.and2(a(j), b(0));
  for (std::size_t i = 1; i < n; ++i) {
    std::optional<Place> carry;
    for (std::size_t k = i; k < 2 * n; ++k) {
      const std::optional<Place> pp = k - i < n ? std::optional<Place>(nb.and2(a(k - i), b(i))) : std::nullopt;
      if (!pp && !carry) break;
      const auto [s, c] = nb.add_bits(acc[k], pp, carry);
      acc[k] = s;
      carry = c;
    }
  }

  std::vector<Place> outputs;
  for (auto& bit : acc) outputs.push_back(bit ? *bit : nb.fresh());
  return {std::move(inputs), std::move(outputs), nb.take_gates()};
}

/// Extends a blade-to-multivector map linearly: each term is mapped, scaled
/// by its coefficient, and the images are summed.
template <typename BladeOp>
auto linear_extend(BladeOp op, std::optional<std::size_t> out_dimension = std::nullopt) {
  return [op = std::move(op), out_dimension](const Multivector& a) {
    Multivector out(out_dimension.value_or(a.dimension()));
    for (const auto& [b, c] : a) {
      const Multivector image = op(b);
      Multivector::require_same_dimension(out, image);
      for (const auto& [ib, ic] : image) out.accumulate(ib, ic * c);
    }
    return out;
  };
}

/// Rewrites every term's mask: bits in `discard` are dropped, bits in
/// `place_map` are moved, all other bits stay. Coefficient signs are
/// normalized to + before identical masks are summed.
///
/// Throws collision_error if two distinct source masks land on the same
/// target mask (the discarded bits were not a function of the kept bits),
/// and validation_error if two kept bits land on the same place.
inline Multivector relabel_and_discard(const Multivector& a, const std::map<Place, Place>& place_map,
                                       const std::set<Place>& discard,
                                       std::optional<std::size_t> out_dimension = std::nullopt) {
  Multivector out(out_dimension.value_or(a.dimension()));
  std::map<Blade, Blade> source_of;
  for (const auto& [b, c] : a) {
    Blade target;
    bool clash = false;
    b.for_each_index([&](Place k) {
      if (discard.contains(k)) return;
      const auto it = place_map.find(k);
      const Place dst = it == place_map.end() ? k : it->second;
      if (target.test(dst)) clash = true;
      target.set(dst);
    });
    if (clash) throw validation_error("place map is not injective on kept places of blade 0x" + b.to_hex());
    const auto [it, inserted] = source_of.try_emplace(target, b);
    if (!inserted && it->second != b) {
      throw collision_error("blades 0x" + it->second.to_hex() + " and 0x" + b.to_hex() + " both relabel to 0x" +
                            target.to_hex());
    }
    out.accumulate(target, abs(c));
  }
  return out;
}

}  // namespace sga
