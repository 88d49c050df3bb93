#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <set>
#include <string>

#include "sga/circuit.hpp"
#include "sga/layout.hpp"
#include "sga/multivector.hpp"

namespace sga {

enum class MultiplierRoute {
  faithful,  ///< NAND multiplier netlist run on every blade, then relabelled.
  fast,      ///< Direct blade permutation using host multiplication.
};

inline const char* to_string(MultiplierRoute r) noexcept { return r == MultiplierRoute::fast ? "fast" : "faithful"; }

/// Largest operand width accepted by each route; the superposition has 4^n terms.
inline constexpr std::size_t faithful_width_cap = 10;
inline constexpr std::size_t fast_width_cap = 12;

/// Three n-bit subspaces: 0 and 1 hold x and y on input and the 2n-bit
/// product on output, 2 holds y throughout. The multiplier's scratch places
/// live above subspace 2.
class FactoringLayout {
 public:
  explicit FactoringLayout(std::size_t n) : n_(n) {
    layout_.add("0", n).add("1", n).add("2", n);
  }

  std::size_t width() const noexcept { return n_; }
  std::size_t dimension() const noexcept { return layout_.total_dim(); }
  const Subspace& sub(std::size_t i) const { return layout_[i]; }
  const SubspaceLayout& layout() const noexcept { return layout_; }

  /// The n-blade spanning subspace 2.
  Blade pseudoscalar2() const { return layout_.full_mask(sub(2)); }

 private:
  std::size_t n_;
  SubspaceLayout layout_;
};

inline void check_width_cap(std::size_t n, MultiplierRoute route) {
  const auto cap = route == MultiplierRoute::fast ? fast_width_cap : faithful_width_cap;
  if (n == 0 || n > cap) {
    throw resource_error("operand width " + std::to_string(n) + " outside [1, " + std::to_string(cap) + "] for the " +
                         to_string(route) + " route");
  }
}

/// Sum over x, y in [0, 2^n) of L0(x) L1(y) L2(y), restricted to the given ranges.
inline Multivector build_factoring_superposition(const FactoringLayout& fl, std::uint64_t x_begin, std::uint64_t x_end,
                                                 std::uint64_t y_begin, std::uint64_t y_end) {
  Multivector psi(fl.dimension());
  for (auto x = x_begin; x < x_end; ++x) {
    const auto lx = encode(x, fl.sub(0));
    for (auto y = y_begin; y < y_end; ++y) {
      // Ascending disjoint subspaces: the product is already canonical.
      psi.accumulate(lx | encode(y, fl.sub(1)) | encode(y, fl.sub(2)), 1);
    }
  }
  return psi;
}

inline Multivector build_factoring_superposition(const FactoringLayout& fl, MultiplierRoute route) {
  check_width_cap(fl.width(), route);
  const auto top = std::uint64_t{1} << fl.width();
  return build_factoring_superposition(fl, 0, top, 0, top);
}

/// The multiplication operator T on single blades, and its linear extension T'.
class Multiplier {
 public:
  Multiplier(const FactoringLayout& fl, MultiplierRoute route) : fl_(fl), route_(route) {
    check_width_cap(fl.width(), route);
    if (route == MultiplierRoute::faithful) {
      const auto n = fl.width();
      // Operands stay in subspaces 0 and 1; scratch moves above subspace 2.
      circuit_ = build_nand_multiplier(n).relocated([n](Place p) { return p < 2 * n ? p : p + n; });
      circuit_dim_ = circuit_.place_count();
      for (Place p = 0; p < 2 * n; ++p) discard_.insert(p);
      for (auto p : circuit_.ancillas()) discard_.insert(p);
      for (std::size_t k = 0; k < circuit_.outputs().size(); ++k) place_map_[circuit_.outputs()[k]] = k;
    }
  }

  MultiplierRoute route() const noexcept { return route_; }
  const Netlist& circuit() const noexcept { return circuit_; }

  /// Number of times the whole operator T' has been applied.
  std::size_t applications() const noexcept { return applications_; }

  /// T(L0(x) L1(y) L2(y)) = L0,1(xy) L2(y).
  Multivector on_blade(const Blade& b) const {
    if (route_ == MultiplierRoute::fast) {
      const auto x = decode(b, fl_.sub(0));
      const auto y = decode(b, fl_.sub(1));
      const auto kept = encode(decode(b, fl_.sub(2)), fl_.sub(2));
      return Multivector::from_blade(fl_.dimension(), encode_wide(x * y, fl_.sub(0), fl_.sub(1)) | kept);
    }
    const auto run = run_netlist(circuit_, MemoryBlade{b, 1});
    const auto memory = Multivector::from_blade(circuit_dim_, run.mask, run.sign);
    return relabel_and_discard(memory, place_map_, discard_, fl_.dimension());
  }

  /// T' applied to a superposition: one operator application.
  Multivector operator()(const Multivector& a) {
    ++applications_;
    return linear_extend([this](const Blade& b) { return on_blade(b); }, fl_.dimension())(a);
  }

 private:
  FactoringLayout fl_;
  MultiplierRoute route_;
  Netlist circuit_;
  std::size_t circuit_dim_ = 0;
  std::map<Place, Place> place_map_;
  std::set<Place> discard_;
  std::size_t applications_ = 0;
};

inline Multivector multiply_all(const Multivector& a, const FactoringLayout& fl, MultiplierRoute route) {
  Multiplier t(fl, route);
  return t(a);
}

inline void check_target(std::uint64_t z, const FactoringLayout& fl) {
  if (z == 0 || (z >> fl.width()) != 0) {
    throw encoding_range_error("target " + std::to_string(z) + " outside [1, 2^" + std::to_string(fl.width()) + ")");
  }
}

/// Keeps the terms whose subspaces 0,1 hold the 2n-bit value z.
inline Multivector project_product(const Multivector& a, std::uint64_t z, const FactoringLayout& fl) {
  check_target(z, fl);
  return project_terms(a, [&](const Blade& b) { return decode_wide(b, fl.sub(0), fl.sub(1)) == z; });
}

/// Values coded in subspace 2.
inline std::set<std::uint64_t> read_divisors(const Multivector& a, const FactoringLayout& fl) {
  std::set<std::uint64_t> out;
  for (const auto& [b, c] : a) out.insert(decode(b, fl.sub(2)));
  return out;
}

struct FactoringResult {
  std::set<std::uint64_t> divisors;
  std::size_t terms_before = 0;  ///< Superposition size.
  std::size_t terms_multiplied = 0;
  std::size_t terms_after = 0;  ///< After projecting on z.
  std::size_t multiplier_applications = 0;
};

/// Superposition, one application of T', projection on z, readout.
inline FactoringResult factor(std::uint64_t z, std::size_t n, MultiplierRoute route) {
  const FactoringLayout fl(n);
  check_target(z, fl);
  Multiplier t(fl, route);
  const auto psi = build_factoring_superposition(fl, route);
  const auto multiplied = t(psi);
  const auto projected = project_product(multiplied, z, fl);
  return {read_divisors(projected, fl), psi.size(), multiplied.size(), projected.size(), t.applications()};
}

}  // namespace sga
