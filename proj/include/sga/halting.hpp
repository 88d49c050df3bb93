#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sga/errors.hpp"
#include "sga/layout.hpp"
#include "sga/multivector.hpp"
#include "sga/turing.hpp"

// Bounded halting probe: the superposition-of-all-runs construction truncated
// to K steps, a B-cell tape and finite enumerated machine, config and state
// sets. A nonzero result means "halts within K steps", nothing more.

namespace sga::halting {

/// Largest tape accepted; config codes must fit a 64-bit subspace.
inline constexpr std::size_t max_cells = 32;

struct TruncationParams {
  std::size_t steps = 1;  ///< K
  std::size_t cells = 1;  ///< B
  std::vector<std::uint64_t> machine_set;
  std::vector<std::uint64_t> config_set;
  std::vector<std::uint64_t> state_set;
  std::size_t term_cap = std::size_t{1} << 20;
};

/// Machine set {spec}, every in-tape config, REJECT and every state of spec.
inline TruncationParams default_params(const tm::TMSpec& spec, std::size_t steps, std::size_t cells) {
  TruncationParams p;
  p.steps = steps;
  p.cells = cells;
  p.machine_set = {tm::encode_machine(spec)};
  p.config_set = tm::all_config_codes(cells);
  p.state_set = tm::all_state_codes(spec);
  return p;
}

/// Subspace 0 holds the machine code m; for step i, subspaces 4i+1 and 4i+2
/// hold the memory and state read by the step, 4i+3 and 4i+4 the memory and
/// state it writes.
class SlotLayout {
 public:
  explicit SlotLayout(TruncationParams params) : p_(std::move(params)) {
    if (p_.steps == 0) throw error("step count K must be at least 1");
    if (p_.cells == 0 || p_.cells > max_cells) {
      throw error("tape length B must be in [1, " + std::to_string(max_cells) + "]");
    }
    if (p_.machine_set.empty()) throw error("machine set is empty");
    normalize(p_.machine_set);
    normalize(p_.config_set);
    normalize(p_.state_set);

    std::size_t most_states = 1;
    for (auto m : p_.machine_set) {
      auto spec = tm::decode_machine(m);
      if (!spec) throw parse_error("machine code " + std::to_string(m) + " is not a valid machine encoding");
      most_states = std::max(most_states, spec->state_count());
      specs_.emplace(m, std::move(*spec));
    }
    const auto machine_width = std::max<std::size_t>(1, std::bit_width(p_.machine_set.back()));
    const auto config_width = tm::config_width(p_.cells);
    auto state_width = tm::state_width(most_states);
    if (!p_.state_set.empty()) {
      state_width = std::max<std::size_t>(state_width, std::bit_width(p_.state_set.back()));
    }
    if (!p_.config_set.empty() && std::bit_width(p_.config_set.back()) > config_width) {
      throw encoding_range_error("config code " + std::to_string(p_.config_set.back()) + " does not fit " +
                                 std::to_string(config_width) + " bits");
    }

    layout_.add("m", machine_width);
    for (std::size_t i = 0; i < p_.steps; ++i) {
      const auto k = std::to_string(i);
      layout_.add("mem_in" + k, config_width)
          .add("state_in" + k, state_width)
          .add("mem_out" + k, config_width)
          .add("state_out" + k, state_width);
    }
  }

  const TruncationParams& params() const noexcept { return p_; }
  std::size_t steps() const noexcept { return p_.steps; }
  std::size_t cells() const noexcept { return p_.cells; }
  std::size_t dimension() const noexcept { return layout_.total_dim(); }
  const SubspaceLayout& layout() const noexcept { return layout_; }

  const Subspace& machine() const { return layout_[0]; }
  const Subspace& mem_in(std::size_t i) const { return layout_[4 * i + 1]; }
  const Subspace& state_in(std::size_t i) const { return layout_[4 * i + 2]; }
  const Subspace& mem_out(std::size_t i) const { return layout_[4 * i + 3]; }
  const Subspace& state_out(std::size_t i) const { return layout_[4 * i + 4]; }

  /// Decoded machine for code m, or nullptr if m is not in the machine set.
  const tm::TMSpec* spec(std::uint64_t m) const {
    const auto it = specs_.find(m);
    return it == specs_.end() ? nullptr : &it->second;
  }

  bool has_config(std::uint64_t x) const { return std::ranges::binary_search(p_.config_set, x); }
  bool has_state(std::uint64_t s) const { return std::ranges::binary_search(p_.state_set, s); }

  /// One machine step on codes. Anything outside the enumerated sets goes to REJECT.
  std::pair<std::uint64_t, std::uint64_t> step(std::uint64_t m, std::uint64_t x, std::uint64_t s) const {
    const auto* sp = spec(m);
    const auto reject = tm::state_code(tm::MachineState::reject());
    if (sp == nullptr || !has_config(x) || !has_state(s)) return {x, reject};
    const auto [c, st] = tm::tm_step(*sp, tm::config_from_code(x, p_.cells), tm::state_from_code(s), p_.cells);
    return {tm::config_code(c, p_.cells), tm::state_code(st)};
  }

 private:
  static void normalize(std::vector<std::uint64_t>& v) {
    std::ranges::sort(v);
    v.erase(std::unique(v.begin(), v.end()), v.end());
  }

  TruncationParams p_;
  SubspaceLayout layout_;
  std::map<std::uint64_t, tm::TMSpec> specs_;
};

/// U_i on one blade: reads m and step i's inputs, multiplies the coded
/// outputs in from the right.
inline SignedBlade apply_step(const Blade& b, std::size_t i, const SlotLayout& sl) {
  if (occupied(b, sl.mem_out(i)) || occupied(b, sl.state_out(i))) {
    throw target_occupied("output slots of step " + std::to_string(i) + " are not empty");
  }
  const auto [x, s] = sl.step(decode(b, sl.machine()), decode(b, sl.mem_in(i)), decode(b, sl.state_in(i)));
  return blade_mul(b, encode(x, sl.mem_out(i)) | encode(s, sl.state_out(i)));
}

inline Multivector apply_U(const Multivector& a, std::size_t i, const SlotLayout& sl) {
  if (i >= sl.steps()) throw error("step index " + std::to_string(i) + " beyond K");
  Multivector out(a.dimension());
  for (const auto& [b, c] : a) {
    const auto p = apply_step(b, i, sl);
    out.accumulate(p.blade, p.sign, c);
  }
  return out;
}

/// U_{K-1} ... U_1 U_0 A.
inline Multivector apply_all_steps(Multivector a, const SlotLayout& sl) {
  for (std::size_t i = 0; i < sl.steps(); ++i) a = apply_U(a, i, sl);
  return a;
}

namespace detail {

inline std::size_t checked_mul(std::size_t a, std::size_t b, std::size_t cap) {
  if (a != 0 && b > cap / a) throw resource_error("construction exceeds the term cap of " + std::to_string(cap));
  const auto r = a * b;
  if (r > cap) throw resource_error("construction exceeds the term cap of " + std::to_string(cap));
  return r;
}

inline Multivector coded_sum(const std::vector<std::uint64_t>& values, const Subspace& s, std::size_t dim) {
  Multivector out(dim);
  for (auto v : values) out.accumulate(encode(v, s), 1);
  return out;
}

}  // namespace detail

/// Number of terms build_psi0 would produce: |M| (|X| |S|)^K.
inline std::size_t free_term_count(const SlotLayout& sl) {
  const auto& p = sl.params();
  const auto cap = p.term_cap;
  std::size_t n = p.machine_set.size();
  for (std::size_t i = 0; i < p.steps; ++i) {
    n = detail::checked_mul(n, p.config_set.size(), cap);
    n = detail::checked_mul(n, p.state_set.size(), cap);
  }
  return n;
}

/// (Σ_m L0(m)) Π_i (Σ_x L(4i+1)(x) Σ_s L(4i+2)(s)), every per-slot sum free.
inline Multivector build_psi0(const SlotLayout& sl) {
  free_term_count(sl);
  const auto dim = sl.dimension();
  const auto& p = sl.params();
  auto psi = detail::coded_sum(p.machine_set, sl.machine(), dim);
  for (std::size_t i = 0; i < sl.steps(); ++i) {
    psi = psi * detail::coded_sum(p.config_set, sl.mem_in(i), dim);
    psi = psi * detail::coded_sum(p.state_set, sl.state_in(i), dim);
  }
  return psi;
}

/// Keeps terms where each step's outputs equal the next step's inputs.
inline Multivector consistency_project(const Multivector& a, const SlotLayout& sl) {
  return project_terms(a, [&](const Blade& b) {
    for (std::size_t i = 0; i + 1 < sl.steps(); ++i) {
      if (decode(b, sl.mem_out(i)) != decode(b, sl.mem_in(i + 1)) ||
          decode(b, sl.state_out(i)) != decode(b, sl.state_in(i + 1))) {
        return false;
      }
    }
    return true;
  });
}

/// Keeps terms running machine m from config x in m's start state.
inline Multivector instance_project(const Multivector& a, std::uint64_t m, std::uint64_t x, const SlotLayout& sl) {
  const auto* sp = sl.spec(m);
  if (sp == nullptr) throw out_of_set_error("machine code " + std::to_string(m) + " is not in the machine set");
  if (!sl.has_config(x)) throw out_of_set_error("config code " + std::to_string(x) + " is not in the config set");
  const auto start = tm::state_code(tm::MachineState::of(*sp, sp->start));
  return project_terms(a, [&](const Blade& b) {
    return decode(b, sl.machine()) == m && decode(b, sl.mem_in(0)) == x && decode(b, sl.state_in(0)) == start;
  });
}

/// Keeps terms with a halted state in any state slot after the initial one.
inline Multivector halt_project(const Multivector& a, const SlotLayout& sl) {
  return project_terms(a, [&](const Blade& b) {
    for (std::size_t i = 0; i < sl.steps(); ++i) {
      if (i >= 1 && tm::state_code_halted(decode(b, sl.state_in(i)))) return true;
      if (tm::state_code_halted(decode(b, sl.state_out(i)))) return true;
    }
    return false;
  });
}

/// Builds only the chains that survive consistency_project: each step's
/// inputs are the previous step's outputs. Chains whose intermediate
/// outputs leave the enumerated sets are absent from the free construction
/// and are dropped here too.
inline Multivector chained_pipeline(const SlotLayout& sl) {
  const auto& p = sl.params();
  detail::checked_mul(detail::checked_mul(p.machine_set.size(), p.config_set.size(), p.term_cap), p.state_set.size(),
                      p.term_cap);
  Multivector out(sl.dimension());
  for (auto m : p.machine_set) {
    for (auto x0 : p.config_set) {
      for (auto s0 : p.state_set) {
        Blade inputs = encode(m, sl.machine());
        auto x = x0;
        auto s = s0;
        bool closed = true;
        for (std::size_t i = 0; i < sl.steps(); ++i) {
          inputs |= encode(x, sl.mem_in(i)) | encode(s, sl.state_in(i));
          std::tie(x, s) = sl.step(m, x, s);
          if (i + 1 < sl.steps() && !(sl.has_config(x) && sl.has_state(s))) {
            closed = false;
            break;
          }
        }
        if (!closed) continue;
        SignedBlade chain{inputs, 1};
        for (std::size_t i = 0; i < sl.steps(); ++i) {
          const auto next = apply_step(chain.blade, i, sl);
          chain = {next.blade, chain.sign * next.sign};
        }
        out.accumulate(chain.blade, chain.sign, 1);
      }
    }
  }
  return out;
}

enum class Construction {
  free,     ///< build_psi0, every U_i, then consistency_project.
  chained,  ///< chained_pipeline.
};

/// ψ2 for the given truncation.
inline Multivector consistent_runs(const SlotLayout& sl, Construction how) {
  if (how == Construction::chained) return chained_pipeline(sl);
  return consistency_project(apply_all_steps(build_psi0(sl), sl), sl);
}

struct ProbeResult {
  bool halts_within_k = false;
  std::size_t instance_terms = 0;  ///< Terms of ψ3.
  std::size_t halted_terms = 0;    ///< Terms of P_f ψ3.
};

/// Builds ψ2 once and answers instance queries against it.
class HaltProbe {
 public:
  HaltProbe(const TruncationParams& params, Construction how) : sl_(params), how_(how) {
    if (how == Construction::free) {
      psi0_terms_ = free_term_count(sl_);
      const auto psi0 = build_psi0(sl_);
      const auto psi1 = apply_all_steps(psi0, sl_);
      psi1_terms_ = psi1.size();
      psi2_ = consistency_project(psi1, sl_);
    } else {
      psi2_ = chained_pipeline(sl_);
    }
  }

  const SlotLayout& layout() const noexcept { return sl_; }
  const Multivector& consistent() const noexcept { return psi2_; }
  Construction construction() const noexcept { return how_; }
  /// Sizes of ψ0 and ψ1; only known for the free construction.
  std::optional<std::size_t> psi0_terms() const { return psi0_terms_; }
  std::optional<std::size_t> psi1_terms() const { return psi1_terms_; }

  ProbeResult query(std::uint64_t m, std::uint64_t x) const {
    const auto psi3 = instance_project(psi2_, m, x, sl_);
    const auto halted = halt_project(psi3, sl_);
    return {!halted.is_zero(), psi3.size(), halted.size()};
  }

 private:
  SlotLayout sl_;
  Construction how_;
  Multivector psi2_{0};
  std::optional<std::size_t> psi0_terms_;
  std::optional<std::size_t> psi1_terms_;
};

/// True iff P_f P(m', x') P U ψ0 is nonzero: the machine halts within K steps from x'.
inline bool bounded_halt_probe(const tm::TMSpec& spec, std::uint64_t input_config, const TruncationParams& params,
                               Construction how = Construction::chained) {
  const auto m = tm::encode_machine(spec);
  return HaltProbe(params, how).query(m, input_config).halts_within_k;
}

inline bool bounded_halt_probe(const tm::TMSpec& spec, std::uint64_t input_config, std::size_t steps,
                               std::size_t cells, Construction how = Construction::chained) {
  return bounded_halt_probe(spec, input_config, default_params(spec, steps, cells), how);
}

}  // namespace sga::halting
