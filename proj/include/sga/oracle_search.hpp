#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <set>
#include <unordered_map>
#include <utility>

#include "sga/layout.hpp"
#include "sga/multivector.hpp"

namespace sga {

/// Algebra for the database search: an n-bit data subspace followed by one
/// oracle dimension, which is always the highest index.
class SearchLayout {
 public:
  explicit SearchLayout(std::size_t n) : n_(n) {
    layout_.add("data", n).add_tail(1);
  }

  std::size_t width() const noexcept { return n_; }
  std::size_t oracle_dim() const noexcept { return n_; }
  std::size_t dimension() const noexcept { return layout_.total_dim(); }
  const Subspace& data() const { return layout_[0]; }
  const SubspaceLayout& layout() const noexcept { return layout_; }

 private:
  std::size_t n_;
  SubspaceLayout layout_;
};

/// Black-box membership predicate f with audit counters.
class MembershipOracle {
 public:
  using predicate = std::function<bool(std::uint64_t)>;

  explicit MembershipOracle(predicate f) : f_(std::move(f)) {}

  /// Pointwise f evaluations so far.
  std::size_t eval_count() const noexcept { return evals_; }
  /// Whole-operator O_f applications so far.
  std::size_t op_count() const noexcept { return ops_; }

  bool evaluate(std::uint64_t x) {
    ++evals_;
    return f_(x);
  }

  void count_application() noexcept { ++ops_; }

 private:
  predicate f_;
  std::size_t evals_ = 0;
  std::size_t ops_ = 0;
};

/// Sum over x in Y of L(x)(1 - e_{n+1}).
template <typename Range>
Multivector build_initial_state(const Range& ys, const SearchLayout& sl) {
  Multivector psi(sl.dimension());
  const Blade oracle{sl.oracle_dim()};
  for (auto y : ys) {
    const auto lx = encode(static_cast<std::uint64_t>(y), sl.data());
    // L(x) and e_{n+1} are disjoint and e_{n+1} is the highest index, so L(x)e_{n+1} = L(x) | e_{n+1}.
    psi.accumulate(lx, 1);
    psi.accumulate(lx | oracle, -1);
  }
  return psi;
}

/// O_f: toggles e_{n+1} on every term whose data part x has f(x) = 1.
/// f is evaluated at most once per distinct x within one application.
inline Multivector apply_oracle(MembershipOracle& oracle, const Multivector& a, const SearchLayout& sl) {
  oracle.count_application();
  std::unordered_map<std::uint64_t, bool> memo;
  Multivector out(a.dimension());
  for (const auto& [b, c] : a) {
    const auto x = decode(b, sl.data());
    auto it = memo.find(x);
    if (it == memo.end()) it = memo.emplace(x, oracle.evaluate(x)).first;
    if (it->second) {
      Blade toggled = b;
      toggled.flip(sl.oracle_dim());
      out.accumulate(toggled, c);
    } else {
      out.accumulate(b, c);
    }
  }
  return out;
}

/// ½(1 - O_f) applied to an arbitrary multivector.
inline Multivector apply_filter(MembershipOracle& oracle, const Multivector& a, const SearchLayout& sl) {
  return scale(a - apply_oracle(oracle, a, sl), Coefficient(1, 2));
}

/// ½(ψ0 - O_f ψ0) for ψ0 built from Y: the marked states of Y, one oracle application.
template <typename Range>
Multivector filter_marked(MembershipOracle& oracle, const Range& ys, const SearchLayout& sl) {
  return apply_filter(oracle, build_initial_state(ys, sl), sl);
}

/// Numbers read from the data subspace of every term.
inline std::set<std::uint64_t> extract_matches(const Multivector& a, const SearchLayout& sl) {
  std::set<std::uint64_t> out;
  for (const auto& [b, c] : a) out.insert(decode(b, sl.data()));
  return out;
}

}  // namespace sga
