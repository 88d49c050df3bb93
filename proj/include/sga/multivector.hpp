#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <utility>

#include "sga/blade.hpp"
#include "sga/errors.hpp"
#include "sga/rational.hpp"

namespace sga {

/// Sparse multivector of a Euclidean geometric algebra of dimension D with
/// exact rational coefficients.
///
/// Terms are kept in a map ordered by mask value and never hold a zero
/// coefficient, so equality is plain term-map equality.
class Multivector {
 public:
  using term_map = std::map<Blade, Coefficient>;

  explicit Multivector(std::size_t dimension) : dim_(dimension) {}

  static Multivector scalar(std::size_t dimension, const Coefficient& c) {
    return from_blade(dimension, Blade{}, c);
  }

  static Multivector from_blade(std::size_t dimension, const Blade& b, const Coefficient& c = 1) {
    Multivector m(dimension);
    m.accumulate(b, c);
    return m;
  }

  /// The basis vector e_i (0-based index).
  static Multivector basis(std::size_t dimension, std::size_t i) {
    return from_blade(dimension, Blade{i});
  }

  std::size_t dimension() const noexcept { return dim_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }
  const term_map& terms() const noexcept { return terms_; }

  auto begin() const noexcept { return terms_.begin(); }
  auto end() const noexcept { return terms_.end(); }

  Coefficient coefficient(const Blade& b) const {
    const auto it = terms_.find(b);
    return it == terms_.end() ? Coefficient(0) : it->second;
  }

  /// Adds c·b to this multivector, pruning the term if it cancels.
  void accumulate(const Blade& b, const Coefficient& c) {
    if (c == 0) return;
    check_fits(b);
    auto [it, inserted] = terms_.try_emplace(b, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  void accumulate(const Blade& b, int sign, const Coefficient& c) {
    if (sign < 0) {
      accumulate(b, Coefficient(-c));
    } else {
      accumulate(b, c);
    }
  }

  Multivector& operator+=(const Multivector& o) {
    require_same_dimension(*this, o);
    for (const auto& [b, c] : o.terms_) accumulate(b, c);
    return *this;
  }

  Multivector& operator-=(const Multivector& o) {
    require_same_dimension(*this, o);
    for (const auto& [b, c] : o.terms_) accumulate(b, Coefficient(-c));
    return *this;
  }

  friend bool operator==(const Multivector& a, const Multivector& b) {
    return a.dim_ == b.dim_ && a.terms_ == b.terms_;
  }

  static void require_same_dimension(const Multivector& a, const Multivector& b) {
    if (a.dim_ != b.dim_) {
      throw dimension_mismatch("incompatible algebras: dimension " + std::to_string(a.dim_) + " vs " +
                               std::to_string(b.dim_));
    }
  }

 private:
  void check_fits(const Blade& b) const {
    if (b.span() > dim_) {
      throw dimension_mismatch("blade 0x" + b.to_hex() + " exceeds algebra dimension " + std::to_string(dim_));
    }
  }

  std::size_t dim_;
  term_map terms_;
};

inline Multivector add(const Multivector& a, const Multivector& b) {
  Multivector out = a;
  out += b;
  return out;
}

inline Multivector subtract(const Multivector& a, const Multivector& b) {
  Multivector out = a;
  out -= b;
  return out;
}

inline Multivector scale(const Multivector& a, const Coefficient& c) {
  Multivector out(a.dimension());
  if (c == 0) return out;
  for (const auto& [b, v] : a) out.accumulate(b, v * c);
  return out;
}

/// Bilinear extension of blade_mul.
inline Multivector geometric_product(const Multivector& a, const Multivector& b) {
  Multivector::require_same_dimension(a, b);
  Multivector out(a.dimension());
  for (const auto& [ba, ca] : a) {
    for (const auto& [bb, cb] : b) {
      const auto p = blade_mul(ba, bb);
      out.accumulate(p.blade, p.sign, ca * cb);
    }
  }
  return out;
}

/// Keeps exactly the terms whose blade satisfies `pred`.
template <typename Pred>
Multivector project_terms(const Multivector& a, Pred&& pred) {
  Multivector out(a.dimension());
  for (const auto& [b, c] : a) {
    if (pred(b)) out.accumulate(b, c);
  }
  return out;
}

/// Terms of grade k.
inline Multivector grade_part(const Multivector& a, std::size_t k) {
  return project_terms(a, [k](const Blade& b) { return b.grade() == k; });
}

inline Multivector operator+(const Multivector& a, const Multivector& b) { return add(a, b); }
inline Multivector operator-(const Multivector& a, const Multivector& b) { return subtract(a, b); }
inline Multivector operator-(const Multivector& a) { return scale(a, -1); }
inline Multivector operator*(const Multivector& a, const Multivector& b) { return geometric_product(a, b); }
inline Multivector operator*(const Coefficient& c, const Multivector& a) { return scale(a, c); }

inline std::string to_string(const Multivector& m) {
  if (m.is_zero()) return "0";
  std::string out;
  for (const auto& [b, c] : m) {
    std::string coeff = c.get_str();
    if (!out.empty()) {
      if (coeff.front() == '-') {
        out += " - ";
        coeff.erase(0, 1);
      } else {
        out += " + ";
      }
    }
    if (b.is_scalar()) {
      out += coeff;
      continue;
    }
    if (coeff != "1") out += coeff == "-1" ? "-" : coeff + "*";
    b.for_each_index([&](std::size_t i) { out += "e" + std::to_string(i + 1); });
  }
  return out;
}

}  // namespace sga
