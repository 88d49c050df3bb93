#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

#include "sga/errors.hpp"

namespace sga {

// Arbitrary-precision rational in canonical form (den > 0, gcd(num, den) = 1).
// mpq_class keeps results canonical after every arithmetic operation; only
// construction from an explicit numerator/denominator pair needs care.
using Coefficient = mpq_class;

inline Coefficient make_coefficient(const mpz_class& num, const mpz_class& den) {
  if (den == 0) throw error("coefficient with zero denominator");
  Coefficient c(num, den);
  c.canonicalize();
  return c;
}

inline Coefficient parse_coefficient(std::string_view num, std::string_view den) {
  mpz_class n;
  mpz_class d;
  if (n.set_str(std::string(num), 10) != 0 || d.set_str(std::string(den), 10) != 0) {
    throw parse_error("invalid decimal integer in coefficient");
  }
  if (d == 0) throw parse_error("coefficient with zero denominator");
  return make_coefficient(n, d);
}

inline bool is_canonical(const Coefficient& c) {
  if (sgn(c.get_den()) <= 0) return false;
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), c.get_num_mpz_t(), c.get_den_mpz_t());
  return g == 1;
}

}  // namespace sga
