#pragma once

#include <gmpxx.h>

#include <string>

namespace itforms {

using Rational = mpq_class;
using BigInt = mpz_class;

inline Rational rational_from_string(const std::string& s) {
  Rational q;
  if (q.set_str(s, 10) != 0) return Rational(0);  // caller validates
  q.canonicalize();
  return q;
}

inline std::string to_string(const Rational& q) { return q.get_str(); }

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

}  // namespace itforms
