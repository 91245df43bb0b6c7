#pragma once

#include <gmpxx.h>

#include <string>
#include <utility>

namespace tps {

// Exact rational arithmetic everywhere; values serialized as [num, den] in
// lowest terms with den > 0 (mpq_class canonicalizes to exactly that form).
using Rational = mpq_class;

inline Rational rat(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline Rational rat(const std::string& num, const std::string& den) {
  Rational r{mpz_class(num), mpz_class(den)};
  r.canonicalize();
  return r;
}

inline bool in_unit_interval(const Rational& r) { return r >= 0 && r <= 1; }

inline Rational midpoint(const Rational& a, const Rational& b) {
  return Rational((a + b) / 2);
}

inline std::string to_string(const Rational& r) {
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

}  // namespace tps
