#pragma once

#include <gmpxx.h>

#include <limits>
#include <string>

#include "ptor/errors.hpp"

namespace ptor {

// Valuations are tracked as exponents: |a| = p^(-val).  VAL_INF stands for
// the valuation of an exact zero.
inline constexpr long VAL_INF = std::numeric_limits<long>::max() / 4;

inline long pval(const mpz_class& z, long p) {
  if (z == 0) return VAL_INF;
  mpz_class t = z, q, r;
  long v = 0;
  for (;;) {
    mpz_fdiv_qr_ui(q.get_mpz_t(), r.get_mpz_t(), t.get_mpz_t(), static_cast<unsigned long>(p));
    if (r != 0) return v;
    t = q;
    ++v;
  }
}

inline long pval(const mpq_class& q, long p) {
  if (q == 0) return VAL_INF;
  return pval(q.get_num(), p) - pval(q.get_den(), p);
}

inline mpz_class pow_p(long p, long e) {
  mpz_class r;
  if (e < 0) fail(Err::Internal, "negative power of p requested as integer");
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(e));
  return r;
}

inline mpq_class pow_p_q(long p, long e) {
  if (e >= 0) return mpq_class(pow_p(p, e));
  return mpq_class(1, pow_p(p, -e));
}

// Sum of base-p digits; Legendre's formula gives v_p(m!) = (m - s_p(m))/(p-1).
inline long digit_sum(long m, long p) {
  long s = 0;
  while (m > 0) {
    s += m % p;
    m /= p;
  }
  return s;
}

inline long factorial_valuation(long m, long p) {
  if (m < 0) fail(Err::Schema, "factorial of negative integer");
  return (m - digit_sum(m, p)) / (p - 1);
}

inline std::string rat_str(const mpq_class& q) { return q.get_str(); }

} // namespace ptor
