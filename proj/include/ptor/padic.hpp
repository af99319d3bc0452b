#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>

#include "ptor/qval.hpp"

namespace ptor {

// Fixed-precision scalar in Q_p, capped-relative model.  A regular value is
// p^val * unit with unit in [1, p^prec) coprime to p; `prec` counts the known
// unit digits.  A value whose digits were all consumed is kept as O(p^val)
// with a one-sided lower bound on the valuation, never conflated with the
// exact zero.
class PAdic {
public:
  enum class Kind { ExactZero, BigOh, Regular };

  static PAdic exact_zero(long p);
  static PAdic big_oh(long p, long val_bound);
  static PAdic from_integer(long p, const mpz_class& n, int prec);
  static PAdic from_rational(long p, const mpq_class& q, int prec);
  // val/unit are taken as given; unit is reduced mod p^prec.
  static PAdic from_parts(long p, long val, const mpz_class& unit, int prec);

  long p() const { return p_; }
  Kind kind() const { return kind_; }
  bool is_exact_zero() const { return kind_ == Kind::ExactZero; }
  bool is_zero_at_precision() const { return kind_ != Kind::Regular; }
  // Valuation; lower bound for BigOh, VAL_INF for the exact zero.
  long val() const;
  const mpz_class& unit() const { return unit_; }
  int prec() const { return prec_; }
  // Exponent e with |a| = p^(-e); VAL_INF encodes |0| = 0.
  long norm_exp() const { return val(); }

  PAdic operator-() const;
  PAdic add(const PAdic& b) const;
  PAdic sub(const PAdic& b) const;
  PAdic mul(const PAdic& b) const;
  PAdic inv() const;
  // Division by an exact nonzero rational: valuation shift plus an exact unit
  // multiple, so no precision is lost.
  PAdic div_exact(const mpq_class& q) const;
  PAdic mul_exact(const mpq_class& q) const;

  // The canonical rational representative p^val * unit (exact zero -> 0).
  // BigOh values have no representative.
  mpq_class to_rational() const;

  // Agreement at the shared precision: |a - b| <= p^-(min absolute precision).
  bool agrees_with(const PAdic& b) const;

  std::string to_string() const;

private:
  PAdic(long p, Kind k, long val, mpz_class unit, int prec)
      : p_(p), kind_(k), val_(val), unit_(std::move(unit)), prec_(prec) {}
  void check_same_prime(const PAdic& b) const;
  // Absolute precision: value is known mod p^abs_prec.
  long abs_prec() const;
  static PAdic from_val_and_residue(long p, long val_base, const mpz_class& residue,
                                    long abs_prec);

  long p_;
  Kind kind_;
  long val_;
  mpz_class unit_;
  int prec_;
};

// C(a, m) = a(a-1)...(a-m+1)/m! for a in Z_p.  Integral on Z_p; equals the
// integer binomial when a is a nonnegative integer.
PAdic binomial_padic(const PAdic& a, long m);

} // namespace ptor
