#include "ptor/padic.hpp"

#include <sstream>

namespace ptor {

const char* err_name(Err e) {
  switch (e) {
    case Err::Schema: return "SCHEMA_ERROR";
    case Err::PrimeMismatch: return "PRIME_MISMATCH";
    case Err::SignatureMismatch: return "SIGNATURE_MISMATCH";
    case Err::DivisionByZero: return "DIVISION_BY_ZERO";
    case Err::PrecisionExhausted: return "PRECISION_EXHAUSTED";
    case Err::NormViolation: return "NORM_VIOLATION";
    case Err::ContractionViolated: return "CONTRACTION_VIOLATED";
    case Err::DegreeCapExceeded: return "DEGREE_CAP_EXCEEDED";
    case Err::ResolutionTooLong: return "RESOLUTION_TOO_LONG";
    case Err::ZeroSeries: return "ZERO_SERIES";
    case Err::OracleMissing: return "ORACLE_MISSING";
    case Err::WindowMismatch: return "WINDOW_MISMATCH";
    case Err::RMaxExceeded: return "R_MAX_EXCEEDED";
    case Err::UndecidedAtPrecision: return "UNDECIDED_AT_PRECISION";
    case Err::UndecidedGeneralD: return "UNDECIDED_GENERAL_D";
    case Err::NonpositiveBound: return "NONPOSITIVE_BOUND";
    case Err::Internal: return "INTERNAL";
  }
  return "UNKNOWN";
}

int err_exit_code(Err e) {
  switch (e) {
    case Err::Schema:
    case Err::PrimeMismatch:
    case Err::SignatureMismatch:
    case Err::ContractionViolated:
    case Err::NonpositiveBound:
    case Err::WindowMismatch:
      return 2;
    case Err::PrecisionExhausted:
      return 3;
    case Err::UndecidedAtPrecision:
    case Err::UndecidedGeneralD:
    case Err::RMaxExceeded:
      return 4;
    case Err::DegreeCapExceeded:
    case Err::ResolutionTooLong:
      return 5;
    default:
      return 1;
  }
}

PAdic PAdic::exact_zero(long p) { return PAdic(p, Kind::ExactZero, VAL_INF, 0, 0); }

PAdic PAdic::big_oh(long p, long val_bound) { return PAdic(p, Kind::BigOh, val_bound, 0, 0); }

PAdic PAdic::from_parts(long p, long val, const mpz_class& unit, int prec) {
  if (prec <= 0) fail(Err::Schema, "precision must be positive");
  mpz_class u = unit % pow_p(p, prec);
  if (u < 0) u += pow_p(p, prec);
  if (u == 0 || u % p == 0) fail(Err::Schema, "unit part must be coprime to p");
  return PAdic(p, Kind::Regular, val, u, prec);
}

PAdic PAdic::from_integer(long p, const mpz_class& n, int prec) {
  return from_rational(p, mpq_class(n), prec);
}

PAdic PAdic::from_rational(long p, const mpq_class& q, int prec) {
  if (q == 0) return exact_zero(p);
  long v = pval(q, p);
  mpq_class u = q / pow_p_q(p, v); // unit rational, num and den coprime to p
  mpz_class mod = pow_p(p, prec);
  mpz_class deninv;
  if (mpz_invert(deninv.get_mpz_t(), u.get_den().get_mpz_t(), mod.get_mpz_t()) == 0)
    fail(Err::Internal, "denominator not invertible mod p^prec");
  mpz_class unit = (u.get_num() * deninv) % mod;
  if (unit < 0) unit += mod;
  return PAdic(p, Kind::Regular, v, unit, prec);
}

long PAdic::val() const {
  if (kind_ == Kind::ExactZero) return VAL_INF;
  return val_;
}

long PAdic::abs_prec() const {
  switch (kind_) {
    case Kind::ExactZero: return VAL_INF;
    case Kind::BigOh: return val_;
    case Kind::Regular: return val_ + prec_;
  }
  return 0;
}

void PAdic::check_same_prime(const PAdic& b) const {
  if (p_ != b.p_) fail(Err::PrimeMismatch, "operands live over different primes");
}

PAdic PAdic::from_val_and_residue(long p, long val_base, const mpz_class& residue,
                                  long abs_prec) {
  // residue is the value divided by p^val_base, known mod p^(abs_prec - val_base).
  if (abs_prec <= val_base) return big_oh(p, abs_prec);
  long rel = abs_prec - val_base;
  mpz_class mod = pow_p(p, rel);
  mpz_class r = residue % mod;
  if (r < 0) r += mod;
  if (r == 0) return big_oh(p, abs_prec);
  long shift = pval(r, p);
  if (shift >= rel) return big_oh(p, abs_prec);
  mpz_class unit = r / pow_p(p, shift);
  long newprec = rel - shift;
  if (newprec > static_cast<long>(std::numeric_limits<int>::max()))
    fail(Err::Internal, "precision overflow");
  return PAdic(p, Kind::Regular, val_base + shift, unit % pow_p(p, newprec),
               static_cast<int>(newprec));
}

PAdic PAdic::operator-() const {
  if (kind_ != Kind::Regular) return *this;
  mpz_class mod = pow_p(p_, prec_);
  return PAdic(p_, Kind::Regular, val_, mod - unit_, prec_);
}

PAdic PAdic::add(const PAdic& b) const {
  check_same_prime(b);
  if (kind_ == Kind::ExactZero) return b;
  if (b.kind_ == Kind::ExactZero) return *this;
  long A = std::min(abs_prec(), b.abs_prec());
  long v = std::min(val_, b.val_);
  mpz_class s = 0;
  if (kind_ == Kind::Regular) s += unit_ * pow_p(p_, val_ - v);
  if (b.kind_ == Kind::Regular) s += b.unit_ * pow_p(p_, b.val_ - v);
  return from_val_and_residue(p_, v, s, A);
}

PAdic PAdic::sub(const PAdic& b) const { return add(-b); }

PAdic PAdic::mul(const PAdic& b) const {
  check_same_prime(b);
  if (kind_ == Kind::ExactZero || b.kind_ == Kind::ExactZero) return exact_zero(p_);
  if (kind_ == Kind::BigOh || b.kind_ == Kind::BigOh) {
    // |ab| <= p^-(va+vb); nothing more is known.
    return big_oh(p_, val_ + b.val_);
  }
  int prec = std::min(prec_, b.prec_);
  mpz_class u = (unit_ * b.unit_) % pow_p(p_, prec);
  return PAdic(p_, Kind::Regular, val_ + b.val_, u, prec);
}

PAdic PAdic::inv() const {
  if (kind_ != Kind::Regular)
    fail(Err::DivisionByZero, "inverting a value indistinguishable from 0 at precision");
  mpz_class mod = pow_p(p_, prec_);
  mpz_class u;
  if (mpz_invert(u.get_mpz_t(), unit_.get_mpz_t(), mod.get_mpz_t()) == 0)
    fail(Err::Internal, "unit not invertible");
  return PAdic(p_, Kind::Regular, -val_, u, prec_);
}

PAdic PAdic::mul_exact(const mpq_class& q) const {
  if (q == 0) return exact_zero(p_);
  long vq = pval(q, p_);
  if (kind_ == Kind::ExactZero) return *this;
  if (kind_ == Kind::BigOh) return big_oh(p_, val_ + vq);
  mpq_class uq = q / pow_p_q(p_, vq);
  mpz_class mod = pow_p(p_, prec_);
  mpz_class deninv;
  mpz_invert(deninv.get_mpz_t(), uq.get_den().get_mpz_t(), mod.get_mpz_t());
  mpz_class u = (unit_ * uq.get_num() * deninv) % mod;
  if (u < 0) u += mod;
  return PAdic(p_, Kind::Regular, val_ + vq, u, prec_);
}

PAdic PAdic::div_exact(const mpq_class& q) const {
  if (q == 0) fail(Err::DivisionByZero, "division by exact zero");
  return mul_exact(mpq_class(1) / q);
}

mpq_class PAdic::to_rational() const {
  if (kind_ == Kind::ExactZero) return 0;
  if (kind_ == Kind::BigOh)
    fail(Err::PrecisionExhausted, "O(p^k) value has no canonical representative");
  return mpq_class(unit_) * pow_p_q(p_, val_);
}

bool PAdic::agrees_with(const PAdic& b) const {
  check_same_prime(b);
  long A = std::min(abs_prec(), b.abs_prec());
  PAdic d = sub(b);
  return d.kind() != Kind::Regular || d.val() >= A;
}

std::string PAdic::to_string() const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::ExactZero: os << "0"; break;
    case Kind::BigOh: os << "O(" << p_ << "^" << val_ << ")"; break;
    case Kind::Regular:
      os << unit_.get_str() << "*" << p_ << "^" << val_ << " + O(" << p_ << "^"
         << (val_ + prec_) << ")";
      break;
  }
  return os.str();
}

PAdic binomial_padic(const PAdic& a, long m) {
  long p = a.p();
  if (a.kind() == PAdic::Kind::Regular && a.val() < 0)
    fail(Err::NormViolation, "binomial argument must lie in Z_p");
  if (m == 0) return PAdic::from_integer(p, 1, a.prec() > 0 ? a.prec() : 1);
  PAdic prod = a;
  for (long k = 1; k < m; ++k) prod = prod.mul(a.sub(PAdic::from_integer(p, k, a.prec())));
  // m! is exact: dividing shifts the valuation and multiplies by an exact
  // unit, so the relative precision survives untouched.
  mpz_class fact;
  mpz_fac_ui(fact.get_mpz_t(), static_cast<unsigned long>(m));
  PAdic result = prod.div_exact(mpq_class(fact));
  if (result.kind() == PAdic::Kind::Regular && result.prec() <= 0)
    fail(Err::PrecisionExhausted, "binomial product lost all significant digits");
  // Integrality of binomials on Z_p.
  if (result.kind() == PAdic::Kind::Regular && result.val() < 0)
    fail(Err::Internal, "binomial of a Z_p element left Z_p");
  return result;
}

} // namespace ptor
