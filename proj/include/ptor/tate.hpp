#pragma once

#include <gmpxx.h>

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ptor/qval.hpp"

namespace ptor {

// Ring signature of K<x_1..x_nx> or K<x_1..x_nx><z>.  Elements are finite
// sums at working precision; coefficients are exact rationals whose p-adic
// norm is read off exactly.
struct RingSig {
  int nx = 0;
  bool has_z = false;
  long p = 2;

  int nvars() const { return nx + (has_z ? 1 : 0); }
  bool operator==(const RingSig& o) const = default;
  std::string to_string() const;
};

using Exps = std::vector<int>;

// Graded lex with z greatest: total degree first, then the z exponent, then
// x_1, x_2, ... from most to least significant.  Returns true when a > b.
bool mono_greater(const Exps& a, const Exps& b, const RingSig& sig);

struct MonoCmp {
  RingSig sig;
  bool operator()(const Exps& a, const Exps& b) const { return mono_greater(a, b, sig); }
};

class Tate {
public:
  using TermMap = std::map<Exps, mpq_class, MonoCmp>;

  explicit Tate(const RingSig& sig) : sig_(sig), terms_(MonoCmp{sig}) {}
  static Tate zero(const RingSig& sig) { return Tate(sig); }
  static Tate constant(const RingSig& sig, const mpq_class& c);
  static Tate variable(const RingSig& sig, int idx); // idx in [0, nx); nx = z
  static Tate z_var(const RingSig& sig);

  const RingSig& sig() const { return sig_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  size_t term_count() const { return terms_.size(); }

  void set_coeff(const Exps& e, const mpq_class& c);
  const mpq_class* coeff(const Exps& e) const;
  mpq_class constant_term() const;
  void add_term(const Exps& e, const mpq_class& c); // accumulate

  Tate operator+(const Tate& o) const;
  Tate operator-(const Tate& o) const;
  Tate operator-() const;
  Tate operator*(const Tate& o) const;
  Tate scaled(const mpq_class& c) const;
  bool operator==(const Tate& o) const;

  // Gauss norm as an exponent: ||f|| = p^(-gauss_val()); VAL_INF for 0.
  long gauss_val() const;
  int total_degree() const; // -1 for 0
  int degree_in_z() const;
  int degree_in(int var_index) const;

  // z := a (exact rational with |a| <= 1).  Result lives in the z-free ring.
  Tate specialize_z(const mpq_class& a) const;
  // x_i := images[i]; images must have Gauss norm <= 1 and match the target
  // signature (z, when present, is left alone).
  Tate substitute_x(const std::vector<Tate>& images) const;
  // Evaluate at a rational point (all variables, including z if present).
  mpq_class eval(const std::vector<mpq_class>& point) const;

  // Drop terms whose coefficient valuation is >= cut (values known mod p^cut).
  Tate truncated(long cut) const;
  // Scale by a power of p so the Gauss valuation becomes 0.  Zero stays zero.
  Tate normalized() const;

  // Move between plain S and S<z> signatures.
  Tate with_z() const;    // embed, z exponent 0
  Tate without_z() const; // requires degree_in_z() <= 0

  std::string to_string() const;

private:
  void check_sig(const Tate& o) const;
  mutable std::optional<long> gauss_cache_;
  RingSig sig_;
  TermMap terms_;
};

struct UnitWitness {
  bool is_unit = false;
  // Inverse truncated at the requested precision (unit case).
  std::optional<Tate> inverse;
  // Dominant non-constant offender (non-unit case).
  std::optional<std::pair<Exps, mpq_class>> offender;
};

// Tate-unit test: f is a unit of the full polydisc algebra iff its constant
// term strictly dominates every other coefficient.  The witness carries the
// geometric-series inverse to precision `prec` on success.
UnitWitness is_unit_tate(const Tate& f, int prec);

// Largest m retained plus the certified bound on everything dropped.
struct SigmaZ;

} // namespace ptor
