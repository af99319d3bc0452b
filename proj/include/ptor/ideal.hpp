#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ptor/ctx.hpp"
#include "ptor/groebner.hpp"
#include "ptor/tate.hpp"

namespace ptor {

// Dense univariate polynomial over exact rationals, coefficient of t^i at
// index i.  Trailing zeros are stripped.
using UniPoly = std::vector<mpq_class>;

UniPoly uni_trim(UniPoly f);
int uni_degree(const UniPoly& f); // -1 for zero
UniPoly uni_from_tate(const Tate& f); // requires a one-variable signature
Tate uni_to_tate(const UniPoly& f, const RingSig& sig);
mpq_class uni_eval(const UniPoly& f, const mpq_class& a);
UniPoly uni_scaled(const UniPoly& f, const mpq_class& c);
UniPoly uni_sub(const UniPoly& a, const UniPoly& b);
UniPoly uni_mul(const UniPoly& a, const UniPoly& b);
long uni_gauss_val(const UniPoly& f, long p); // VAL_INF for 0

// Largest index attaining the Gauss norm: the Weierstrass degree, bounding
// the number of zeros in the closed unit disc.
long uni_weierstrass_nu(const UniPoly& f, long p);

// gcd with Bezout coefficients: g = a*f1 + b*f2 (monic-scaled), computed at
// working precision: remainders indistinguishable from zero are treated as
// zero, and divisions by leading coefficients inside the guard band abort
// with PRECISION_EXHAUSTED instead of silently spending the digits.
struct UniBezout {
  UniPoly g, a, b;
};
UniBezout uni_gcd_bezout(const UniPoly& f1, const UniPoly& f2, long p, const Ctx& ctx);

enum class Decide { Yes, No, Undecided };

// Does the ideal generated by `gens` contain a unit of the Tate algebra?
// Complete for rings with a single variable (Weierstrass/Strassman) and for
// the trivially visible cases elsewhere; Undecided is reserved for d >= 2
// where neither the polynomial certificate nor the unit criterion resolves.
struct UnitIdealResult {
  Decide decide = Decide::Undecided;
  // 1 = sum combo[i] * gens[i] + O(p^prec), present when decide == Yes.
  std::vector<Tate> combo;
  std::string note;
};

UnitIdealResult tate_unit_ideal(const std::vector<Tate>& gens, const Ctx& ctx);

// Intersection of two ideals in the same ring (generators).
std::vector<Tate> ideal_intersect(const std::vector<Tate>& A, const std::vector<Tate>& B,
                                  const Ctx& ctx);

} // namespace ptor
