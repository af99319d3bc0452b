#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ptor/certificate.hpp"
#include "ptor/ctx.hpp"
#include "ptor/homology.hpp"
#include "ptor/ideal.hpp"

namespace ptor {

struct WeierstrassData {
  long nu = 0;     // largest index attaining the Gauss norm
  long mu_val = 0; // ||f|| = p^-mu_val
};

// f must be a nonzero series in z alone; at most nu zeros in the valuation
// ring.
WeierstrassData weierstrass_degree(const Tate& f);

struct PadicRoot {
  mpz_class approx;     // root mod p^digits
  int digits = 0;
  long multiplicity = 1;
  bool resolved = true; // false for clusters indistinguishable at precision
};

// All roots of f in Z_p, complete at precision: digit-by-digit descent where
// a residue class survives only if the recentred series keeps a positive
// Weierstrass degree.  Clusters that never separate are reported with their
// multiplicity and resolved = false (strict mode turns them into
// PRECISION_EXHAUSTED).
std::vector<PadicRoot> padic_roots(const Tate& f, int digits, const Ctx& ctx,
                                   bool strict = false);

// Ideal J with J contained in ann(M) and the same vanishing locus:
// the column-quotient annihilator when computable, enriched with the
// rank x rank determinant elements of the relation matrix.
std::vector<Tate> annihilator_reduce(const Presentation& p, const Ctx& ctx);

struct BallCertify {
  enum class Status { Comaximal, NotComaximal, Undecided } status;
  std::optional<BallWitness> ball; // Comaximal only
  std::string note;
};

// Try to write 1 = q + (z - c) g with q in J (generators over S<z>); on
// success the whole ball |a - c| <= p^-radius_exp is certified vanishing.
BallCertify ball_certify(const std::vector<Tate>& J, const mpq_class& c, const Ctx& ctx);

// Plain comaximality decision at one point (no witness construction).
Decide comaximal_at(const std::vector<Tate>& J, const mpq_class& c, const Ctx& ctx);

enum class ScanRing { Z, Zp };

struct VanishingReport {
  Certificate cert;
  std::vector<long> crosscheck_disagreements; // empty on success
  long classes_scanned = 0;
  long points_tested = 0;
};

// Certificate for {c in R : M|_{z=c} = 0} on the window: residue classes are
// absorbed by certified balls, survivors are tested pointwise, and every
// window point is cross-checked against direct specialization.
VanishingReport vanishing_locus(const Presentation& Mp, ScanRing R, long win_lo, long win_hi,
                                int r_max, const Ctx& ctx, bool crosscheck = true);

// Largest p-power radius strictly below eps / (2 N p^deg): within it,
// |f(c')| = |f(c)| stays a unit.  f is a polynomial in t with Tate
// coefficients, coeffs[k] multiplying t^k.
long unit_stability_radius_exp(const std::vector<Tate>& coeffs, const mpq_class& eps,
                               const Ctx& ctx);

// Re-verify one ball by direct comaximality at sampled integer points.
bool verify_ball(const std::vector<Tate>& J, const BallWitness& ball, int samples,
                 unsigned seed, const Ctx& ctx);

} // namespace ptor
