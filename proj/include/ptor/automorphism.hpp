#pragma once

#include <optional>
#include <vector>

#include "ptor/tate.hpp"

namespace ptor {

// A contracting automorphism of S = K<x_1..x_d>: images sigma(x_i) with
// every ||sigma(x_i) - x_i|| <= p^-c and c > 1/(p-1).  The contraction
// certificate extends to all of o<x> by o-linearity and multiplicativity.
struct AutomorphismSpec {
  RingSig sig; // has_z = false
  mpq_class c;
  std::vector<Tate> images;
  std::optional<std::vector<Tate>> inverse_images;

  long p() const { return sig.p; }
};

// Throws CONTRACTION_VIOLATED naming the offending generator.
void validate_contraction(const AutomorphismSpec& spec);

// sigma applied once (substitution by the images).
Tate apply_sigma(const AutomorphismSpec& spec, const Tate& b);
// Delta(b) = sigma(b) - b; delta_iterate computes Delta^m(b) and asserts the
// contraction bound ||Delta^m(b)|| <= p^(-mc) ||b||.
Tate delta_iterate(const AutomorphismSpec& spec, const Tate& b, long m);

struct SigmaZ {
  Tate value;      // element of S<z>
  long trunc_m;    // largest m retained
  long tail_val;   // everything dropped has valuation >= tail_val >= N
};

// Truncation index: least M with p^(-mc + v_p(m!)) ||b|| <= p^(-N) for all
// m > M.  This is the contraction inequality run backwards, so the tail
// bound is machine-checkable.
long sigma_z_truncation(const AutomorphismSpec& spec, long norm_val_b, int N);

// sigma^z(b) = sum_m C(z,m) Delta^m(b), truncated with a certified tail.
SigmaZ sigma_z(const AutomorphismSpec& spec, const Tate& b, int N);

// Exact n-fold iterate (n may be negative when an inverse is available or
// computable).  Monomials whose certified valuation floor reaches N are
// dropped; degree_cap below the sound threshold is refused.
Tate sigma_n_exact(const AutomorphismSpec& spec, const Tate& b, long n, int N,
                   std::optional<int> degree_cap = std::nullopt);

// sigma^a = (z := a) after sigma^z, for a in Z_p given by a rational
// representative with |a| <= 1.
Tate sigma_a(const AutomorphismSpec& spec, const Tate& b, const mpq_class& a, int N);

// Inverse images by fixed-point iteration x_i = g_i with sigma(g_i) = x_i;
// validated by round-trip composition to precision N.
std::vector<Tate> compute_inverse_images(const AutomorphismSpec& spec, int N);

// Spec with inverse_images filled in (computing them if needed).
AutomorphismSpec with_inverse(const AutomorphismSpec& spec, int N);

// Binomial coefficient C(z, m) as a z-polynomial with exact coefficients.
Tate binomial_poly_z(const RingSig& sig_z, long m);

} // namespace ptor
