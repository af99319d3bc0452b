#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

#include "ptor/tate.hpp"

namespace ptor {

// Soundness witness for one certified ball: 1 = q + (z - center) g with
// q in J, so the whole ball of radius p^-radius_exp around the center lies
// in the vanishing locus.
struct BallWitness {
  mpq_class center = 0;
  long radius_exp = 0; // ball = {a : |a - center| <= p^-radius_exp}
  long g_val = 0;      // ||g|| = p^-g_val (g_val may be negative); VAL_INF for g = 0
  // In-memory algebra witness (q, g); not serialized beyond the norms.
  std::optional<std::pair<Tate, Tate>> qg;

  bool covers(const mpq_class& a, long p) const;
};

// Finite description of a subset of the window: base progression
// (n mod modulus in residues) corrected by finite added/removed sets.
// The p-adic pipeline always emits modulus = p^r; orbit certificates from
// the surface calculator may carry general moduli.
struct Certificate {
  long p = 0;       // 0 when no p-adic context
  long modulus = 1; // >= 1
  int r = -1;       // exponent when modulus == p^r, else -1
  std::vector<long> residues;
  std::vector<long> added;
  std::vector<long> removed;
  long win_lo = 0, win_hi = -1;
  std::vector<BallWitness> balls;
  int session_prec = 0;

  bool in_window(long n) const { return n >= win_lo && n <= win_hi; }
  bool base_member(long n) const;
  bool member(long n) const;
  std::vector<char> bitmap() const; // indexed by n - win_lo
  long window_size() const { return win_hi < win_lo ? 0 : win_hi - win_lo + 1; }
  bool empty_set() const;
};

// Choose the cheapest (modulus, residues, exceptions) description of the
// given membership bitmap among the candidate moduli: minimal exception
// count, then smallest modulus.  Residues are majority-based per class, so
// added stays disjoint from the progression and removed stays inside it.
Certificate certificate_from_bitmap(long p, long win_lo, long win_hi,
                                    const std::vector<char>& bits,
                                    const std::vector<long>& candidate_moduli,
                                    int session_prec);

std::vector<long> p_power_moduli(long p, int r_max);
std::vector<long> divisor_moduli(long m);

Certificate intersect_certificates(const Certificate& a, const Certificate& b);
Certificate union_certificates(const Certificate& a, const Certificate& b);
// Complement within the window (ball witnesses do not transfer).
Certificate complement_certificate(const Certificate& a);
// n -> -n.
Certificate negate_certificate(const Certificate& a);

Certificate full_certificate(long p, long win_lo, long win_hi, int prec);
Certificate empty_certificate(long p, long win_lo, long win_hi, int prec);

} // namespace ptor
