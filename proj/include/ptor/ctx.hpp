#pragma once

namespace ptor {

// Per-session computation settings.  `prec` is the working precision N: all
// data is interpreted mod p^N, and every certificate records the N it was
// produced under.  `guard` is the pivot guard: divisions by leading
// coefficients of valuation >= prec - guard abort instead of silently
// spending the remaining digits.
struct Ctx {
  int prec = 32;
  int guard = 8;
  bool parallel = true;

  long drop_cut() const { return prec; }
  long pivot_limit() const { return prec - guard; }
};

} // namespace ptor
