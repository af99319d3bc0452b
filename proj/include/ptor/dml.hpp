#pragma once

#include <string>
#include <vector>

#include "ptor/automorphism.hpp"
#include "ptor/certificate.hpp"
#include "ptor/homology.hpp"
#include "ptor/strassman.hpp"

namespace ptor {

struct DmlProblem {
  AutomorphismSpec spec;
  Presentation M, N; // over S
  int i = 1;         // homological degree
  long win_lo = -20, win_hi = 20;
  int r_max = 6;
};

void validate_problem(const DmlProblem& prob);

struct DmlReport {
  Certificate nonvanishing; // {n in window : Tor_i((sigma^n)* M, N) != 0}
  bool family_tor_zero = false;
  bool branch_certified = true;
  // Window points where the family-route backbone disagrees with the
  // pointwise route (the finitely many specialization exceptions).
  std::vector<long> backbone_exceptions;
  std::string branch_note;
};

// Family pipeline: build M(z) and N(z), compute family Tor, branch on its
// vanishing, and emit the progression certificate (pointwise-corrected on
// the window, with the correction set reported).
DmlReport tor_nonvanishing_set(const DmlProblem& prob, const Ctx& ctx);

// Independent oracle: exact iteration, never through sigma^z.
bool brute_force_tor_at_n(const DmlProblem& prob, long n, const Ctx& ctx);

// Route 2: specialize the family at n, then Tor over S.
bool family_route_tor_at_n(const DmlProblem& prob, const FamilyModule& famM,
                           const Presentation& famN, long n, const Ctx& ctx);

struct CrossValidation {
  struct Row {
    long n;
    bool cert, family, brute;
  };
  std::vector<Row> rows;
  std::vector<long> disagreements;
};

CrossValidation cross_validate(const DmlProblem& prob, const Ctx& ctx);

} // namespace ptor
